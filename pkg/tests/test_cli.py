import subprocess
import sys

import pytest

from loci.ci import parse_ci
from loci.cli import main
from loci.faithfulness import all_consistent_extensions
from loci.graph import Graph, parse_graph

from .test_meek import single_ci_dags

SIX_DAG_TEXT = "vars u a b c d v\nu -> a\nc -> a\nd -> a\nc -> b\nd -> b\nv -> b\n"
SINGLE_CI = "vars a b c d\nk 1\nci c d | a\n"
FOUR_CYCLE_CI = "vars a b c d\nk 0\nci a c\nci b d\n"
STAGE3_TEXT = "vars a b c d\na -> b\nc -> b\nd -> b\na -- c\na -- d\n"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


def test_oracle(write, capsys):
    assert main(["oracle", write("d.txt", SIX_DAG_TEXT), "--k", "1"]) == 0
    out = capsys.readouterr().out
    lines = set(out.splitlines())
    assert {"ci u b", "ci c d", "ci u c | v"} <= lines
    s = parse_ci(out)
    assert s.k == 1 and s.names == ("u", "a", "b", "c", "d", "v")


def test_oracle_complete_dag(write, capsys):
    assert main(["oracle", write("d.txt", "vars a b c\na -> b\nb -> c\na -> c\n"), "--k", "0"]) == 0
    assert not [l for l in capsys.readouterr().out.splitlines() if l.startswith("ci")]


def test_oracle_errors(write):
    assert main(["oracle", write("bad.txt", "vars a b\na ~> b\n")]) == 2
    assert main(["oracle", write("cyc.txt", "vars a b c\na -> b\nb -> c\nc -> a\n")]) == 3
    assert main(["oracle", write("und.txt", "vars a b\na -- b\n")]) == 3
    assert main(["oracle", write("ok.txt", "vars a b c\n"), "--k", "2"]) == 2
    assert main(["oracle", "/nonexistent/file"]) == 2


def test_learn_single(write, tmp_path):
    out = tmp_path / "g.txt"
    assert main(["learn", write("i.txt", SINGLE_CI), "--out", str(out)]) == 0
    assert parse_graph(out.read_text()) == parse_graph(STAGE3_TEXT)
    assert set(out.read_text().splitlines()) >= {"a -> b", "c -> b", "d -> b", "a -- c", "a -- d"}


def test_learn_decide(write, capsys):
    assert main(["learn", write("i.txt", SINGLE_CI), "--decide"]) == 0
    assert "representable: true" in capsys.readouterr().err
    assert main(["learn", write("c.txt", FOUR_CYCLE_CI), "--decide"]) == 1
    assert "representable: false" in capsys.readouterr().err


def test_learn_decide_with_out_file(write, tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert main(["learn", write("c.txt", FOUR_CYCLE_CI), "--decide", "--out", str(out)]) == 1
    assert capsys.readouterr().out.strip() == "representable: false"


def test_learn_empty_set(write, capsys):
    assert main(["learn", write("e.txt", "vars x y z\nk 1\n")]) == 0
    assert parse_graph(capsys.readouterr().out) == Graph.complete_undirected(3)


def test_learn_names_and_errors(write, capsys):
    assert main(["learn", write("i.txt", SINGLE_CI), "--names", "p,q,r,s"]) == 0
    assert "p -> q" in capsys.readouterr().out
    assert main(["learn", write("i2.txt", SINGLE_CI), "--names", "p,q"]) == 2
    assert main(["learn", write("bad.txt", "vars a b c\nk 0\nci a b | c\n")]) == 2


def test_extend(write, capsys):
    assert main(["extend", write("g.txt", STAGE3_TEXT)]) == 0
    assert parse_graph(capsys.readouterr().out) in single_ci_dags()
    assert main(["extend", write("d.txt", SIX_DAG_TEXT)]) == 0
    assert parse_graph(capsys.readouterr().out) == parse_graph(SIX_DAG_TEXT)


def test_extend_inextensible(write, capsys):
    text = "vars a b c d\na -> b\nb -- c\nc -- d\nd -- a\n"
    assert all_consistent_extensions(parse_graph(text)) == []
    assert main(["extend", write("g.txt", text)]) == 1
    assert "no consistent extension" in capsys.readouterr().err


def test_experiment(tmp_path, capsys):
    out = tmp_path / "r.csv"
    assert main(["experiment", "--n", "12", "--d", "2", "--trials", "1", "--seed", "7", "--out", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "trial,n,d,k,seed,edges_01,edges_G,edges_D,vs_G,vs_D,vs_both"
    assert len(rows) == 3 and rows[2].startswith("mean,")
    assert "v-structures per node" in capsys.readouterr().err
    assert main(["experiment", "--n", "12", "--d", "-1"]) == 2
    assert main(["experiment", "--n", "12"]) == 2


def test_experiment_deterministic(capsys):
    args = ["experiment", "--n", "15", "--d", "3", "--trials", "3", "--seed", "5"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    assert capsys.readouterr().out == first


def test_compare_k0(write, capsys):
    assert main(["compare-k0", write("c.txt", FOUR_CYCLE_CI)]) == 0
    assert "equivalent: true" in capsys.readouterr().out
    assert main(["compare-k0", write("i.txt", SINGLE_CI)]) == 3


def test_module_entry_point(write):
    res = subprocess.run([sys.executable, "-m", "loci", "learn", write("i.txt", SINGLE_CI)],
                         capture_output=True, text=True, check=True)
    assert "a -> b" in res.stdout
    res = subprocess.run([sys.executable, "-m", "loci"], capture_output=True, text=True)
    assert res.returncode == 2


def test_oracle_then_learn_matches_brute_force(tmp_path, capsys):
    import random

    from loci.faithfulness import all_dags, brute_force_representation
    from loci.graph import format_graph

    rng = random.Random(31)
    for dag in rng.sample(all_dags(4), 25):
        k = rng.randint(0, 2)
        dag_file = tmp_path / "d.txt"
        ci_file = tmp_path / "i.txt"
        dag_file.write_text(format_graph(dag.with_names(list("abcd"))))
        assert main(["oracle", str(dag_file), "--k", str(k), "--out", str(ci_file)]) == 0
        assert main(["learn", str(ci_file)]) == 0
        learned = parse_graph(capsys.readouterr().out)
        assert learned == brute_force_representation(parse_ci(ci_file.read_text()))
