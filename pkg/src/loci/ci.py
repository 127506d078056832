"""Conditional-independence statement sets of bounded order.

A :class:`CISet` lists the independencies ``(a _||_ b | Z)`` with
``|Z| <= k``.  Anything not listed is taken as a *dependence*: a set handed to
the learning routines must be complete up to order ``k``, otherwise every
omitted statement silently reads as "dependent".
"""

from __future__ import annotations

import hashlib
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import NamedTuple

import numpy as np

from .dsep import ancestral_mask, d_connected_mask
from .graph import Graph, NotADAGError, is_dag, mask_of


class CIError(ValueError):
    """Malformed statements, order violations and CI file parse errors."""


class CIStatement(NamedTuple):
    """One statement ``(a _||_ b | z)`` in canonical form (``a < b``, ``z`` sorted)."""

    a: int
    b: int
    z: tuple[int, ...] = ()

    @classmethod
    def make(cls, a: int, b: int, z: Iterable[int] = ()) -> CIStatement:
        z = list(z)
        zs = tuple(sorted(set(z)))
        if a == b:
            raise CIError(f"statement needs two distinct variables, got {a} twice")
        if a in zs or b in zs:
            raise CIError("a variable cannot be conditioned on itself")
        if len(zs) != len(z):
            raise CIError("duplicate variable in conditioning set")
        return cls(min(a, b), max(a, b), zs)

    @property
    def order(self) -> int:
        return len(self.z)


def conditioning_sets(n: int, k: int, exclude: Iterable[int] = ()) -> Iterator[tuple[int, ...]]:
    """All sorted subsets of ``range(n)`` minus ``exclude`` with size at most ``k``."""
    pool = [v for v in range(n) if v not in set(exclude)]
    for size in range(min(k, len(pool)) + 1):
        yield from combinations(pool, size)


@dataclass(frozen=True)
class CISet:
    n: int
    k: int
    statements: frozenset[CIStatement] = field(default_factory=frozenset)
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "statements", frozenset(self.statements))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
            if len(self.names) != self.n:
                raise CIError(f"{len(self.names)} names given for {self.n} variables")
        if self.k < 0:
            raise CIError("order bound k must be non-negative")
        n, k = self.n, self.k
        for s in self.statements:
            if type(s) is not CIStatement:
                raise CIError(f"not a CIStatement: {s!r}")
            a, b, z = s
            if len(z) > k:
                raise CIError(f"statement {s} has order {len(z)} > k = {k}")
            if not 0 <= a < b < n or (z and not (0 <= z[0] and z[-1] < n)):
                raise CIError(f"statement {s} refers to a variable outside 0..{n - 1}")
            if a in z or b in z or (len(z) > 1 and any(z[i] >= z[i + 1] for i in range(len(z) - 1))):
                raise CIError(f"statement {s} is not in canonical form")

    @classmethod
    def _trusted(cls, n: int, k: int, statements: frozenset[CIStatement], names=None) -> CISet:
        # skips per-statement validation; for sets built by this module
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "k", k)
        object.__setattr__(obj, "statements", statements)
        object.__setattr__(obj, "names", None if names is None else tuple(names))
        return obj

    @classmethod
    def from_triples(cls, n: int, k: int, triples: Iterable[tuple], names=None) -> CISet:
        stmts = []
        for t in triples:
            a, b, *rest = t
            stmts.append(CIStatement.make(a, b, rest[0] if rest else ()))
        return cls(n, k, frozenset(stmts), names)

    def __len__(self) -> int:
        return len(self.statements)

    def __iter__(self) -> Iterator[CIStatement]:
        return iter(sorted(self.statements))

    def contains(self, a: int, b: int, z: Iterable[int] = ()) -> bool:
        """True iff ``(a _||_ b | z)`` is listed; false means dependence."""
        z = tuple(z)
        if len(set(z)) > self.k:
            raise CIError(f"conditioning set of size {len(set(z))} exceeds order bound {self.k}")
        for v in (a, b, *z):
            if not 0 <= v < self.n:
                raise CIError(f"variable {v} out of range 0..{self.n - 1}")
        return CIStatement.make(a, b, z) in self.statements

    def independent(self, a: int, b: int, z: tuple[int, ...]) -> bool:
        """Unchecked membership test; ``z`` must already be sorted."""
        if a > b:
            a, b = b, a
        return CIStatement(a, b, z) in self.statements

    def name(self, v: int) -> str:
        return self.names[v] if self.names is not None else str(v)

    def restrict(self, k: int) -> CISet:
        """The statements of order at most ``k`` as a set with order bound ``k``."""
        return CISet(self.n, k, frozenset(s for s in self.statements if s.order <= k), self.names)

    @cached_property
    def digest(self) -> str:
        """SHA-256 over ``n``, ``k`` and the statements; names are ignored."""
        h = hashlib.sha256(f"{self.n},{self.k}".encode())
        mats = self.independence_matrices
        for z in sorted(mats):
            h.update(repr(z).encode())
            h.update(np.packbits(np.triu(mats[z])).tobytes())
        return h.hexdigest()

    def with_names(self, names: Sequence[str] | None) -> CISet:
        if names is not None and len(names) != self.n:
            raise CIError(f"{len(names)} names given for {self.n} variables")
        return CISet._trusted(self.n, self.k, self.statements, names)

    @cached_property
    def by_conditioning_set(self) -> dict[tuple[int, ...], frozenset[CIStatement]]:
        groups: dict[tuple[int, ...], set[CIStatement]] = {}
        for st in self.statements:
            groups.setdefault(st.z, set()).add(st)
        return {z: frozenset(g) for z, g in groups.items()}

    @cached_property
    def independence_matrices(self) -> dict[tuple[int, ...], np.ndarray]:
        """Per conditioning set ``Z``, a symmetric bool matrix of listed independencies.

        Only conditioning sets that occur in some statement are keys.
        """
        out: dict[tuple[int, ...], np.ndarray] = {}
        for s in self.statements:
            m = out.get(s.z)
            if m is None:
                m = out[s.z] = np.zeros((self.n, self.n), dtype=bool)
            m[s.a, s.b] = m[s.b, s.a] = True
        return out


def generate_from_dag(d: Graph, k: int) -> CISet:
    """All d-separation statements of order at most ``k`` that hold in ``d``."""
    if not is_dag(d):
        raise NotADAGError("oracle CI sets can only be read off a DAG")
    n = d.n
    if not 0 <= k <= max(n - 2, 0):
        raise CIError(f"order k={k} out of range 0..{max(n - 2, 0)}")
    stmts = []
    for z in conditioning_sets(n, k):
        stmts.extend(separations_given(d, z))
    return CISet._trusted(n, k, frozenset(stmts), d.names)


def separations_given(d: Graph, z: tuple[int, ...]) -> list[CIStatement]:
    """Statements ``(a _||_ b | z)`` d-separated in the DAG ``d`` for one sorted ``z``."""
    n = d.n
    full = (1 << n) - 1
    zmask = mask_of(z)
    anc = ancestral_mask(d, zmask)
    out = []
    for a in range(n):
        if zmask >> a & 1:
            continue
        above = full & ~((1 << (a + 1)) - 1)
        free = above & ~(d_connected_mask(d, a, zmask, anc) | zmask)
        while free:
            low = free & -free
            out.append(CIStatement(a, low.bit_length() - 1, z))
            free ^= low
    return out


# text format


def parse_ci(text: str) -> CISet:
    """Parse the line-based CI format::

        vars a b c d
        k 1
        ci c d | a

    ``#`` starts a comment; repeated statements are harmless.
    """
    names: list[str] | None = None
    index: dict[str, int] = {}
    k: int | None = None
    triples = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]
        if names is None:
            if head != "vars":
                raise CIError(f"line {lineno}: expected 'vars' header")
            names = tokens[1:]
            if len(set(names)) != len(names):
                raise CIError(f"line {lineno}: duplicate variable name")
            index = {name: i for i, name in enumerate(names)}
            continue
        if k is None:
            if head != "k" or len(tokens) != 2:
                raise CIError(f"line {lineno}: expected 'k <integer>'")
            try:
                k = int(tokens[1])
            except ValueError:
                raise CIError(f"line {lineno}: bad order {tokens[1]!r}") from None
            if k < 0:
                raise CIError(f"line {lineno}: order must be non-negative")
            continue
        if head != "ci" or len(tokens) < 3:
            raise CIError(f"line {lineno}: expected 'ci <a> <b> [| <z> ...]'")
        rest = tokens[3:]
        if rest and rest[0] != "|":
            raise CIError(f"line {lineno}: expected '|' before the conditioning set")
        try:
            a, b = index[tokens[1]], index[tokens[2]]
            z = [index[t] for t in rest[1:]]
        except KeyError as exc:
            raise CIError(f"line {lineno}: unknown variable {exc.args[0]!r}") from None
        if len(set(z)) != len(z):
            raise CIError(f"line {lineno}: repeated variable in conditioning set")
        if a == b or a in z or b in z:
            raise CIError(f"line {lineno}: variable appears twice in the statement")
        if len(z) > k:
            raise CIError(f"line {lineno}: statement of order {len(z)} exceeds k = {k}")
        triples.append((a, b, z))
    if names is None or k is None:
        raise CIError("missing 'vars' or 'k' header")
    return CISet.from_triples(len(names), k, triples, names)


def format_ci(s: CISet) -> str:
    names = s.names if s.names is not None else [str(v) for v in range(s.n)]
    lines = ["vars " + " ".join(names), f"k {s.k}"]
    for st in sorted(s.statements, key=lambda t: (t.order, t.a, t.b, t.z)):
        line = f"ci {names[st.a]} {names[st.b]}"
        if st.z:
            line += " | " + " ".join(names[v] for v in st.z)
        lines.append(line)
    return "\n".join(lines) + "\n"
