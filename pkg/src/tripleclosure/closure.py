"""Closure of a consistent triple set.

Two routes are provided.  :func:`closure_baseline` tests every leaf trio with
three BUILD calls (a trio's resolution is in the closure iff it is the only
one that can be added consistently).  :func:`closure_fast` computes, for each
triple of ``R``, the largest two-component witness ``{A, B}`` by repeatedly
shrinking the vertex set of the Aho graph to the components holding ``a, b``
and ``c``, then emits every triple that crosses one of these witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterator

from .ahograph import Ahograph, component_of
from .build import InconsistentError, is_consistent
from .core import LeafId, Triple, TripleSet


class NotInClosureError(ValueError):
    """The triple is not implied by the triple set."""


@dataclass(frozen=True)
class ComponentPair:
    """Unordered pair ``{A, B}`` of disjoint, non-empty leaf sets.

    Stored with the side holding the smaller minimum leaf first, so equal pairs
    compare and hash equal regardless of construction order.
    """

    A: frozenset[LeafId]
    B: frozenset[LeafId]

    def __post_init__(self):
        A, B = frozenset(self.A), frozenset(self.B)
        if not A or not B:
            raise ValueError("component pair sides must be non-empty")
        if A & B:
            raise ValueError("component pair sides must be disjoint")
        if min(B) < min(A):
            A, B = B, A
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def union(self) -> frozenset[LeafId]:
        return self.A | self.B

    def sides(self) -> tuple[frozenset[LeafId], frozenset[LeafId]]:
        return self.A, self.B

    def sort_key(self) -> tuple:
        return (sorted(self.A), sorted(self.B))


@dataclass
class LmaxTable:
    by_triple: dict[Triple, ComponentPair] = field(default_factory=dict)

    @property
    def pairs(self) -> list[ComponentPair]:
        """Distinct pairs, canonical order."""
        return sorted(set(self.by_triple.values()), key=ComponentPair.sort_key)

    def __len__(self) -> int:
        return len(self.by_triple)


def lmax(R: TripleSet, t: Triple) -> ComponentPair:
    """Largest ``{A, B}`` such that the Aho graph of ``R`` on ``A | B`` has
    exactly the components ``A`` and ``B``, one holding ``t.a, t.b`` and the
    other ``t.c``.

    ``R`` must be consistent.  Works for any triple over the leaves of ``R``; raises
    :class:`NotInClosureError` when ``t`` is not in the closure of ``R``.
    """
    if not t.leaves <= R.leaf_set:
        raise NotInClosureError(f"{t} has leaves outside the triple set")
    current = R.leaf_set
    triples = list(R)
    while True:
        G = Ahograph(triples, current)
        comps = G.components()
        ca = component_of(comps, t.a)
        cb = component_of(comps, t.b)
        cc = component_of(comps, t.c)
        if ca != cb:
            # a and b stay apart in every induced subgraph
            raise NotInClosureError(f"{t} is not in the closure")
        if ca != cc and len(comps) == 2:
            return ComponentPair(ca, cc)
        shrunk = ca | cc
        if shrunk == current:
            raise InconsistentError(current)
        current = shrunk
        # triples leaving the vertex set never re-enter it
        triples = [s for s in triples if s.a in current and s.b in current and s.c in current]


def lmax_all(R: TripleSet) -> LmaxTable:
    if not is_consistent(R):
        raise InconsistentError()
    return LmaxTable({t: lmax(R, t) for t in R})


def triples_between(P: ComponentPair) -> TripleSet:
    """All triples ``xy|z`` with ``x, y`` on one side of ``P`` and ``z`` on the other."""
    return TripleSet(sorted(_cross(P)))


def _cross(P: ComponentPair) -> Iterator[Triple]:
    for X, Y in ((P.A, P.B), (P.B, P.A)):
        for x, y in combinations(sorted(X), 2):
            for z in Y:
                yield Triple(x, y, z)


def cross_count(P: ComponentPair) -> int:
    return comb(len(P.A), 2) * len(P.B) + comb(len(P.B), 2) * len(P.A)


def closure_fast(R: TripleSet) -> TripleSet:
    table = lmax_all(R)
    out: set[Triple] = set()
    for P in table.pairs:
        out.update(_cross(P))
    return TripleSet(sorted(out), labels=R.labels)


def closure_baseline(R: TripleSet) -> TripleSet:
    """Trio-by-trio closure with three BUILD runs per leaf trio."""
    if not is_consistent(R):
        raise InconsistentError()
    out: list[Triple] = []
    for a, b, c in combinations(sorted(R.leaf_set), 3):
        found = []
        for t in (Triple(a, b, c), Triple(a, c, b), Triple(b, c, a)):
            if is_consistent(R.with_(t)):
                found.append(t)
        if len(found) == 1:
            out.append(found[0])
    return TripleSet(sorted(out), labels=R.labels)


def in_closure(R: TripleSet, t: Triple) -> bool:
    try:
        lmax(R, t)
    except NotInClosureError:
        return False
    return True


def closure(R: TripleSet, algo: str = "fast") -> TripleSet:
    if algo == "fast":
        return closure_fast(R)
    if algo == "baseline":
        return closure_baseline(R)
    if algo == "oracle":
        from .oracle import closure_oracle

        return closure_oracle(R)
    raise ValueError(f"unknown closure algorithm {algo!r}")
