"""The Aho graph of a triple set over a vertex set, and its connected components."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable

from .core import LabelTable, LeafId, Triple, TripleSet


class UnionFind:
    def __init__(self, items: Iterable[LeafId]):
        self.parent = {x: x for x in items}

    def find(self, x: LeafId) -> LeafId:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: LeafId, y: LeafId) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # keep the smaller id as representative
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


class Ahograph:
    """Graph on ``vertices`` with an edge ``(a, b)`` for each ``ab|c`` in ``R``
    whose three leaves lie in ``vertices``.

    ``support[(a, b)]`` lists the supporting triples of each edge, ``a < b``.
    """

    def __init__(self, R: Iterable[Triple], vertices: Iterable[LeafId]):
        self.vertices = frozenset(vertices)
        V = self.vertices
        support: dict[tuple[LeafId, LeafId], list[Triple]] = defaultdict(list)
        for t in R:
            if t.a in V and t.b in V and t.c in V:
                support[(t.a, t.b)].append(t)
        self.support = dict(support)

    @property
    def edges(self) -> list[tuple[LeafId, LeafId]]:
        return sorted(self.support)

    def components(self) -> list[frozenset[LeafId]]:
        uf = UnionFind(self.vertices)
        for a, b in self.support:
            uf.union(a, b)
        groups: dict[LeafId, set[LeafId]] = defaultdict(set)
        for v in self.vertices:
            groups[uf.find(v)].add(v)
        return sorted((frozenset(g) for g in groups.values()), key=min)

    def to_dot(self, labels: LabelTable | None = None) -> str:
        name = labels.name if labels is not None else str
        lines = ["graph ahograph {"]
        for v in sorted(self.vertices):
            lines.append(f'  "{name(v)}";')
        for (a, b), ts in sorted(self.support.items()):
            zs = ",".join(name(t.c) for t in ts)
            lines.append(f'  "{name(a)}" -- "{name(b)}" [label="{zs}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_ahograph(R: Iterable[Triple], L: Iterable[LeafId]) -> Ahograph:
    return Ahograph(R, L)


def components(G: Ahograph) -> list[frozenset[LeafId]]:
    return G.components()


def component_of(comps: list[frozenset[LeafId]], x: LeafId) -> frozenset[LeafId]:
    for C in comps:
        if x in C:
            return C
    raise KeyError(x)


def is_bridge_triple(R: TripleSet, L: Iterable[LeafId], t: Triple) -> bool:
    """True iff ``a`` and ``b`` end up in different components of ``[R - {t}, L]``."""
    L = frozenset(L)
    if t not in R:
        raise ValueError(f"{t} is not in the triple set")
    if not t.leaves <= L:
        raise ValueError(f"leaves of {t} are not inside the vertex set")
    G = Ahograph((s for s in R if s != t), L)
    comps = G.components()
    return component_of(comps, t.a) != component_of(comps, t.b)
