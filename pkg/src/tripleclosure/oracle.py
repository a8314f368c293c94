"""Brute-force ground truth by exhaustive tree enumeration.

Nothing here uses the Aho graph or BUILD: trees are enumerated as cluster
hierarchies, first all binary ones by leaf insertion and then every tree
obtained by contracting a subset of inner edges.  Caps are hard errors.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

from .core import (
    Cluster,
    LabelTable,
    LeafId,
    RootedTree,
    Triple,
    TripleSet,
    tree_from_clusters,
    triples_of_hierarchy,
)

MAX_TREE_LEAVES = 8
MAX_SPAN_LEAVES = 9
MAX_REP_TRIPLES = 12
MAX_REP_LEAVES = 6

Hierarchy = frozenset  # frozenset[Cluster]


class OracleCapError(ValueError):
    pass


def _insert(H: frozenset[Cluster], x: LeafId) -> Iterator[frozenset[Cluster]]:
    """Every binary hierarchy obtained by hanging leaf ``x`` above one vertex."""
    single = frozenset((x,))
    for K in H:
        new = {C | single if K <= C else C for C in H}
        new.add(K)
        new.add(K | single)
        new.add(single)
        yield frozenset(new)


def _binary(leaves: list[LeafId], ok=None) -> Iterator[frozenset[Cluster]]:
    """Binary hierarchies on ``leaves``; ``ok(H, placed, x)`` prunes partial trees."""
    if not leaves:
        return
    first = frozenset((leaves[0],))
    stack: list[tuple[frozenset[Cluster], int]] = [(frozenset((first,)), 1)]
    while stack:
        H, k = stack.pop()
        if k == len(leaves):
            yield H
            continue
        x = leaves[k]
        placed = frozenset(leaves[: k + 1])
        for H2 in _insert(H, x):
            if ok is None or ok(H2, placed, x):
                stack.append((H2, k + 1))


def _nontrivial(H: frozenset[Cluster], n: int) -> list[Cluster]:
    return [C for C in H if 1 < len(C) < n]


def _contractions(H: frozenset[Cluster], n: int, keep=None) -> Iterator[frozenset[Cluster]]:
    inner = _nontrivial(H, n)
    for r in range(len(inner) + 1):
        for drop in combinations(inner, r):
            H2 = H - frozenset(drop)
            if keep is None or keep(H2):
                yield H2


def enumerate_hierarchies(leaves: Iterable[LeafId]) -> Iterator[frozenset[Cluster]]:
    L = sorted(set(leaves))
    if len(L) > MAX_TREE_LEAVES:
        raise OracleCapError(f"tree enumeration capped at {MAX_TREE_LEAVES} leaves")
    seen: set[frozenset[Cluster]] = set()
    for H in _binary(L):
        for H2 in _contractions(H, len(L)):
            if H2 not in seen:
                seen.add(H2)
                yield H2


def enumerate_rooted_trees(leaves: Iterable[LeafId], labels: LabelTable | None = None) -> Iterator[RootedTree]:
    for H in enumerate_hierarchies(leaves):
        yield tree_from_clusters(H, labels)


def _displays_all(H: Iterable[Cluster], triples: Iterable[Triple]) -> bool:
    H = list(H)
    for t in triples:
        if not any(t.a in C and t.b in C and t.c not in C for C in H):
            return False
    return True


def span_hierarchies(R: Iterable[Triple], leaves: Iterable[LeafId]) -> list[frozenset[Cluster]]:
    triples = list(R)
    L = sorted(set(leaves))
    if len(L) > MAX_SPAN_LEAVES:
        raise OracleCapError(f"span enumeration capped at {MAX_SPAN_LEAVES} leaves")
    if not L:
        return []
    n = len(L)
    # triples become checkable once their last leaf is placed
    rank = {x: i for i, x in enumerate(L)}
    due: dict[LeafId, list[Triple]] = {x: [] for x in L}
    for t in triples:
        due[max(t, key=rank.__getitem__)].append(t)

    def ok(H, placed, x):
        # the full leaf set is a cluster of H, so restrict to proper clusters
        return _displays_all((C for C in H if len(C) < len(placed)), due[x])

    out: dict[frozenset[Cluster], None] = {}
    for H in _binary(L, ok):
        for H2 in _contractions(H, n, keep=lambda K: _displays_all(_nontrivial(K, n), triples)):
            out.setdefault(H2, None)
    return list(out)


def span(R: TripleSet, leaves: Iterable[LeafId] | None = None) -> list[RootedTree]:
    """All rooted trees on ``leaves`` (default: the leaves of ``R``) displaying every triple of ``R``."""
    L = R.leaf_set if leaves is None else frozenset(leaves)
    return [tree_from_clusters(H, R.labels) for H in span_hierarchies(R, L)]


def closure_oracle(R: TripleSet) -> TripleSet:
    """Intersection of the displayed triples over all trees displaying ``R``."""
    L = R.leaf_set
    hs = span_hierarchies(R, L)
    if not hs:
        if not L:
            return TripleSet(labels=R.labels)
        raise ValueError("triple set is inconsistent (empty span)")
    common = triples_of_hierarchy(hs[0], L)
    for H in hs[1:]:
        common &= triples_of_hierarchy(H, L)
        if not common:
            break
    return TripleSet(sorted(common), labels=R.labels)


def enumerate_minimal_reps(R: TripleSet) -> list[TripleSet]:
    """All inclusion-minimal subsets of ``R`` with the same closure, by brute force."""
    if len(R) > MAX_REP_TRIPLES or len(R.leaf_set) > MAX_REP_LEAVES:
        raise OracleCapError(
            f"minimal representative enumeration capped at {MAX_REP_TRIPLES} triples "
            f"and {MAX_REP_LEAVES} leaves"
        )
    target = closure_oracle(R).as_set()
    items = list(R)
    n = len(items)
    cache: dict[int, bool] = {}

    def rep(mask: int) -> bool:
        if mask not in cache:
            S = TripleSet(items[i] for i in range(n) if mask >> i & 1)
            cache[mask] = closure_oracle(S).as_set() == target
        return cache[mask]

    # representativity is upward closed; a subset whose one-smaller subsets all
    # fail is minimal
    out = []
    for mask in range(1 << n):
        if not _closure_could_match(mask, items, target):
            continue
        if rep(mask) and all(not rep(mask & ~(1 << i)) for i in range(n) if mask >> i & 1):
            out.append(TripleSet((items[i] for i in range(n) if mask >> i & 1), labels=R.labels))
    out.sort(key=lambda S: (len(S), sorted(S)))
    return out


def _closure_could_match(mask: int, items: list[Triple], target: frozenset[Triple]) -> bool:
    # cheap necessary condition: the subset must cover every leaf of the target
    leaves: set[LeafId] = set()
    for i, t in enumerate(items):
        if mask >> i & 1:
            leaves.update(t)
    need: set[LeafId] = set()
    for t in target:
        need.update(t)
    return need <= leaves
