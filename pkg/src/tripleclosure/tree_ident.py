"""Identify/define diagnostics for a triple set against a rooted tree."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .closure import ComponentPair, lmax_all
from .core import (
    Cluster,
    LabelTable,
    RootedTree,
    TripleSet,
    displayed_triples,
    displays,
    hierarchy,
    tree_from_clusters,
)
from .oracle import MAX_SPAN_LEAVES, OracleCapError, span_hierarchies


def b_lower_bound(T: RootedTree) -> int:
    """Sum of ``(c(u) - 1) * (c(v) - 1)`` over edges joining two inner vertices."""
    total = 0
    for u in T.inner_nodes():
        for v in u.children:
            if not v.is_leaf:
                total += (len(u.children) - 1) * (len(v.children) - 1)
    return total


def _check_pair(R: TripleSet, T: RootedTree) -> None:
    if not R.leaf_set <= T.leaf_set:
        raise ValueError("leaves of R are not all leaves of T")
    bad = [t for t in R if not displays(T, t)]
    if bad:
        raise ValueError(f"T does not display {bad[0]}")


def identifies(R: TripleSet, T: RootedTree) -> bool:
    """``R`` identifies ``T`` iff the closure of ``R`` is exactly the triples displayed by ``T``."""
    from .closure import closure_fast

    _check_pair(R, T)
    return closure_fast(R) == displayed_triples(T)


def defines(R: TripleSet, T: RootedTree) -> bool:
    """``T`` is the only tree on its leaf set that displays ``R``."""
    if not R.leaf_set <= T.leaf_set:
        raise ValueError("leaves of R are not all leaves of T")
    if T.is_binary() and R.leaf_set == T.leaf_set:
        if not all(displays(T, t) for t in R):
            return False
        # a binary tree has no proper refinement
        return identifies(R, T)
    if len(T.leaf_set) > MAX_SPAN_LEAVES:
        raise OracleCapError("instance too large for span enumeration and T is not binary")
    hs = span_hierarchies(R, T.leaf_set)
    return len(hs) == 1 and hs[0] == T.hierarchy


def siblings(T: RootedTree) -> set[frozenset[Cluster]]:
    """Pairs ``{C(u), C(v)}`` of children of a common vertex with ``|C(u) | C(v)| > 2``."""
    out: set[frozenset[Cluster]] = set()
    for w in T.inner_nodes():
        kids = [ch.leaves() for ch in w.children]
        for cu, cv in combinations(kids, 2):
            if len(cu | cv) > 2:
                out.add(frozenset((cu, cv)))
    return out


def pair_sets(pairs: Iterable[ComponentPair]) -> set[frozenset[Cluster]]:
    return {frozenset((P.A, P.B)) for P in pairs}


def c_of_r(R: TripleSet) -> set[Cluster]:
    """Both sides of every maximal witness, plus the leaf set of ``R`` and its singletons."""
    out: set[Cluster] = {R.leaf_set} if R.leaf_set else set()
    out |= {frozenset((x,)) for x in R.leaf_set}
    for P in lmax_all(R).pairs:
        out.add(P.A)
        out.add(P.B)
    return out


def is_hierarchy(H: Iterable[Cluster], ground: Iterable | None = None) -> bool:
    H = {frozenset(C) for C in H}
    if not H:
        return False
    L = frozenset(ground) if ground is not None else frozenset().union(*H)
    if L not in H or any(frozenset((x,)) not in H for x in L):
        return False
    if any(not C or not C <= L for C in H):
        return False
    for A, B in combinations(H, 2):
        if A & B and not (A <= B or B <= A):
            return False
    return True


def tree_from_hierarchy(H: Iterable[Cluster], labels: LabelTable | None = None) -> RootedTree:
    H = {frozenset(C) for C in H}
    if not is_hierarchy(H):
        raise ValueError("not a hierarchy")
    return tree_from_clusters(H, labels)


def identify_report(R: TripleSet, T: RootedTree) -> dict:
    """Everything the ``identify`` CLI prints, as plain data."""
    from .build import is_consistent
    from .representative import greedy_min_rep

    disp = R.leaf_set <= T.leaf_set and all(displays(T, t) for t in R)
    report: dict = {"displays": disp, "b_lower_bound": b_lower_bound(T)}
    report["identifies"] = identifies(R, T) if disp else False
    try:
        report["defines"] = defines(R, T)
    except OracleCapError:
        report["defines"] = None
    report["min_rep_size"] = len(greedy_min_rep(R)) if is_consistent(R) else None
    if is_consistent(R):
        CR = c_of_r(R)
        report["c_of_r_is_hierarchy"] = is_hierarchy(CR)
        report["c_of_r_equals_tree_hierarchy"] = CR == set(hierarchy(T))
    return report
