"""Minimum representative triple sets.

The subsets of a consistent ``R`` that are contained in some inclusion-minimal
representative set form the independent sets of a matroid, so a single greedy
pass yields a set that is both inclusion-minimal and of minimum size, and the
weighted variant yields a maximum-weight basis.
"""

from __future__ import annotations

import random
from typing import Sequence

from .ahograph import Ahograph, build_ahograph, component_of
from .build import InconsistentError, is_consistent
from .closure import closure_fast, lmax
from .core import Triple, TripleSet


def _redundant(current: TripleSet, t: Triple) -> bool:
    # t is implied by the rest iff neither other resolution fits next to it
    rest = current.without(t)
    return all(not is_consistent(rest.with_(alt)) for alt in t.alternatives())


def _order(R: TripleSet, order: Sequence[Triple] | int | None) -> list[Triple]:
    if order is None:
        return list(R)
    if isinstance(order, int):
        seq = list(R)
        random.Random(order).shuffle(seq)
        return seq
    seq = list(order)
    if set(seq) != R.as_set() or len(seq) != len(R):
        raise ValueError("order must be a permutation of R")
    return seq


def greedy_min_rep(R: TripleSet, order: Sequence[Triple] | int | None = None) -> TripleSet:
    """Drop, one at a time, every triple implied by the remaining ones.

    ``order`` is an explicit permutation of ``R`` or an integer seed for a
    reproducible shuffle; ``None`` keeps the insertion order.  The result keeps
    the insertion order of ``R``.
    """
    if not is_consistent(R):
        raise InconsistentError()
    removed: set[Triple] = set()
    current = R
    for t in _order(R, order):
        if _redundant(current, t):
            removed.add(t)
            current = current.without(t)
    return R.without(*removed)


def greedy_max_weight_basis(R: TripleSet, weights: dict[Triple, float] | None = None) -> TripleSet:
    """Maximum-weight minimal representative set.

    Triples are ranked by decreasing weight (ties: canonical triple order) and
    the lowest-ranked redundant ones are discarded first.
    """
    weights = R.weights if weights is None else weights
    if weights is None:
        raise ValueError("weights are required")
    for t in R:
        if t not in weights:
            raise ValueError(f"missing weight for {t}")
        w = weights[t]
        if w != w or w < 0 or w == float("inf"):
            raise ValueError(f"invalid weight {w} for {t}")
    ranked = sorted(R, key=lambda t: (-weights[t], t))
    return greedy_min_rep(R, list(reversed(ranked)))


def is_representative(R: TripleSet, S: TripleSet) -> bool:
    if not S.issubset(R):
        raise ValueError("S is not a subset of R")
    return closure_fast(S) == closure_fast(R)


def is_minimal_representative(R: TripleSet, S: TripleSet) -> bool:
    """Every triple of ``S`` must be a bridge of the Aho graph of ``S`` on
    ``A | B`` for its own maximal witness ``{A, B}``."""
    if not is_representative(R, S):
        raise ValueError("S is not representative for R")
    for t in S:
        P = lmax(S, t)
        G = Ahograph((s for s in S if s != t), P.union)
        comps = G.components()
        if component_of(comps, t.a) == component_of(comps, t.b):
            return False
    return True


def mandatory_triples(R: TripleSet) -> TripleSet:
    """Triples certified to lie in every minimal representative set.

    Certification requires the Aho graph of ``R`` on all its leaves to be a
    forest and, for ``ab|c``, no other ``ab|d`` with ``d`` in the components
    of ``a, b`` or ``c``.
    Empty when the graph has a cycle.
    """
    if not is_consistent(R):
        raise InconsistentError()
    G = build_ahograph(R, R.leaf_set)
    comps = G.components()
    # forest iff |E| = |V| - #components
    if len(G.support) != len(G.vertices) - len(comps):
        return R.without(*R)
    keep = []
    for t in R:
        around = component_of(comps, t.a) | component_of(comps, t.c)
        others = [s.c for s in G.support[(t.a, t.b)] if s != t]
        if not any(d in around for d in others):
            keep.append(t)
    return TripleSet(keep, labels=R.labels)
