"""BUILD: consistency test and construction of the tree A_R."""

from __future__ import annotations

from typing import Iterable

from .ahograph import Ahograph
from .core import LeafId, Node, RootedTree, Triple, TripleSet


class InconsistentError(ValueError):
    """Raised when no rooted tree displays the given triples."""

    def __init__(self, component: frozenset[LeafId] | None = None):
        self.component = component
        msg = "triple set is inconsistent"
        if component is not None:
            msg += f" (connected Aho graph on {sorted(component)})"
        super().__init__(msg)


def _build(triples: list[Triple], leaves: frozenset[LeafId]) -> Node:
    if len(leaves) == 1:
        return Node(next(iter(leaves)))
    comps = Ahograph(triples, leaves).components()
    if len(comps) == 1:
        raise InconsistentError(leaves)
    children = []
    for C in comps:
        inside = [t for t in triples if t.a in C and t.b in C and t.c in C]
        children.append(_build(inside, C))
    return Node(children=tuple(children))


def build_tree(R: TripleSet, leaves: Iterable[LeafId] | None = None) -> RootedTree:
    """Run BUILD on ``R`` over ``leaves`` (default: the leaves of ``R``).

    Raises :class:`InconsistentError` if ``R`` is inconsistent.
    """
    L = R.leaf_set if leaves is None else frozenset(leaves)
    if not R.leaf_set <= L:
        raise ValueError("leaf set must contain every leaf of R")
    if not L:
        return RootedTree(None, R.labels)
    triples = [t for t in R]
    return RootedTree(_build(triples, L), R.labels)


def is_consistent(R: Iterable[Triple]) -> bool:
    if not isinstance(R, TripleSet):
        R = TripleSet(R)
    try:
        build_tree(R)
    except InconsistentError:
        return False
    return True
