"""Unrooted quartets at desk scale.

Unrooted trees on ``L`` are enumerated through rooted trees on ``L - {x0}``
(``x0`` the smallest leaf): each rooted cluster ``C`` becomes the split
``C | L - C``.  Consistency and closure are brute force only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .core import LabelTable, LeafId, TripleFormatError
from .oracle import enumerate_hierarchies

MAX_QUARTET_LEAVES = 9

Split = frozenset  # frozenset of two frozensets


class Quartet(NamedTuple):
    """``ab|cd`` with ``a < b``, ``c < d`` and ``a < c``."""

    a: LeafId
    b: LeafId
    c: LeafId
    d: LeafId

    @classmethod
    def of(cls, a: LeafId, b: LeafId, c: LeafId, d: LeafId) -> "Quartet":
        if len({a, b, c, d}) != 4:
            raise ValueError("quartet leaves must be distinct")
        p, q = tuple(sorted((a, b))), tuple(sorted((c, d)))
        if q < p:
            p, q = q, p
        return cls(*p, *q)

    @property
    def leaves(self) -> frozenset[LeafId]:
        return frozenset(self)

    def format(self, labels: LabelTable | None = None) -> str:
        name = labels.name if labels is not None else str
        return f"{name(self.a)}{name(self.b)}|{name(self.c)}{name(self.d)}"


@dataclass(frozen=True)
class UnrootedTree:
    """Identified by its leaf set and set of non-trivial splits."""

    leaves: frozenset[LeafId]
    splits: frozenset[Split] = field(default_factory=frozenset)

    def is_binary(self) -> bool:
        n = len(self.leaves)
        return n <= 3 or len(self.splits) == n - 3

    def quartets(self) -> set[Quartet]:
        out: set[Quartet] = set()
        for sp in self.splits:
            A, B = tuple(sp)
            for a, b in combinations(sorted(A), 2):
                for c, d in combinations(sorted(B), 2):
                    out.add(Quartet.of(a, b, c, d))
        return out


def _split(side: frozenset[LeafId], L: frozenset[LeafId]) -> Split:
    return frozenset((side, L - side))


def displays_quartet(T: UnrootedTree, q: Quartet) -> bool:
    if not q.leaves <= T.leaves:
        raise ValueError(f"leaves of {q} are not in the tree")
    ab, cd = {q.a, q.b}, {q.c, q.d}
    for sp in T.splits:
        A, B = tuple(sp)
        if (ab <= A and cd <= B) or (ab <= B and cd <= A):
            return True
    return False


def enumerate_unrooted_trees(leaves: Iterable[LeafId]) -> Iterator[UnrootedTree]:
    L = frozenset(leaves)
    if len(L) > MAX_QUARTET_LEAVES:
        raise ValueError(f"unrooted enumeration capped at {MAX_QUARTET_LEAVES} leaves")
    if len(L) <= 3:
        yield UnrootedTree(L)
        return
    x0 = min(L)
    n = len(L) - 1
    for H in enumerate_hierarchies(L - {x0}):
        yield UnrootedTree(L, frozenset(_split(C, L) for C in H if 1 < len(C) < n))


def quartet_span(Q: Iterable[Quartet], leaves: Iterable[LeafId]) -> list[UnrootedTree]:
    Q = list(Q)
    L = frozenset(leaves)
    if any(not q.leaves <= L for q in Q):
        raise ValueError("quartet leaves outside the leaf set")
    return [T for T in enumerate_unrooted_trees(L) if all(displays_quartet(T, q) for q in Q)]


def quartet_consistent(Q: Iterable[Quartet], leaves: Iterable[LeafId] | None = None) -> bool:
    Q = list(Q)
    L = frozenset().union(*(q.leaves for q in Q)) if leaves is None else frozenset(leaves)
    return bool(quartet_span(Q, L))


def quartet_closure(Q: Iterable[Quartet], leaves: Iterable[LeafId]) -> set[Quartet]:
    trees = quartet_span(Q, leaves)
    if not trees:
        raise ValueError("quartet set is inconsistent")
    common = trees[0].quartets()
    for T in trees[1:]:
        common &= T.quartets()
    return common


def parse_quartet_file(text: str, labels: LabelTable | None = None) -> list[Quartet]:
    labels = LabelTable() if labels is None else labels
    out: list[Quartet] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        left, bar, right = line.partition("|")
        x, y = left.split(), right.split()
        if not bar or len(x) != 2 or len(y) != 2:
            raise TripleFormatError("expected '<a> <b> | <c> <d>'", lineno)
        try:
            q = Quartet.of(*(labels.intern(s) for s in (*x, *y)))
        except ValueError as exc:
            raise TripleFormatError(str(exc), lineno) from None
        if q not in out:
            out.append(q)
    return out


# --------------------------------------------------------------------------
# Counterexample: minimal representative quartet sets of different sizes

Q_PRIME_TEXT = "5 7 | 2 4\n1 5 | 6 7\n1 2 | 3 5\n4 7 | 1 3\n3 4 | 5 6\n"


@dataclass
class QuartetDemoReport:
    labels: LabelTable
    tree: UnrootedTree
    q_prime: list[Quartet]
    displayed: int
    q_prime_spans_only_tree: bool
    q_prime_removals_span: dict[Quartet, int]
    small_reps: list[tuple[Quartet, ...]]
    small_reps_minimal: bool

    @property
    def sizes(self) -> set[int]:
        out = set()
        if self.q_prime_spans_only_tree and all(v >= 2 for v in self.q_prime_removals_span.values()):
            out.add(len(self.q_prime))
        if self.small_reps and self.small_reps_minimal:
            out.add(len(self.small_reps[0]))
        return out

    @property
    def no_matroid(self) -> bool:
        return len(self.sizes) >= 2


def quartet_counterexample_demo() -> QuartetDemoReport:
    labels = LabelTable(str(i) for i in range(1, 8))
    Qp = parse_quartet_file(Q_PRIME_TEXT, labels)
    L = frozenset(range(7))
    trees = list(enumerate_unrooted_trees(L))
    binary = [T for T in trees if T.is_binary() and all(displays_quartet(T, q) for q in Qp)]
    if len(binary) != 1:
        raise RuntimeError(f"expected one binary tree displaying Q', found {len(binary)}")
    T = binary[0]
    QT = sorted(T.quartets())
    index = {q: i for i, q in enumerate(QT)}
    # one bitmask per tree over the quartets of T
    masks = np.array(
        [sum(1 << index[q] for q in U.quartets() if q in index) for U in trees], dtype=np.uint64
    )
    full = (1 << len(QT)) - 1

    def span_count(qs: Iterable[Quartet]) -> int:
        m = np.uint64(sum(1 << index[q] for q in qs))
        return int(np.count_nonzero((masks & m) == m))

    only_T = span_count(Qp) == 1
    removals = {q: span_count([p for p in Qp if p != q]) for q in Qp}

    k = len(L) - 3
    subsets = np.array(
        [sum(1 << i for i in c) for c in combinations(range(len(QT)), k)], dtype=np.uint64
    )
    small: list[tuple[Quartet, ...]] = []
    notm = ~masks & np.uint64(full)
    for start in range(0, len(subsets), 2048):
        chunk = subsets[start : start + 2048]
        counts = np.count_nonzero((chunk[:, None] & notm[None, :]) == 0, axis=1)
        for m in chunk[counts == 1]:
            m = int(m)
            small.append(tuple(QT[i] for i in range(len(QT)) if m >> i & 1))
    minimal = all(
        span_count([p for p in S if p != q]) >= 2 for S in small for q in S
    )
    return QuartetDemoReport(
        labels=labels,
        tree=T,
        q_prime=Qp,
        displayed=len(QT),
        q_prime_spans_only_tree=only_T,
        q_prime_removals_span=removals,
        small_reps=small,
        small_reps_minimal=minimal,
    )
