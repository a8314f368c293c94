"""Random instances and the closure timing harness."""

from __future__ import annotations

import csv
import random
import statistics
import time
from dataclasses import asdict, dataclass
from math import comb
from typing import Iterable, TextIO

from .closure import closure_baseline, closure_fast
from .core import LabelTable, RootedTree, TripleSet, displayed_triples, tree_from_clusters

CSV_COLUMNS = ("leaves", "triples", "algo", "median_ns", "closure_size")


def random_binary_tree(n: int, rng: random.Random, labels: LabelTable | None = None) -> RootedTree:
    """Uniform-insertion random binary tree on leaves ``0..n-1``."""
    if n < 1:
        return RootedTree(None, labels)
    H = {frozenset((0,))}
    for x in range(1, n):
        K = rng.choice(sorted(H, key=sorted))
        single = frozenset((x,))
        H = {C | single if K <= C else C for C in H} | {K, K | single, single}
    return tree_from_clusters(H, labels)


def random_tree(n: int, rng: random.Random, contract: float = 0.3, labels: LabelTable | None = None) -> RootedTree:
    """Random binary tree with each inner edge contracted with probability ``contract``."""
    T = random_binary_tree(n, rng, labels)
    keep = {C for C in T.hierarchy if len(C) in (1, n) or rng.random() >= contract}
    return tree_from_clusters(keep, labels)


def random_consistent_set(T: RootedTree, size: int, rng: random.Random) -> TripleSet:
    pool = list(displayed_triples(T))
    rng.shuffle(pool)
    return TripleSet(pool[: min(size, len(pool))], labels=T.labels)


@dataclass
class BenchRow:
    leaves: int
    triples: int
    algo: str
    median_ns: int
    closure_size: int


class BenchMismatch(RuntimeError):
    pass


def _median_ns(fn, R: TripleSet, reps: int) -> int:
    times = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        fn(R)
        times.append(time.perf_counter_ns() - t0)
    return int(statistics.median(times))


def bench(grid: Iterable[int], density: float = 2.0, reps: int = 5, seed: int = 0) -> list[BenchRow]:
    """Time both closure algorithms on one random instance per grid cell.

    Outputs are cross-checked (canonical text must match) before timing.
    """
    rng = random.Random(seed)
    rows: list[BenchRow] = []
    for n in grid:
        T = random_binary_tree(n, rng)
        size = max(1, round(density * n)) if n >= 3 else 0
        R = random_consistent_set(T, min(size, comb(n, 3)), rng)
        fast, base = closure_fast(R), closure_baseline(R)
        if fast.format() != base.format():
            raise BenchMismatch(f"closure algorithms disagree on |L|={n}")
        for name, fn in (("fast", closure_fast), ("baseline", closure_baseline)):
            rows.append(BenchRow(n, len(R), name, _median_ns(fn, R, reps), len(fast)))
    return rows


def write_csv(rows: Iterable[BenchRow], fh: TextIO) -> None:
    w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(asdict(row))
