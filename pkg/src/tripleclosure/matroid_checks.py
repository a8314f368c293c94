"""Empirical checks of the matroid on minimal representative sets."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .closure import closure_fast
from .core import LabelTable, Triple, TripleSet, parse_triple_file
from .representative import greedy_min_rep, is_minimal_representative, is_representative


class NotABasisError(ValueError):
    pass


def is_basis(R: TripleSet, S: TripleSet) -> bool:
    return S.issubset(R) and is_representative(R, S) and is_minimal_representative(R, S)


@dataclass
class ExchangeReport:
    witnesses: dict[Triple, Triple] = field(default_factory=dict)
    violation: Triple | None = None

    @property
    def ok(self) -> bool:
        return self.violation is None


def verify_exchange(R: TripleSet, B1: TripleSet, B2: TripleSet) -> ExchangeReport:
    """For each ``x`` in ``B1 - B2`` find ``y`` in ``B2 - B1`` with ``B1 - x + y`` a basis."""
    for B in (B1, B2):
        if not is_basis(R, B):
            raise NotABasisError(f"{B} is not a minimal representative set of R")
    report = ExchangeReport()
    ys = sorted(B2.as_set() - B1.as_set())
    for x in sorted(B1.as_set() - B2.as_set()):
        for y in ys:
            cand = B1.without(x).with_(y)
            if is_basis(R, cand):
                report.witnesses[x] = y
                break
        else:
            report.violation = x
            return report
    return report


def greedy_sizes(R: TripleSet, trials: int, seed: int = 0) -> list[int]:
    rng = random.Random(seed)
    return [len(greedy_min_rep(R, rng.randrange(2**63))) for _ in range(trials)]


def basis_cardinality_invariance(R: TripleSet, trials: int = 100, seed: int = 0) -> bool:
    return len(set(greedy_sizes(R, trials, seed))) <= 1


def independence_axioms(R: TripleSet, bases: list[TripleSet]) -> dict[str, bool]:
    """Check (I1)-(I3) on the family of all subsets of the given bases."""
    family: set[frozenset[Triple]] = set()
    for B in bases:
        items = sorted(B)
        for r in range(len(items) + 1):
            family.update(frozenset(c) for c in combinations(items, r))
    i1 = frozenset() in family
    i2 = all(frozenset(c) in family for I in family for r in range(len(I)) for c in combinations(sorted(I), r))
    i3 = True
    for I1 in family:
        for I2 in family:
            if len(I1) < len(I2) and not any(I1 | {e} in family for e in I2 - I1):
                i3 = False
    return {"I1": i1, "I2": i2, "I3": i3}


@dataclass
class NonClosureReport:
    X: TripleSet
    r: Triple
    r_prime: Triple
    cl_X: TripleSet
    cl_X_r: TripleSet
    cl_X_r_prime: TripleSet
    cl_X_both: TripleSet
    labels: LabelTable

    @property
    def violated(self) -> bool:
        # exchange axiom: r' in cl(X+r) - cl(X) should force r in cl(X+r')
        return (
            self.r_prime in self.cl_X_r
            and self.r_prime not in self.cl_X
            and self.r not in self.cl_X_r_prime
        )


def non_matroid_closure_demo() -> NonClosureReport:
    labels = LabelTable("abcd")
    X = parse_triple_file("a c | d", labels)
    r = parse_triple_file("a b | c", labels).sorted()
    rp = parse_triple_file("b c | d", labels).sorted()
    (r_t,), (rp_t,) = list(r), list(rp)
    return NonClosureReport(
        X=X,
        r=r_t,
        r_prime=rp_t,
        cl_X=closure_fast(X),
        cl_X_r=closure_fast(X.with_(r_t)),
        cl_X_r_prime=closure_fast(X.with_(rp_t)),
        cl_X_both=closure_fast(X.with_(r_t, rp_t)),
        labels=labels,
    )
