import random

import pytest

from tripleclosure.build import InconsistentError
from tripleclosure.closure import closure_fast, lmax, lmax_all
from tripleclosure.core import TripleSet, displayed_triples, parse_newick
from tripleclosure.oracle import enumerate_minimal_reps
from tripleclosure.representative import (
    greedy_max_weight_basis,
    greedy_min_rep,
    is_minimal_representative,
    is_representative,
    mandatory_triples,
)

from conftest import all_triples, random_subset_sets, trip


def test_greedy_chain4_input_order(chain4, abc):
    # ac|d is tested before bc|d and is implied by {ab|c, bc|d}
    S = greedy_min_rep(chain4)
    assert S == trip("ab|c bc|d", abc)
    assert len(S) == 2


def test_greedy_chain4_explicit_order(chain4, abc):
    ab_c, ac_d, bc_d = chain4
    assert greedy_min_rep(chain4, [bc_d, ac_d, ab_c]) == trip("ab|c ac|d", abc)


def test_greedy_nine(nine, nine_rep):
    for seed in range(20):
        S = greedy_min_rep(nine, seed)
        assert len(S) == 8
        assert is_representative(nine, S)
    # removal candidates are tried in order, so R' survives when listed last
    order = [t for t in nine if t not in nine_rep] + list(nine_rep)
    assert greedy_min_rep(nine, order) == nine_rep


def test_greedy_six(abc):
    T = parse_newick("((((a,b,c),d),e),f);", abc)
    R2 = displayed_triples(T)
    S = greedy_min_rep(R2)
    assert len(S) == 4
    Rp2 = trip("ab|d bc|d cd|e de|f", abc)
    assert Rp2.issubset(R2) and is_representative(R2, Rp2) and is_minimal_representative(R2, Rp2)


def test_greedy_seed_reproducible(nine):
    assert list(greedy_min_rep(nine, 7)) == list(greedy_min_rep(nine, 7))


def test_greedy_bad_order(chain4):
    with pytest.raises(ValueError):
        greedy_min_rep(chain4, list(chain4)[:2])


def test_greedy_inconsistent(abc):
    with pytest.raises(InconsistentError):
        greedy_min_rep(trip("ab|c bc|a", abc))


def test_weighted_chain4(abc):
    R = trip("ab|c ac|d bc|d", abc)
    ab_c, ac_d, bc_d = R
    w = {ab_c: 3, ac_d: 1, bc_d: 2}
    S = greedy_max_weight_basis(R, w)
    assert S == trip("ab|c bc|d", abc)
    assert sum(w[t] for t in S) == 5
    # brute force over the two bases
    bases = enumerate_minimal_reps(R)
    assert max(sum(w[t] for t in B) for B in bases) == 5


def test_weighted_uniform_and_single(nine, abc):
    S = greedy_max_weight_basis(nine, {t: 1.0 for t in nine})
    assert len(S) == len(greedy_min_rep(nine))
    R = trip("ab|c", abc)
    assert greedy_max_weight_basis(R, {list(R)[0]: 0.0}) == R


@pytest.mark.parametrize("bad", [None, float("nan"), -1.0, float("inf")])
def test_weighted_errors(chain4, bad):
    w = {t: 1.0 for t in chain4}
    t0 = list(chain4)[0]
    if bad is None:
        del w[t0]
    else:
        w[t0] = bad
    with pytest.raises(ValueError):
        greedy_max_weight_basis(chain4, w)


def test_weighted_is_max_exhaustive():
    rng = random.Random(41)
    for R in random_subset_sets(rng, 40, leaves_choices=(4, 5)):
        if len(R) > 8 or not len(R):
            continue
        w = {t: rng.choice([0.5, 1, 2, 3, 5]) for t in R}
        S = greedy_max_weight_basis(R, w)
        best = max(sum(w[t] for t in B) for B in enumerate_minimal_reps(R))
        assert sum(w[t] for t in S) == pytest.approx(best)


def test_is_representative(chain4, nine, nine_rep, abc):
    assert is_representative(chain4, trip("ab|c ac|d", abc))
    assert not is_representative(chain4, trip("ac|d bc|d", abc))
    assert is_representative(chain4, chain4)
    assert is_representative(nine, nine_rep)
    with pytest.raises(ValueError):
        is_representative(chain4, trip("ab|d", abc))


def test_is_minimal(chain4, nine, nine_rep):
    assert is_minimal_representative(nine, nine_rep)
    assert not is_minimal_representative(chain4, chain4)
    with pytest.raises(ValueError):
        is_minimal_representative(chain4, chain4.without(list(chain4)[0]))


def test_is_minimal_agrees_with_removal_check():
    rng = random.Random(42)
    for R in random_subset_sets(rng, 80):
        cl = closure_fast(R)
        for S in (R, greedy_min_rep(R, rng.randrange(99))):
            by_removal = all(closure_fast(S.without(r)) != cl for r in S)
            assert is_minimal_representative(R, S) == by_removal


def test_mandatory_six(abc):
    R1 = trip("ab|d ab|e ab|f bc|e bc|f", abc)
    assert mandatory_triples(R1) == R1
    assert enumerate_minimal_reps(R1) == [R1]


def test_mandatory_nine_not_all(nine_rep):
    assert mandatory_triples(nine_rep) != nine_rep


def test_mandatory_single(abc):
    R = trip("ab|c", abc)
    assert mandatory_triples(R) == R


def test_greedy_properties():
    rng = random.Random(43)
    for R in random_subset_sets(rng, 60, leaves_choices=(5, 6, 7)):
        sizes = {len(greedy_min_rep(R, s)) for s in range(15)}
        assert len(sizes) == 1
        S = greedy_min_rep(R, rng.randrange(10**6))
        assert is_representative(R, S) and is_minimal_representative(R, S)
        assert set(lmax_all(S).pairs) == set(lmax_all(R).pairs)
        for t in closure_fast(R):
            assert lmax(R, t) == lmax(S, t)


def test_order_invariance_many_permutations(nine):
    rng = random.Random(44)
    from tripleclosure.bench import random_tree

    T = random_tree(7, rng)
    R = TripleSet(rng.sample(list(displayed_triples(T)), 14))
    assert len({len(greedy_min_rep(R, rng.randrange(10**9))) for _ in range(100)}) == 1


def test_cross_set_sizes():
    rng = random.Random(45)
    for R in random_subset_sets(rng, 40):
        R1 = greedy_min_rep(R, 1)
        # a second set with the same closure: a different basis plus extra closure triples
        cl = list(closure_fast(R))
        R2 = greedy_min_rep(R, 2).with_(*rng.sample(cl, min(3, len(cl))))
        assert closure_fast(R1) == closure_fast(R2)
        assert len(greedy_min_rep(R1)) == len(greedy_min_rep(R2, 3))


def test_oracle_minimality_exhaustive_4():
    pool = all_triples(range(4))
    rng = random.Random(46)
    masks = rng.sample(range(1 << len(pool)), 600)
    from tripleclosure.build import is_consistent

    for mask in masks:
        R = TripleSet(t for i, t in enumerate(pool) if mask >> i & 1)
        if not is_consistent(R) or not len(R):
            continue
        reps = enumerate_minimal_reps(R)
        S = greedy_min_rep(R)
        assert len(S) == min(len(B) for B in reps)
        assert S in reps
        assert all(mandatory_triples(R).issubset(B) for B in reps)


def test_subset_can_need_larger_minrep(abc):
    # a subset of a tree's triples whose minimum representative set is larger than the tree's
    T = parse_newick("((((a,b,c),d),e),f);", abc)
    R2 = displayed_triples(T)
    R1 = trip("ab|d ab|e ab|f bc|e bc|f", abc)
    assert R1.issubset(R2)
    assert len(greedy_min_rep(R1)) == 5 > len(greedy_min_rep(R2)) == 4
