import random
from itertools import combinations

import pytest

from tripleclosure.closure import closure_fast
from tripleclosure.core import TripleSet, displayed_triples, parse_newick
from tripleclosure.oracle import (
    OracleCapError,
    closure_oracle,
    enumerate_minimal_reps,
    enumerate_rooted_trees,
    span,
)

from conftest import random_subset_sets, trip


def count_trees(n):
    """Rooted phylogenetic trees on n labelled leaves by the set-partition recursion."""
    from functools import lru_cache
    from math import comb

    @lru_cache(None)
    def t(m):
        if m == 1:
            return 1
        # forests on m labelled leaves with k >= 2 trees hanging from the root
        @lru_cache(None)
        def forests(m, k):
            if k == 0:
                return 1 if m == 0 else 0
            if m == 0:
                return 0
            # the tree holding the smallest leaf has s leaves
            return sum(comb(m - 1, s - 1) * t(s) * forests(m - s, k - 1) for s in range(1, m - k + 2))

        return sum(forests(m, k) for k in range(2, m + 1))

    return t(n)


@pytest.mark.parametrize("n, expected", [(1, 1), (3, 4), (4, 26)])
def test_tree_counts(n, expected):
    trees = list(enumerate_rooted_trees(range(n)))
    assert len(trees) == expected == count_trees(n)
    assert len(set(trees)) == len(trees)


def test_tree_count_5_6():
    for n in (5, 6):
        assert sum(1 for _ in enumerate_rooted_trees(range(n))) == count_trees(n)


def test_cap():
    with pytest.raises(OracleCapError):
        list(enumerate_rooted_trees(range(9)))


def test_span_chain4(chain4, abc):
    assert span(chain4) == [parse_newick("(((a,b),c),d);", abc)]
    assert len(span(trip("ac|d bc|d", abc))) == 4


def test_span_empty():
    assert len(span(TripleSet(), leaves=[0, 1, 2])) == 4


def test_closure_oracle_r3(abc):
    assert closure_oracle(trip("ac|d bc|d", abc)) == trip("ac|d bc|d ab|d", abc)


def test_closure_oracle_closed_set(abc):
    R = displayed_triples(parse_newick("(((a,b),(c,d)),e);", abc))
    assert closure_oracle(R) == R


def test_closure_oracle_nine_rep(nine_rep):
    assert closure_oracle(nine_rep) == closure_fast(nine_rep)


def test_minimal_reps_chain4(chain4, abc):
    reps = enumerate_minimal_reps(chain4)
    assert set(reps) == {trip("ab|c ac|d", abc), trip("ab|c bc|d", abc)}


def test_minimal_reps_single(abc):
    R = trip("ab|c", abc)
    assert enumerate_minimal_reps(R) == [R]


def test_minimal_reps_six(abc):
    R1 = trip("ab|d ab|e ab|f bc|e bc|f", abc)
    assert enumerate_minimal_reps(R1) == [R1]


def test_minimal_reps_cap(nine):
    with pytest.raises(OracleCapError):
        enumerate_minimal_reps(nine)


def test_minimal_reps_share_cardinality():
    rng = random.Random(21)
    for R in random_subset_sets(rng, 40, leaves_choices=(4, 5)):
        if len(R) > 8:
            continue
        sizes = {len(S) for S in enumerate_minimal_reps(R)}
        assert len(sizes) <= 1


def test_closure_axioms_oracle():
    rng = random.Random(22)
    for R in random_subset_sets(rng, 60, leaves_choices=(4, 5)):
        cl = closure_oracle(R)
        assert R.issubset(cl)
        assert closure_oracle(cl) == cl
        sub = TripleSet(rng.sample(list(R), len(R) // 2))
        assert closure_oracle(sub).issubset(cl)


def test_unresolved_trio_extensions():
    # no closure triple on a trio: each of its resolutions can be added to cl(R)
    from tripleclosure.build import is_consistent
    from tripleclosure.core import Triple

    rng = random.Random(23)
    for R in random_subset_sets(rng, 60, leaves_choices=(4, 5)):
        cl = closure_oracle(R)
        for a, b, c in combinations(sorted(R.leaf_set), 3):
            if any(t.leaves == {a, b, c} for t in cl):
                continue
            for t in (Triple(a, b, c), Triple(a, c, b), Triple(b, c, a)):
                assert is_consistent(cl.with_(t))
