import random
from itertools import combinations

import pytest

from tripleclosure.core import LabelTable, Triple, TripleSet, parse_newick


def trip(text: str, labels: LabelTable) -> TripleSet:
    """``"ab|c ac|d"`` with single-character labels."""
    out = []
    for tok in text.split():
        pair, _, c = tok.partition("|")
        out.append(Triple.of(labels.intern(pair[0]), labels.intern(pair[1]), labels.intern(c)))
    return TripleSet(out, labels=labels)


def all_triples(leaves):
    out = []
    for a, b, c in combinations(sorted(leaves), 3):
        out += [Triple(a, b, c), Triple(a, c, b), Triple(b, c, a)]
    return out


def random_subset_sets(rng: random.Random, n_sets: int, leaves_choices=(5, 6)):
    """Random consistent triple sets: random subsets of R(T) for random trees."""
    from tripleclosure.bench import random_tree

    out = []
    for _ in range(n_sets):
        n = rng.choice(leaves_choices)
        T = random_tree(n, rng, contract=rng.choice((0.0, 0.3, 0.6)))
        from tripleclosure.core import displayed_triples

        pool = list(displayed_triples(T))
        k = rng.randint(0, min(len(pool), 2 * n))
        out.append(TripleSet(rng.sample(pool, k)))
    return out


@pytest.fixture
def abc():
    return LabelTable("abcdefghi")


@pytest.fixture
def chain4(abc):
    return trip("ab|c ac|d bc|d", abc)


@pytest.fixture
def nine(abc):
    return trip("ab|d ab|h ac|e ag|h bc|f bc|i bd|i be|i bf|i bg|h", abc)


@pytest.fixture
def nine_rep(nine, abc):
    return nine.without(*trip("bc|i bg|h", abc))


@pytest.fixture
def nine_tree(abc):
    # one of many trees displaying the nine-leaf set with B(T) = 9
    return parse_newick("((((a,b,c,g),h),d,e,f),i);", abc)
