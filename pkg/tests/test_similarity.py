import random

from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import similarity_oracle
from strategies import families
from splitkit.core import SetFamily
from splitkit.similarity import (
    DOMINANCE_ABSENT,
    SOURCE_NOT_ED,
    TRANSFER_HELD,
    dominance_ed_probe,
    dominance_violation,
    find_dominating_pairing,
    find_similarity,
    intersection_matrix,
)


def fam(*sets, n=8):
    return SetFamily(n, sets)


def test_matrix_examples():
    assert intersection_matrix(fam({1, 2}, {2, 3})) == ((2, 1), (1, 2))
    assert intersection_matrix(fam({0}, {1, 2})) == ((1, 0), (0, 2))
    assert intersection_matrix(fam({1, 2}, {1, 2})) == ((2, 2), (2, 2))


def test_similarity_examples():
    assert find_similarity(fam({1, 2}, {2, 3}), fam({4, 5}, {5, 6})) == (0, 1)
    assert find_similarity(fam({1, 2}, {3, 4}), fam({1, 2}, {2, 3})) is None
    f = fam({1, 2, 3}, {3}, {0, 4})
    assert find_similarity(f, f) == (0, 1, 2)
    assert find_similarity(f, fam({1})) is None


def _relabel(f, rng):
    perm = list(range(f.universe_size))
    rng.shuffle(perm)
    order = list(range(len(f)))
    rng.shuffle(order)
    return SetFamily(f.universe_size, [[perm[v] for v in f.sets[i]] for i in order])


@settings(max_examples=100)
@given(families(max_n=6, max_m=5), st.integers(0, 1000))
def test_similarity_matches_oracle_and_is_an_equivalence(f, seed):
    rng = random.Random(seed)
    g = _relabel(f, rng)
    h = _relabel(g, rng)
    fg = find_similarity(f, g)
    assert fg == similarity_oracle(f.sets, g.sets)
    mf, mg = intersection_matrix(f), intersection_matrix(g)
    m = len(f)
    assert all(mf[i][j] == mg[fg[i]][fg[j]] for i in range(m) for j in range(m))
    # symmetric: the inverse map works the other way round
    inverse = [0] * m
    for i, j in enumerate(fg):
        inverse[j] = i
    assert all(mg[i][j] == mf[inverse[i]][inverse[j]] for i in range(m) for j in range(m))
    # transitive: compose with g -> h
    gh = find_similarity(g, h)
    mh = intersection_matrix(h)
    assert all(mf[i][j] == mh[gh[fg[i]]][gh[fg[j]]] for i in range(m) for j in range(m))


@settings(max_examples=60)
@given(families(max_n=5, max_m=4), families(max_n=5, max_m=4))
def test_similarity_absent_agrees_with_oracle(f, g):
    assert find_similarity(f, g) == similarity_oracle(f.sets, g.sets)


def test_probe_examples():
    f = fam({0, 1}, {1, 2}, {3, 4})
    report = dominance_ed_probe(f, f)
    assert report.verdict == TRANSFER_HELD
    disjoint_pairs = fam({0, 1}, {2, 3}, {4, 5})
    copies = fam({1, 2}, {1, 2}, {1, 2})
    report = dominance_ed_probe(disjoint_pairs, copies)
    assert report.verdict == DOMINANCE_ABSENT
    assert report.violation == (0, 1)
    report = dominance_ed_probe(copies, disjoint_pairs)
    assert report.verdict == SOURCE_NOT_ED


def test_dominance_off_by_one():
    f = fam({0, 1}, {1, 2})
    g = fam({0, 1, 2}, {1, 2, 3})
    assert dominance_violation(f, g) == (0, 1)
    assert dominance_violation(g, f) is None


def test_dominating_pairing_search():
    f = fam({0, 1}, {2, 3}, {1, 2})
    g = fam({0, 1}, {1, 2}, {2, 3})
    assert dominance_violation(f, g) is not None
    pairing = find_dominating_pairing(f, g)
    assert pairing is not None and dominance_violation(f, g, pairing) is None
    report = dominance_ed_probe(f, g, search_bijections=True)
    assert report.verdict != DOMINANCE_ABSENT


@settings(max_examples=40)
@given(families(max_n=5, max_m=3), families(max_n=5, max_m=3))
def test_probe_is_reproducible(f, g):
    if len(f) != len(g):
        return
    a = dominance_ed_probe(f, g).as_dict()
    b = dominance_ed_probe(f, g).as_dict()
    assert a == b
