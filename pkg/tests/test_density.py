import random
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import density_oracle, is_dense, revised_power_oracle, weakly_covers
from splitkit import density
from splitkit.density import (
    DENSE,
    WEAKLY_COVERING,
    DensityQuery,
    DensityWitness,
    density_exact,
    density_greedy,
    revised_power_exact,
    verify_witness,
)
from splitkit.core import SearchStats
from splitkit.errors import BadParameters, SearchBudgetExceeded, ShapeMismatch

queries = st.integers(1, 6).flatmap(
    lambda n: st.integers(1, n).flatmap(
        lambda k1: st.integers(k1, n).map(lambda k2: DensityQuery(n, k1, k2))))


def test_query_validation():
    with pytest.raises(BadParameters):
        DensityQuery(4, 3, 2)
    with pytest.raises(BadParameters):
        DensityQuery(4, 2, 5)
    with pytest.raises(BadParameters):
        DensityQuery(4, 0, 2)


def test_verify_witness_examples():
    q = DensityQuery(4, 2, 3)
    assert verify_witness(DensityWitness([{0, 1}, {2, 3}], DENSE), q)
    assert not verify_witness(DensityWitness([{0, 1}], DENSE), q)
    everything = [set(c) for c in combinations(range(4), 2)]
    assert verify_witness(DensityWitness(everything, DENSE), DensityQuery(4, 2, 2))


def test_verify_witness_shape():
    with pytest.raises(ShapeMismatch):
        verify_witness(DensityWitness([{0, 1, 2}], DENSE), DensityQuery(4, 2, 3))


@pytest.mark.parametrize("q, value", [((4, 2, 2), 6), ((4, 2, 3), 2), ((5, 1, 3), 3)])
def test_density_examples(q, value):
    got, w = density_exact(DensityQuery(*q))
    assert got == value == len(w)
    assert verify_witness(w, DensityQuery(*q))


def test_greedy_examples():
    assert len(density_greedy(DensityQuery(4, 2, 2))) == 6
    w = density_greedy(DensityQuery(4, 2, 3))
    assert len(w) <= 3 and verify_witness(w, DensityQuery(4, 2, 3))
    w = density_greedy(DensityQuery(5, 1, 3))
    assert len(w) == 3 and verify_witness(w, DensityQuery(5, 1, 3))


@settings(max_examples=60)
@given(queries)
def test_exact_never_above_greedy(q):
    value, w = density_exact(q)
    greedy = density_greedy(q)
    assert verify_witness(greedy, q)
    assert value <= len(greedy)
    assert is_dense(w.members, q.lam, q.kappa2)


@pytest.mark.parametrize("n, k1, k2", [(5, 2, 3), (5, 2, 4), (6, 3, 4), (5, 3, 5)])
def test_exact_matches_oracle(n, k1, k2):
    assert density_exact(DensityQuery(n, k1, k2))[0] == density_oracle(n, k1, k2)


def test_threads_do_not_change_result():
    for q in [DensityQuery(6, 2, 3), DensityQuery(6, 3, 4), DensityQuery(5, 2, 4)]:
        s1, s4 = SearchStats(), SearchStats()
        one = density_exact(q, stats=s1, threads=1)
        four = density_exact(q, stats=s4, threads=4)
        assert one == four
        assert s1.as_dict() == s4.as_dict()


def test_density_budget():
    with pytest.raises(SearchBudgetExceeded):
        density_exact(DensityQuery(6, 3, 4), budget=3)


def test_revised_power_examples():
    v, w = revised_power_exact(5, 2)
    assert v == 10
    v, w = revised_power_exact(4, 3)
    assert v == 2
    assert [sorted(m) for m in w.members] == [[0, 1, 2], [0, 1, 3]]
    assert revised_power_exact(3, 3)[0] == 1


@pytest.mark.parametrize("n, theta", [(4, 2), (4, 4), (5, 3), (5, 4)])
def test_revised_power_matches_oracle(n, theta):
    v, w = revised_power_exact(n, theta)
    assert v == revised_power_oracle(n, theta)
    assert weakly_covers(w.members, n, theta)
    assert verify_witness(w, DensityQuery(n, theta, theta))


def test_weak_covering_needs_theta():
    with pytest.raises(BadParameters):
        DensityWitness([{0, 1}], WEAKLY_COVERING)


def test_table_sweep_small():
    table = density.density_table(5)
    assert density.monotonicity_violations(table) == []
    up, down = density.kappa_direction_witnesses(table)
    n, k, k2 = up
    assert table[n, k, k] < table[n, k2, k2]
    n, k, k2 = down
    assert table[n, k, k] > table[n, k2, k2]
    for (n, k1, k2), v in table.items():
        if k1 == k2:
            assert v == comb(n, k1)


@settings(max_examples=40)
@given(st.integers(0, 10_000))
def test_chain_union_density(seed):
    rng = random.Random(seed)
    top = rng.randint(3, 6)
    k1 = rng.randint(1, 2)
    k2 = rng.randint(k1, top - 1)
    sizes = sorted(rng.sample(range(k2, top + 1), rng.randint(1, top - k2 + 1)))
    chain = [range(s) for s in sizes]
    fams = []
    for link in chain:
        pts = list(link)
        q = DensityQuery(len(pts), k1, k2)
        fams.append(density.density_exact(q)[1].members)
    for k3 in range(k2 + 1, top + 1):
        assert density.chain_union_dense(chain, fams, k1, k3)
