from fractions import Fraction
from math import factorial

import pytest

from flipproduct.errors import (DegeneracyRetriesExhausted, GroundSetMismatch, HasLoop,
                                IndexOutOfRange, NotFullRank, RankRegimeUnsupported)
from flipproduct.flip import flip_product
from flipproduct.matroid import direct_sum, graphic, uniform
from flipproduct.checks import pair_orbits
from flipproduct.tropical import (GenericShift, lattice_index, maximal_chains, oracle_details,
                                  oracle_flip)


def test_maximal_chains():
    assert len(maximal_chains(uniform(3, 2))) == 3
    assert len(maximal_chains(uniform(1, 1))) == 1
    assert len(maximal_chains(uniform(4, 4))) == factorial(4)
    with pytest.raises(HasLoop):
        maximal_chains(uniform(2, 0))


def test_lattice_index():
    assert lattice_index([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert lattice_index([[2, 0], [0, 1]]) == 2
    assert lattice_index([[1, 1], [1, -1]]) == 2
    with pytest.raises(NotFullRank):
        lattice_index([[1, 1], [2, 2]])


def test_oracle_examples():
    assert oracle_flip(uniform(3, 2), uniform(3, 2), seed=0) == 2
    assert oracle_flip(uniform(1, 1), uniform(1, 1), seed=0) == 1
    assert oracle_flip(uniform(5, 3), uniform(5, 3), seed=0) == 6


def test_oracle_moved_edge_graph(moved):
    res = oracle_details(moved, moved, seed=3)
    assert res.value == 16
    assert set(res.multiplicities) == {1}


def test_oracle_errors():
    with pytest.raises(GroundSetMismatch):
        oracle_flip(uniform(3, 2), uniform(4, 2))
    with pytest.raises(HasLoop):
        oracle_flip(direct_sum(uniform(2, 2), uniform(1, 0)), uniform(3, 2))
    with pytest.raises(RankRegimeUnsupported):
        oracle_flip(uniform(3, 1), uniform(3, 2))
    with pytest.raises(IndexOutOfRange):
        oracle_flip(uniform(3, 2), uniform(3, 2), eps=3)


def test_degenerate_shift_exhausts_retries():
    # a constant shift is a lineality direction, never generic
    with pytest.raises(DegeneracyRetriesExhausted):
        oracle_details(uniform(3, 2), uniform(3, 2), shift=GenericShift((2, 2, 2), seed=0, retries=0))


def test_fixed_shift_is_used():
    w = (Fraction(1, 3), Fraction(-2, 7), Fraction(5, 11))
    res = oracle_details(uniform(3, 2), uniform(3, 2), shift=w)
    assert res.attempts == 1 and res.shift == w and res.value == 2


def test_two_seeds_and_every_eps_agree():
    seen = 0
    for M, N in pair_orbits(4, balanced_only=True):
        if M.n == 0 or M.loops_mask() or N.loops_mask():
            continue
        want = flip_product(M, N)
        for eps in range(M.n):
            a = oracle_details(M, N, eps=eps, seed=eps)
            b = oracle_details(M, N, eps=eps, seed=1000 + eps)
            assert a.value == b.value == want
            assert all(m >= 1 for m in a.multiplicities)
        seen += 1
    assert seen > 50


def test_unimodular_for_graphic_and_uniform():
    k4 = graphic(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    res = oracle_details(k4, uniform(6, 4), seed=1)
    assert res.value == 6 and set(res.multiplicities) == {1}
    for n in range(2, 6):
        for r in range(1, n + 1):
            res = oracle_details(uniform(n, r), uniform(n, n + 1 - r), seed=n)
            assert set(res.multiplicities) <= {1}
