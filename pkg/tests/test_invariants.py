import random
from math import comb

import pytest

from flipproduct.errors import IndexOutOfRange, InputError, NotSimple
from flipproduct.invariants import (beta_direct, beta_via_flip, char_poly, mu_via_flip,
                                    nbc_count, nbc_flip_check)
from flipproduct.matroid import direct_sum, from_bases, graphic, uniform

K3 = graphic(3, [(0, 1), (0, 2), (1, 2)])
K4 = graphic(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def test_beta_direct_values():
    assert beta_direct(uniform(1, 1)) == 1
    for n in range(2, 8):
        for d in range(1, n):
            assert beta_direct(uniform(n, d)) == comb(n - 2, d - 1)
    assert beta_direct(direct_sum(uniform(2, 1), uniform(2, 1))) == 0


def test_beta_via_flip():
    assert beta_via_flip(uniform(3, 2), 0) == 1
    for e in range(4):
        assert beta_via_flip(uniform(4, 2), e) == 2
    with_coloop = direct_sum(uniform(3, 2), uniform(1, 1))
    assert beta_via_flip(with_coloop, 3) == 0
    with pytest.raises(InputError):
        beta_via_flip(uniform(1, 1), 0)


def test_nbc():
    for n in range(1, 7):
        for r in range(1, n + 1):
            assert nbc_count(uniform(n, r)) == comb(n - 1, r - 1)
    assert nbc_count(direct_sum(uniform(2, 1), uniform(1, 0))) == 0
    for order in ([0, 1, 2], [2, 0, 1], [1, 2, 0]):
        assert nbc_count(K3, order) == 2
    assert nbc_count(K4) == 6


def test_char_poly():
    cp = char_poly(uniform(3, 2))
    assert cp.coeffs == (1, -3, 2) and cp.reduced == (1, -2) and cp.mu == (1, 2)
    assert cp.evaluate(1) == 0
    k4 = char_poly(K4)
    assert k4.coeffs == (1, -6, 11, -6)
    assert k4.mu == (1, 5, 6)
    with pytest.raises(InputError):
        char_poly(from_bases(0, [[]]))


def test_mu_via_flip():
    assert mu_via_flip(uniform(3, 2), 1) == 2
    assert mu_via_flip(uniform(3, 2), 0) == 1
    assert [int(mu_via_flip(K4, k)) for k in range(3)] == [1, 5, 6]
    with pytest.raises(NotSimple):
        mu_via_flip(uniform(3, 1), 0)
    with pytest.raises(IndexOutOfRange):
        mu_via_flip(K4, 3)


def test_nbc_flip_check(binary7):
    assert nbc_flip_check(uniform(5, 3)) == 6
    assert nbc_flip_check(direct_sum(uniform(3, 2), uniform(1, 0))) == 0
    assert nbc_flip_check(binary7) == nbc_count(binary7) == 13
    assert char_poly(binary7).mu == (1, 6, 15, 13)


def test_random_larger_beta():
    from flipproduct.checks import random_matroid
    rng = random.Random(11)
    for _ in range(10):
        n = rng.choice((6, 7))
        M = random_matroid(n, rng.randint(1, n - 1), rng, loopless=False)
        b = beta_direct(M)
        assert all(beta_via_flip(M, e) == b for e in range(n))
