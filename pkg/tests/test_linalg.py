from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from flipproduct import _bits
from flipproduct.linalg import determinant, rank_mod_p, rank_rational, smith_diagonal, solve_exact

small_matrix = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n))


def test_bit_helpers():
    assert _bits.bits_of(0b1011) == [0, 1, 3]
    assert _bits.mask_of([0, 1, 3]) == 0b1011
    assert _bits.compress(0b10110, [1, 2, 4]) == 0b111
    assert _bits.permute_mask(0b011, [2, 0, 1]) == 0b101
    assert len(_bits.k_subsets(6, 3)) == 20


def test_zeta_transforms_match_brute_force():
    n = 4
    rng = np.random.default_rng(0)
    flags = rng.random(1 << n) < 0.2
    sup = _bits.superset_or(flags.copy(), n)
    sub = _bits.subset_or(flags.copy(), n)
    vals = rng.integers(0, 9, 1 << n)
    mx = _bits.subset_max(vals.copy(), n)
    for s in range(1 << n):
        assert sup[s] == any(flags[t] for t in range(1 << n) if t & s == s)
        assert sub[s] == any(flags[t] for t in range(1 << n) if t & s == t)
        assert mx[s] == max(vals[t] for t in range(1 << n) if t & s == t)


def test_ranks():
    assert rank_rational([[1, 2], [2, 4]]) == 1
    assert rank_rational([[Fraction(1, 2), 1], [1, 2], [0, 1]]) == 2
    assert rank_mod_p([[1, 1], [1, 1]], 2) == 1
    assert rank_mod_p([[1, 1], [1, 3]], 2) == 1
    assert rank_mod_p([[1, 1], [1, 3]], 3) == 2


def test_smith_and_solve():
    assert smith_diagonal([[2, 0], [0, 1]]) == [1, 2]
    assert smith_diagonal([[2, 4], [6, 8]]) == [2, 4]
    assert solve_exact([[1, 1], [1, 1]], [1, 2]) is None
    assert solve_exact([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]


@settings(max_examples=60, deadline=None)
@given(small_matrix)
def test_determinant_matches_numpy_and_smith(a):
    d = determinant(a)
    assert d == round(np.linalg.det(np.array(a, dtype=float)))
    diag = smith_diagonal(a)
    if d:
        assert abs(d) == int(np.prod(diag))
    else:
        assert len(diag) < len(a)
