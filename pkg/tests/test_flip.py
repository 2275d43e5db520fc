from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flipproduct.errors import GroundSetMismatch, InputError
from flipproduct.flip import (INFINITE, FlipConfig, FlipEngine, FlipValue, flip_product,
                              flip_zero_certificate, hadamard_matroid, is_flip_positive)
from flipproduct.matroid import Matroid, direct_sum, from_bases, uniform

U11, U10 = uniform(1, 1), uniform(1, 0)


def test_flipvalue_arithmetic():
    zero, two, three = FlipValue(0), FlipValue(2), FlipValue(3)
    assert zero * INFINITE == 0
    assert INFINITE * zero == 0
    assert two * three == 6
    assert (INFINITE * two).is_infinite
    assert (INFINITE * INFINITE).is_infinite
    assert (two + INFINITE).is_infinite
    assert two + three == 5
    assert repr(two) == "Finite(2)" and repr(INFINITE) == "Infinite"
    assert INFINITE > 10**9 and two < INFINITE
    assert INFINITE.to_json() == "inf" and two.to_json() == 2


def test_config_validation():
    with pytest.raises(InputError):
        FlipConfig(pivot_rule="random")
    with pytest.raises(InputError):
        FlipConfig(memo_mode="lru")


def test_single_element_pairs():
    assert flip_product(U11, U11) == 1
    for M in (U11, U10):
        for N in (U11, U10):
            if (M, N) != (U11, U11):
                assert flip_product(M, N) == 0


def test_glued_and_moved_graphs(glued, moved):
    assert flip_product(glued, glued) == 0
    assert flip_product(moved, moved) == 16
    assert not is_flip_positive(glued, glued)
    assert is_flip_positive(moved, moved)
    cert = flip_zero_certificate(glued, glued)
    assert cert.kind == "bad_subset" and cert.subset == 0b111111
    assert flip_zero_certificate(moved, moved) is None


def test_binary7(binary7):
    assert flip_product(binary7, binary7) == 6


@pytest.mark.parametrize("n", range(1, 11))
def test_uniform_closed_form(n):
    eng = FlipEngine()
    for r in range(1, n + 1):
        assert eng.flip(uniform(n, r), uniform(n, n - r + 1)) == comb(n - 1, r - 1)


def test_hadamard():
    assert hadamard_matroid(uniform(3, 2), uniform(3, 2)) == uniform(3, 3)
    assert hadamard_matroid(U11, U11) == U11


def test_hadamard_not_free_for_glued_graph(glued):
    assert hadamard_matroid(glued, glued).rank < glued.n


def test_loop_and_rank_gate():
    with_loop = direct_sum(uniform(3, 2), uniform(1, 0))
    assert flip_product(with_loop, uniform(4, 3)) == 0
    assert flip_zero_certificate(with_loop, uniform(4, 3)).kind == "loop"
    assert flip_product(uniform(4, 1), uniform(4, 2)) == 0
    assert flip_zero_certificate(uniform(4, 1), uniform(4, 2)).kind == "rank_deficit"
    assert flip_product(uniform(4, 3), uniform(4, 3)).is_infinite
    # balanced ranks with a coloop common to both sides
    cm = direct_sum(uniform(1, 1), uniform(2, 1))
    assert flip_product(cm, cm) == 0
    assert flip_zero_certificate(cm, cm).kind == "shared_coloop"


def test_errors():
    with pytest.raises(GroundSetMismatch):
        flip_product(uniform(3, 2), uniform(4, 2))
    with pytest.raises(InputError):
        FlipEngine().flip(uniform(3, 2), uniform(3, 2), pivot=3)


def test_configs_agree(moved, binary7):
    base = flip_product(moved, moved)
    for cfg in (FlipConfig(pivot_rule="min_branching"), FlipConfig(memo_mode="none"),
                FlipConfig(memo_mode="iso")):
        assert flip_product(moved, moved, cfg) == base
    assert flip_product(binary7, binary7, FlipConfig(memo_mode="iso")) == 6
    for p in range(binary7.n):
        assert FlipEngine().flip(binary7, binary7, pivot=p) == 6


def _random_matroid(n, r, seed):
    from random import Random
    from flipproduct.checks import random_matroid
    return random_matroid(n, r, Random(seed))


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 8), st.data())
def test_symmetry_and_pivots_random(n, data):
    r = data.draw(st.integers(1, n))
    seed = data.draw(st.integers(0, 10**6))
    M, N = _random_matroid(n, r, seed), _random_matroid(n, n + 1 - r, seed + 1)
    v = flip_product(M, N)
    assert flip_product(N, M) == v
    p = data.draw(st.integers(0, n - 1))
    assert FlipEngine().flip(M, N, pivot=p) == v


def test_matroid_with_single_basis():
    M = Matroid(2, [0b01])
    assert flip_product(M, uniform(2, 2)) == 0
    assert from_bases(2, [[0], [1]]) == uniform(2, 1)
