"""Beta invariant, nbc-bases and the characteristic polynomial.

Each quantity has a direct subset-sum or counting implementation and a
second route through flip products; the two are compared in the tests.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._bits import popcount_table
from .errors import IndexOutOfRange, InputError, NotSimple
from .flip import FlipEngine, FlipValue, default_engine
from .matroid import (Matroid, circuits, delete, dual, is_simple, truncation,
                      uniform)


def _engine(engine: Optional[FlipEngine]) -> FlipEngine:
    return engine if engine is not None else default_engine()


def beta_direct(M: Matroid) -> int:
    """(-1)^r * sum over X of (-1)^|X| r(X)."""
    rt = M.rank_table().astype(np.int64)
    signs = 1 - 2 * (popcount_table(M.n).astype(np.int64) & 1)
    total = int((signs * rt).sum())
    return total if M.rank % 2 == 0 else -total


def beta_via_flip(M: Matroid, eps: int, engine: Optional[FlipEngine] = None) -> FlipValue:
    if M.n < 2:
        raise InputError("beta via flip needs at least two elements")
    if not 0 <= eps < M.n:
        raise IndexOutOfRange(f"element {eps} outside ground set")
    e = 1 << eps
    return _engine(engine).flip(delete(M, e), delete(dual(M), e))


def nbc_count(M: Matroid, order=None) -> int:
    """Number of bases containing no broken circuit under ``order``.

    ``order`` lists the elements from smallest to largest; default is index order.
    """
    n = M.n
    if order is None:
        order = list(range(n))
    if sorted(order) != list(range(n)):
        raise InputError("order must be a permutation of the ground set")
    if M.loops_mask():
        return 0
    pos = {e: i for i, e in enumerate(order)}
    broken = []
    for c in circuits(M):
        elems = [e for e in range(n) if (c >> e) & 1]
        least = min(elems, key=pos.__getitem__)
        broken.append(c & ~(1 << least))
    return sum(1 for b in M.bases if not any(bc & b == bc for bc in broken))


@dataclass(frozen=True)
class CharPoly:
    """Coefficient lists run from the leading term down to the constant."""
    coeffs: tuple
    reduced: tuple
    mu: tuple

    def evaluate(self, x: int) -> int:
        v = 0
        for c in self.coeffs:
            v = v * x + c
        return v


def char_poly(M: Matroid) -> CharPoly:
    """p(t) = sum over A of (-1)^|A| t^(r - r(A)), and its quotient by (t - 1)."""
    if M.n == 0:
        raise InputError("the characteristic polynomial of the empty matroid is 1 and has no reduction")
    r = M.rank
    rt = M.rank_table().astype(np.int64)
    signs = 1 - 2 * (popcount_table(M.n).astype(np.int64) & 1)
    # coefficient of t^(r-k) collects subsets of rank k
    coeffs = [int(signs[rt == k].sum()) for k in range(r + 1)]
    reduced = []
    carry = 0
    for c in coeffs[:-1]:
        carry = carry + c
        reduced.append(carry)
    remainder = carry + coeffs[-1]
    if remainder != 0:
        raise AssertionError(f"p(1) = {remainder}, expected 0")
    mu = tuple(abs(c) for c in reduced)
    for i, c in enumerate(reduced):
        if c != 0 and (c > 0) != (i % 2 == 0):
            raise AssertionError("reduced characteristic polynomial does not alternate in sign")
    return CharPoly(tuple(coeffs), tuple(reduced), mu)


def mu_via_flip(M: Matroid, k: int, engine: Optional[FlipEngine] = None) -> FlipValue:
    """mu_k as U_{n, n-k} * Trunc_{k+1}(M), for simple M."""
    if not is_simple(M):
        raise NotSimple("mu via flip needs a simple matroid")
    if not 0 <= k <= M.rank - 1:
        raise IndexOutOfRange(f"k={k} not in 0..{M.rank - 1}")
    return _engine(engine).flip(uniform(M.n, M.n - k), truncation(M, k + 1))


def nbc_flip_check(M: Matroid, engine: Optional[FlipEngine] = None) -> FlipValue:
    """M * U_{n, n-r+1}; equals nbc_count(M)."""
    n, r = M.n, M.rank
    if r == 0:
        # every element is a loop, or the ground set is empty
        return FlipValue(0 if n else 1)
    return _engine(engine).flip(M, uniform(n, n - r + 1))
