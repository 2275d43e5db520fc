"""Brute-force flip product from Bergman fans.

M * N counts, with lattice multiplicity, the points of
Trop(M) n (w - Trop(N)) n {x_eps = 0} for a generic shift w. Each maximal cone
of a Bergman fan is given by a maximal chain of flats, so the count is a sum
over pairs of chains of the solutions of a square linear system.

This module does not use the recursion in ``flip`` and serves as its oracle.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional

import numpy as np

from ._bits import bits_of
from .errors import (DegeneracyRetriesExhausted, GroundSetMismatch, HasLoop,
                     IndexOutOfRange, NotFullRank, RankRegimeUnsupported)
from .flip import FlipValue
from .linalg import smith_diagonal, solve_exact
from .matroid import Matroid

DEFAULT_RETRIES = 32
_FLOAT_TOL = 1e-6
_BATCH = 20000


@dataclass(frozen=True)
class ChainCone:
    """Cone of a maximal chain of flats F_1 < ... < F_r = E (the empty flat is implicit)."""
    n: int
    chain: tuple

    @property
    def rays(self):
        """Indicator vectors of the proper flats F_1..F_{r-1}."""
        return [indicator(f, self.n) for f in self.chain[:-1]]

    @property
    def lineality(self):
        return [1] * self.n


def indicator(mask: int, n: int):
    return [(mask >> i) & 1 for i in range(n)]


def maximal_chains(M: Matroid):
    """All maximal chains of flats of a loopless matroid."""
    if M.loops_mask():
        raise HasLoop("Bergman fan cones need a loopless matroid")
    rt = M.rank_table()
    n = M.n
    full = M.full
    covers = {}

    def upper_covers(flat):
        if flat not in covers:
            r = rt[flat]
            seen = set()
            for e in range(n):
                if (flat >> e) & 1:
                    continue
                s = flat | (1 << e)
                cl = s
                for f in range(n):
                    if not (s >> f) & 1 and rt[s | (1 << f)] == r + 1:
                        cl |= 1 << f
                seen.add(cl)
            covers[flat] = sorted(seen)
        return covers[flat]

    out = []

    def dfs(flat, path):
        if flat == full:
            out.append(ChainCone(n, tuple(path)))
            return
        for g in upper_covers(flat):
            path.append(g)
            dfs(g, path)
            path.pop()

    if n == 0:
        return [ChainCone(0, ())]
    dfs(0, [])
    return out


def lattice_index(generators) -> int:
    """Index in Z^n of the lattice spanned by integer vectors ``generators``."""
    gens = [list(map(int, g)) for g in generators]
    if not gens:
        raise NotFullRank("no generators")
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise ValueError("generators have unequal length")
    cols = [list(row) for row in zip(*gens)]  # n x k, generators as columns
    diag = smith_diagonal(cols)
    if len(diag) < n:
        raise NotFullRank(f"generators span rank {len(diag)} < {n}")
    out = 1
    for d in diag:
        out *= d
    return out


@dataclass(frozen=True)
class GenericShift:
    w: tuple
    seed: Optional[int] = None
    retries: int = DEFAULT_RETRIES


def sample_shift(n: int, rng: random.Random) -> tuple:
    """n signed ratios of independent integers drawn from [1, 2^31)."""
    out = []
    for _ in range(n):
        num = rng.randrange(1, 1 << 31)
        den = rng.randrange(1, 1 << 31)
        sign = -1 if rng.random() < 0.5 else 1
        out.append(Fraction(sign * num, den))
    return tuple(out)


class _Degenerate(Exception):
    pass


@dataclass
class OracleResult:
    value: int
    eps: int
    shift: tuple
    attempts: int
    multiplicities: list = field(default_factory=list)


def _cone_arrays(chains, n: int, rank: int) -> np.ndarray:
    arr = np.zeros((len(chains), n, rank - 1), dtype=np.float64)
    for c, cone in enumerate(chains):
        for j, f in enumerate(cone.chain[:-1]):
            for e in bits_of(f):
                arr[c, e, j] = 1.0
    return arr


def _count_for_shift(M, N, eps, cm, cn, am, an, w):
    n = M.n
    if n > 1 and len(set(w)) == 1:
        raise _Degenerate("shift lies on the lineality line")
    k = (M.rank - 1) + (N.rank - 1)
    den = lcm(*(x.denominator for x in w))
    w_int = [int(x * den) for x in w]
    wf = np.array([float(x) for x in w])
    wf = wf / np.abs(wf).max()
    points = {}
    mults = []
    ones = np.ones((n, 1))
    for i in range(len(cm)):
        for start in range(0, len(cn), _BATCH):
            block = an[start:start + _BATCH]
            b = len(block)
            sys = np.concatenate(
                [np.broadcast_to(am[i], (b, n, M.rank - 1)), block,
                 np.broadcast_to(ones, (b, n, 1))], axis=2)
            det = np.linalg.det(sys)
            ok = np.abs(det) > 0.5
            if not ok.any():
                continue
            sel = np.nonzero(ok)[0]
            sol = np.linalg.solve(sys[sel], np.broadcast_to(wf, (len(sel), n))[..., None])[..., 0]
            cand = sel[(sol[:, :k] > -_FLOAT_TOL).all(axis=1)]
            for j in cand:
                j = int(j) + start
                cols = [indicator(f, n) for f in cm[i].chain[:-1]]
                cols += [indicator(g, n) for g in cn[j].chain[:-1]]
                cols.append([1] * n)
                a_int = [[cols[c][r] for c in range(n)] for r in range(n)]
                x = solve_exact(a_int, w_int)
                if x is None:
                    continue
                coeffs = x[:k]
                if any(c == 0 for c in coeffs):
                    raise _Degenerate("solution on a cone boundary")
                if any(c < 0 for c in coeffs):
                    continue
                pt = [Fraction(0)] * n
                for c, col in zip(coeffs[:M.rank - 1], cols):
                    for r in range(n):
                        if col[r]:
                            pt[r] += c
                shift = pt[eps]
                pt = tuple(p - shift for p in pt)
                if pt in points:
                    raise _Degenerate("two cone pairs meet in one point")
                mult = lattice_index(cols[:k] + [[1] * n, [1] * n])
                points[pt] = (i, j)
                mults.append(mult)
    return mults


def oracle_details(M: Matroid, N: Matroid, eps: int = 0, seed: Optional[int] = None,
                   retries: int = DEFAULT_RETRIES, shift=None) -> OracleResult:
    """Stable-intersection count with bookkeeping.

    ``shift`` (a GenericShift or a vector) fixes the first w tried; later
    attempts draw from ``seed``.
    """
    if isinstance(shift, GenericShift):
        seed, retries, shift = shift.seed, shift.retries, shift.w
    if M.n != N.n:
        raise GroundSetMismatch(f"ground sets differ: {M.n} vs {N.n}")
    n = M.n
    if M.loops_mask() or N.loops_mask():
        raise HasLoop("oracle needs loopless matroids")
    if M.rank + N.rank != n + 1:
        raise RankRegimeUnsupported(
            f"oracle needs r(M)+r(N) = n+1, got {M.rank}+{N.rank} with n={n}")
    if not 0 <= eps < n:
        raise IndexOutOfRange(f"eps={eps} outside ground set")
    cm, cn = maximal_chains(M), maximal_chains(N)
    am = _cone_arrays(cm, n, M.rank)
    an = _cone_arrays(cn, n, N.rank)
    rng = random.Random(seed)
    for attempt in range(retries + 1):
        if attempt == 0 and shift is not None:
            w = tuple(Fraction(x) for x in shift)
        else:
            w = sample_shift(n, rng)
        try:
            mults = _count_for_shift(M, N, eps, cm, cn, am, an, w)
        except _Degenerate:
            continue
        return OracleResult(sum(mults), eps, w, attempt + 1, mults)
    raise DegeneracyRetriesExhausted(f"no generic shift found in {retries + 1} attempts")


def oracle_flip(M: Matroid, N: Matroid, eps: int = 0, seed: Optional[int] = None,
                retries: int = DEFAULT_RETRIES) -> FlipValue:
    return FlipValue(oracle_details(M, N, eps, seed, retries).value)
