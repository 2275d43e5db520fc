"""Flip product M * N by the deletion-contraction recursion.

The recursion sums over splittings E = E1 u E2 with E1 n E2 = {pivot}; only
splittings whose two minor pairs are themselves rank-balanced contribute.
Zero rules (loops, shared coloops, common separators) and coloop removal are
applied before branching.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._bits import bits_of, popcount_table, subset_or
from .errors import GroundSetMismatch, InputError
from .matroid import (ISO_GUARD, Matroid, contract, delete,
                      iso_canonical_pair)


class FlipValue:
    """A nonnegative integer or infinity, with 0 * inf = 0."""

    __slots__ = ("_v",)

    def __init__(self, value: Optional[int]):
        if value is not None:
            value = int(value)
            if value < 0:
                raise ValueError("flip values are nonnegative")
        self._v = value

    @classmethod
    def coerce(cls, x):
        return x if isinstance(x, FlipValue) else cls(x)

    @property
    def is_infinite(self) -> bool:
        return self._v is None

    @property
    def value(self) -> Optional[int]:
        """The integer value, or None when infinite."""
        return self._v

    def __int__(self):
        if self._v is None:
            raise OverflowError("infinite flip value")
        return self._v

    def __index__(self):
        return self.__int__()

    def __mul__(self, other):
        other = FlipValue.coerce(other)
        if self._v == 0 or other._v == 0:
            return FlipValue(0)
        if self._v is None or other._v is None:
            return INFINITE
        return FlipValue(self._v * other._v)

    __rmul__ = __mul__

    def __add__(self, other):
        other = FlipValue.coerce(other)
        if self._v is None or other._v is None:
            return INFINITE
        return FlipValue(self._v + other._v)

    __radd__ = __add__

    def _cmp_key(self):
        return (1, 0) if self._v is None else (0, self._v)

    def __eq__(self, other):
        if isinstance(other, (int, FlipValue)) and not isinstance(other, bool):
            return self._cmp_key() == FlipValue.coerce(other)._cmp_key()
        return NotImplemented

    def __lt__(self, other):
        return self._cmp_key() < FlipValue.coerce(other)._cmp_key()

    def __le__(self, other):
        return self._cmp_key() <= FlipValue.coerce(other)._cmp_key()

    def __gt__(self, other):
        return self._cmp_key() > FlipValue.coerce(other)._cmp_key()

    def __ge__(self, other):
        return self._cmp_key() >= FlipValue.coerce(other)._cmp_key()

    def __hash__(self):
        return hash(self._cmp_key())

    def __repr__(self):
        return "Infinite" if self._v is None else f"Finite({self._v})"

    def __str__(self):
        return "inf" if self._v is None else str(self._v)

    def to_json(self):
        return "inf" if self._v is None else self._v


INFINITE = FlipValue(None)

PIVOT_RULES = ("first", "min_branching")
MEMO_MODES = ("exact", "iso", "none")


@dataclass(frozen=True)
class FlipConfig:
    pivot_rule: str = "first"
    memo_mode: str = "exact"
    parallel_width: int = 1

    def __post_init__(self):
        if self.pivot_rule not in PIVOT_RULES:
            raise InputError(f"pivot rule must be one of {PIVOT_RULES}")
        if self.memo_mode not in MEMO_MODES:
            raise InputError(f"memo mode must be one of {MEMO_MODES}")
        if self.parallel_width < 1:
            raise InputError("parallel width must be at least 1")


def _check_pair(M: Matroid, N: Matroid):
    if M.n != N.n:
        raise GroundSetMismatch(f"ground sets differ: {M.n} vs {N.n}")


def _good_table(M: Matroid, N: Matroid) -> np.ndarray:
    """good[F] is True when r_M(F) + r_N(F) >= |F| + 1 (F nonempty)."""
    rs = M.rank_table().astype(np.int16) + N.rank_table().astype(np.int16)
    good = rs >= popcount_table(M.n) + 1
    good[0] = True
    return good


def hadamard_matroid(M: Matroid, N: Matroid) -> Matroid:
    """M (.) N: F is independent when every nonempty subset of F is good."""
    _check_pair(M, N)
    n = M.n
    bad = ~_good_table(M, N)
    indep = ~subset_or(bad, n)
    sizes = popcount_table(n)
    k = int(sizes[indep].max())
    idx = np.nonzero(indep & (sizes == k))[0]
    return Matroid(n, (int(i) for i in idx))


def is_flip_positive(M: Matroid, N: Matroid) -> bool:
    _check_pair(M, N)
    if M.loops_mask() or N.loops_mask():
        return False
    return bool(_good_table(M, N).all())


@dataclass(frozen=True)
class ZeroCertificate:
    kind: str  # "loop", "rank_deficit", "shared_coloop" or "bad_subset"
    subset: int = 0

    def describe(self) -> str:
        if self.kind == "bad_subset":
            return f"bad_subset {bits_of(self.subset)}"
        if self.kind in ("loop", "shared_coloop"):
            return f"{self.kind} {bits_of(self.subset)[0]}"
        return self.kind


def flip_zero_certificate(M: Matroid, N: Matroid) -> Optional[ZeroCertificate]:
    """First witness that M * N = 0, or None when the product is positive."""
    _check_pair(M, N)
    n = M.n
    lp = M.loops_mask() | N.loops_mask()
    if lp:
        return ZeroCertificate("loop", lp & -lp)
    if n == 0:
        return None
    if M.rank + N.rank < n + 1:
        return ZeroCertificate("rank_deficit")
    shared = M.coloops_mask() & N.coloops_mask()
    if shared and n >= 2:
        return ZeroCertificate("shared_coloop", shared & -shared)
    good = _good_table(M, N)
    if good.all():
        return None
    bad = np.nonzero(~good)[0]
    sizes = popcount_table(n)[bad]
    best = bad[np.lexsort((bad, sizes))[0]]
    return ZeroCertificate("bad_subset", int(best))


class FlipEngine:
    """Memoizing evaluator. Reuse one engine across many queries to share the memo."""

    def __init__(self, config: Optional[FlipConfig] = None):
        self.config = config or FlipConfig()
        self.memo = {}
        self.calls = 0
        self.hits = 0

    def flip(self, M: Matroid, N: Matroid, pivot: Optional[int] = None) -> FlipValue:
        """M * N. ``pivot`` forces the top-level branching element."""
        _check_pair(M, N)
        n = M.n
        if pivot is not None and not 0 <= pivot < n:
            raise InputError(f"pivot {pivot} outside ground set")
        if n == 0:
            return FlipValue(1)
        if n == 1:
            return FlipValue(1 if M.rank == 1 and N.rank == 1 else 0)
        if M.loops_mask() or N.loops_mask():
            return FlipValue(0)
        total = M.rank + N.rank
        if total < n + 1:
            return FlipValue(0)
        if total > n + 1:
            return INFINITE if is_flip_positive(M, N) else FlipValue(0)
        return FlipValue(self._balanced(M, N, pivot))

    # -- recursion on rank-balanced pairs: r(M) + r(N) = n + 1 -------------

    def _key(self, M: Matroid, N: Matroid):
        mode = self.config.memo_mode
        if mode == "iso" and M.n <= ISO_GUARD:
            a = iso_canonical_pair(M, N)
            b = iso_canonical_pair(N, M)
            return (M.n,) + min(a, b)
        if M.bases <= N.bases:
            return (M.n, M.bases, N.bases)
        return (M.n, N.bases, M.bases)

    def _balanced(self, M: Matroid, N: Matroid, forced_pivot=None) -> int:
        self.calls += 1
        n = M.n
        if n <= 1:
            if n == 0:
                return 1
            return 1 if M.rank == 1 and N.rank == 1 else 0
        if M.loops_mask() or N.loops_mask():
            return 0
        total = M.rank + N.rank
        if total < n + 1:
            return 0
        if total > n + 1:
            # cannot happen for minors selected by the pruning equalities
            raise AssertionError("unbalanced pair reached the recursion")
        use_memo = self.config.memo_mode != "none" and forced_pivot is None
        if use_memo:
            key = self._key(M, N)
            hit = self.memo.get(key)
            if hit is not None:
                self.hits += 1
                return hit
        value = self._compute(M, N, forced_pivot)
        if use_memo:
            self.memo[key] = value
        return value

    def _compute(self, M: Matroid, N: Matroid, forced_pivot) -> int:
        n = M.n
        cm, cn = M.coloops_mask(), N.coloops_mask()
        if cm & cn:
            return 0
        if _has_common_separator(M, N):
            return 0
        single = cm ^ cn
        if single:
            # coloop of exactly one side; loopless, so not a loop of the other
            e = (single & -single).bit_length() - 1
            return self._balanced(delete(M, 1 << e), delete(N, 1 << e))
        splits = _valid_splits(M, N)
        if forced_pivot is not None:
            pivot = forced_pivot
        elif self.config.pivot_rule == "min_branching":
            pivot = min(range(n), key=lambda e: (len(splits(e)), e))
        else:
            pivot = 0
        total = 0
        for s in splits(pivot):
            e1 = s | (1 << pivot)
            e2 = (M.full & ~s)
            first = self._balanced(contract(M, e1), delete(N, e1))
            if first == 0:
                continue
            second = self._balanced(delete(M, e2), contract(N, e2))
            total += first * second
        return total


def _has_common_separator(M: Matroid, N: Matroid) -> bool:
    comps = list(M.components())
    if len(comps) == 1 and len(N.components()) == 1:
        return False
    # join of the two component partitions
    merged = []
    for c in comps + list(N.components()):
        overlapping = [m for m in merged if m & c]
        for m in overlapping:
            merged.remove(m)
            c |= m
        merged.append(c)
    return len(merged) > 1


def _valid_splits(M: Matroid, N: Matroid):
    """Return pivot -> array of S (subsets avoiding the pivot) whose split passes.

    E1 = S + pivot and E2 = complement of S. The endpoints S = empty and
    S = E - pivot are the two singleton terms and are always kept.
    """
    n = M.n
    full = M.full
    rm = M.rank_table().astype(np.int16)
    rn = N.rank_table().astype(np.int16)
    pc = popcount_table(n).astype(np.int16)
    idx = np.arange(1 << n, dtype=np.int64)
    cache = {}

    def splits(pivot):
        if pivot in cache:
            return cache[pivot]
        pb = 1 << pivot
        s = idx[(idx & pb) == 0]
        e1 = s | pb
        e2 = full ^ s
        size1 = pc[s] + 1
        size2 = n - pc[s]
        cond1 = (M.rank - rm[e1] + rn[full ^ e1]) == (n - size1 + 1)
        cond2 = (rm[s] + N.rank - rn[e2]) == (n - size2 + 1)
        keep = cond1 & cond2 & (size1 >= 2) & (size2 >= 2)
        keep[0] = True
        keep[-1] = True
        out = [int(x) for x in s[keep]]
        cache[pivot] = out
        return out

    return splits


_DEFAULT_ENGINE = None


def default_engine() -> FlipEngine:
    global _DEFAULT_ENGINE
    if _DEFAULT_ENGINE is None:
        _DEFAULT_ENGINE = FlipEngine()
    return _DEFAULT_ENGINE


def flip_product(M: Matroid, N: Matroid, config: Optional[FlipConfig] = None,
                 pivot: Optional[int] = None) -> FlipValue:
    """M * N. With no config, a process-wide engine and memo are reused."""
    if config is None:
        return default_engine().flip(M, N, pivot)
    return FlipEngine(config).flip(M, N, pivot)


__all__ = [
    "FlipValue", "INFINITE", "FlipConfig", "FlipEngine", "ZeroCertificate",
    "flip_product", "hadamard_matroid", "is_flip_positive",
    "flip_zero_certificate",
]
