"""Matroids on at most six elements (seven on request) up to isomorphism, and flip-product tables."""
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Optional

import numpy as np

from ._bits import bits_of, k_subsets, least_image, perm_table, popcount
from .errors import InputError, SizeCapExceeded
from .flip import FlipEngine, FlipValue
from .matroid import Matroid

MAX_ENUM = 6
MAX_ENUM_LARGE = 7  # opt-in; rank 3 and 4 at n = 7 take minutes


@dataclass(frozen=True)
class IsoClassSet:
    n: int
    r: int
    reps: tuple
    labelled: int   # number of labelled matroids found by the search

    def __len__(self):
        return len(self.reps)


def canonical_form(n: int, bases) -> tuple:
    """Least sorted basis tuple over all relabelings."""
    return least_image(n, list(bases))[0]


def _limit(large: bool) -> int:
    return MAX_ENUM_LARGE if large else MAX_ENUM


def labelled_matroids(n: int, r: int, large: bool = False):
    """All basis families on range(n) of rank r, as sorted tuples of masks.

    Depth-first over the r-subsets in order, deciding in or out for each.
    A partial family is abandoned as soon as some chosen pair (B1, B2) and
    some x in B1 - B2 has every exchange candidate B1 - x + y already
    decided out.
    """
    if n > _limit(large):
        raise SizeCapExceeded(f"enumeration is limited to n <= {_limit(large)}")
    if not 0 <= r <= n:
        raise InputError(f"rank {r} not in 0..{n}")
    cands = k_subsets(n, r)
    index = {s: i for i, s in enumerate(cands)}
    m = len(cands)
    status = [0] * m   # 1 in, -1 out, 0 undecided
    chosen = []
    out = []

    def exchange_ok(b1, b2, x):
        base = b1 & ~(1 << x)
        for y in bits_of(b2 & ~b1):
            if status[index[base | (1 << y)]] >= 0:
                return True
        return False

    def pair_ok(b1, b2):
        return all(exchange_ok(b1, b2, x) for x in bits_of(b1 & ~b2))

    def include_ok(i):
        s = cands[i]
        return all(pair_ok(s, b) and pair_ok(b, s) for b in chosen)

    def exclude_ok(i):
        s = cands[i]
        for b1 in chosen:
            if popcount(b1 & s) != r - 1:
                continue
            x = (b1 & ~s).bit_length() - 1
            y = s & ~b1
            for b2 in chosen:
                if b2 & y and not (b2 >> x) & 1 and not exchange_ok(b1, b2, x):
                    return False
        return True

    def dfs(i):
        if i == m:
            if chosen:
                out.append(tuple(chosen))
            return
        status[i] = 1
        if include_ok(i):
            chosen.append(cands[i])
            dfs(i + 1)
            chosen.pop()
        status[i] = -1
        if exclude_ok(i):
            dfs(i + 1)
        status[i] = 0

    dfs(0)
    return out


@lru_cache(maxsize=None)
def enumerate_matroids(n: int, r: int, large: bool = False) -> IsoClassSet:
    """One representative per isomorphism class of rank-r matroids on range(n).

    ``large`` lifts the size cap from 6 to 7.
    """
    if n > _limit(large):
        raise SizeCapExceeded(f"enumeration is limited to n <= {_limit(large)}")
    if n < 0:
        raise InputError("n must be nonnegative")
    if r > n // 2 and n > MAX_ENUM:
        # duality halves the work for the largest cases
        low = enumerate_matroids(n, n - r, large)
        classes = sorted(canonical_form(n, [((1 << n) - 1) & ~b for b in M.bases]) for M in low.reps)
        return IsoClassSet(n, r, tuple(Matroid(n, fam) for fam in classes), low.labelled)
    found = labelled_matroids(n, r, large)
    classes = sorted({canonical_form(n, fam) for fam in found})
    reps = tuple(Matroid(n, fam) for fam in classes)
    return IsoClassSet(n, r, reps, len(found))


def all_matroids(max_n: int):
    """Iso-class representatives for every 0 <= r <= n <= max_n."""
    for n in range(max_n + 1):
        for r in range(n + 1):
            yield from enumerate_matroids(n, r).reps


def relabel_images(N: Matroid) -> Counter:
    """Counter of the distinct images sigma(N), weighted by how many sigma give each."""
    table = perm_table(N.n)
    imgs = np.sort(table[:, np.asarray(N.bases, dtype=np.int64)], axis=1)
    return Counter(tuple(int(x) for x in row) for row in imgs)


def _h_partial(args):
    reps_m, images, config = args
    engine = FlipEngine(config) if config is not None else FlipEngine()
    hist = Counter()
    for M in reps_m:
        for bases, mult in images:
            v = engine.flip(M, Matroid(M.n, bases))
            hist[_key(v)] += mult
    return hist


def _key(v: FlipValue):
    return "inf" if v.is_infinite else int(v)


def _check_ranks(k1: int, k2: int, limit: int) -> int:
    if k1 < 1 or k2 < 1:
        raise InputError("ranks must be positive")
    n = k1 + k2 - 1
    if n > limit:
        raise SizeCapExceeded(f"n = {n} exceeds the limit {limit}")
    return n


def h_table(k1: int, k2: int, jobs: int = 1, engine: Optional[FlipEngine] = None,
            large: bool = False) -> dict:
    """p -> number of triples (M, N, sigma) with M * sigma(N) = p.

    M and N run over iso-class representatives of ranks k1 and k2 on
    n = k1 + k2 - 1 elements, sigma over all n! permutations.
    """
    n = _check_ranks(k1, k2, _limit(large))
    reps_m = enumerate_matroids(n, k1, large).reps
    images = Counter()
    for N in enumerate_matroids(n, k2, large).reps:
        images.update(relabel_images(N))
    images = sorted(images.items())
    hist = Counter()
    if jobs > 1 and len(reps_m) > 1:
        chunks = [reps_m[i::jobs] for i in range(jobs)]
        config = engine.config if engine is not None else None
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_h_partial, [(c, images, config) for c in chunks if c]):
                hist.update(part)
    else:
        engine = engine or FlipEngine()
        for M in reps_m:
            for bases, mult in images:
                hist[_key(engine.flip(M, Matroid(n, bases)))] += mult
    return dict(sorted(hist.items()))


def self_product_table(n: int, engine: Optional[FlipEngine] = None, large: bool = False) -> dict:
    """p -> number of iso classes of rank (n+1)/2 matroids on n elements with M * M = p.

    n is 1, 3 or 5; with ``large`` also 7.
    """
    if n % 2 == 0 or n < 1:
        raise InputError("self product tables need odd n")
    if n > (7 if large else 5):
        raise SizeCapExceeded(f"self product tables are limited to n <= {7 if large else 5}")
    engine = engine or FlipEngine()
    k = (n + 1) // 2
    hist = Counter(_key(engine.flip(M, M)) for M in enumerate_matroids(n, k, large).reps)
    return dict(sorted(hist.items()))


def conjecture_scan(k1: int, k2: int, table: Optional[dict] = None, jobs: int = 1) -> dict:
    """Check both clauses of the h-table conjecture on the computed table.

    Clause 1 (n >= 2): h(p) >= 1 for every 0 <= p <= C(n-1, k1-1).
    Clause 2 (n >= 3): for 0 <= p <= C(n-1, k1-1), h(p) <= n! exactly when
    p is that maximum. None marks a clause that does not apply.
    """
    n = _check_ranks(k1, k2, 5)
    if table is None:
        table = h_table(k1, k2, jobs=jobs)
    top = comb(n - 1, k1 - 1)
    violations = []
    clause1 = None
    if n >= 2:
        missing = [p for p in range(top + 1) if table.get(p, 0) < 1]
        clause1 = not missing
        violations += [f"h({p}) = 0" for p in missing]
    clause2 = None
    if n >= 3:
        bad = [p for p in range(top + 1) if (table.get(p, 0) <= factorial(n)) != (p == top)]
        clause2 = not bad
        violations += [f"h({p}) = {table.get(p, 0)} breaks the n! threshold" for p in bad]
    beyond = [p for p in table if p == "inf" or p > top]
    violations += [f"value {p} exceeds the uniform product {top}" for p in beyond]
    return {"k1": k1, "k2": k2, "n": n, "max_p": top, "table": table,
            "clause1": clause1, "clause2": clause2, "violations": violations}


# reference histograms: h values for p = 0, 1, 2, ...
KNOWN_H_ROWS = {
    (1, 1): [0, 1],
    (1, 2): [2, 2],
    (1, 3): [12, 6],
    (2, 2): [32, 16, 6],
    (1, 4): [72, 24],
    (2, 3): [414, 174, 60, 24],
    (1, 5): [480, 120],
    (2, 4): [5208, 1416, 768, 288, 120],
    (3, 3): [11724, 3864, 2596, 1192, 508, 276, 120],
}

# rows beyond the n <= 5 range, reproducible with the ``large`` mode
KNOWN_H_ROWS_LARGE = {
    (1, 6): [3600, 720],
    (2, 5): [66624, 16296, 9792, 4248, 1680, 720],
    (3, 4): [335160, 85116, 78172, 51624, 32808, 18128, 14372, 7772, 3824, 1584, 720],
    (1, 7): [30240, 5040],
    (2, 6): [916704, 163152, 119376, 61488, 28080, 11520, 5040],
}

KNOWN_SELF_ROWS = {
    1: {1: 1},
    3: {0: 2, 2: 1},
    5: {0: 10, 4: 2, 6: 1},
}

KNOWN_SELF_ROW_7 = {0: 71, 6: 1, 8: 15, 10: 1, 12: 12, 14: 3, 16: 2, 18: 2, 20: 1}


def format_h_rows(rows: dict) -> str:
    """Text table with one row per (k1, k2), columns p = 0, 1, 2, ..."""
    width = max((max(t) for t in rows.values() if t), default=0) + 1
    header = f"{'n':>2} {'(k1,k2)':>8} |" + "".join(f"{p:>8}" for p in range(width))
    lines = [header, "-" * len(header)]
    last_n = None
    for (k1, k2), t in sorted(rows.items(), key=lambda kv: (sum(kv[0]), kv[0])):
        n = k1 + k2 - 1
        label = f"{n:>2}" if n != last_n else "  "
        last_n = n
        top = max(t) if t else -1
        cells = "".join(f"{t.get(p, 0):>8}" if p <= top else " " * 8 for p in range(width))
        lines.append(f"{label} {f'({k1},{k2})':>8} |" + cells.rstrip())
    return "\n".join(lines)


def format_self_rows(rows: dict) -> str:
    """Text table with one row per (n, k); columns p = 0, 1 and then even p."""
    top = max((max(t) for t in rows.values() if t), default=0)
    cols = [p for p in range(top + 1) if p <= 1 or p % 2 == 0]
    header = f"{'(n,k)':>7} |" + "".join(f"{p:>6}" for p in cols)
    lines = [header, "-" * len(header)]
    for n, t in sorted(rows.items()):
        k = (n + 1) // 2
        last = max(t)
        cells = "".join(f"{t.get(p, 0):>6}" for p in cols if p <= last)
        lines.append(f"{f'({n},{k})':>7} |" + cells)
    return "\n".join(lines)
