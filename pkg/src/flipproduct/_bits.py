"""Bitmask helpers shared by the matroid and flip modules."""
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

MAX_GROUND = 24


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits_of(x: int):
    """Indices of set bits, ascending."""
    out = []
    i = 0
    while x:
        if x & 1:
            out.append(i)
        x >>= 1
        i += 1
    return out


def mask_of(elements) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def k_subsets(n: int, k: int):
    """All k-subsets of range(n) as masks, in lexicographic order of index tuples."""
    return [mask_of(c) for c in combinations(range(n), k)]


def compress(x: int, positions) -> int:
    """Pack the bits of ``x`` found at ``positions`` into consecutive low bits."""
    out = 0
    for i, p in enumerate(positions):
        if (x >> p) & 1:
            out |= 1 << i
    return out


def permute_mask(x: int, perm) -> int:
    """Send bit i of ``x`` to bit perm[i]."""
    out = 0
    i = 0
    while x:
        if x & 1:
            out |= 1 << perm[i]
        x >>= 1
        i += 1
    return out


@lru_cache(maxsize=None)
def perm_table(n: int) -> np.ndarray:
    """table[p, S] is the image of subset S under the p-th permutation of range(n)."""
    rows = list(permutations(range(n)))
    perms = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    subsets = np.arange(1 << n, dtype=np.int64)
    table = np.zeros((len(perms), 1 << n), dtype=np.int64)
    for e in range(n):
        table |= ((subsets >> e) & 1)[None, :] << perms[:, e:e + 1]
    table.setflags(write=False)
    return table


def least_image(n: int, *families) -> tuple:
    """Lexicographically least (sorted image of each family) over all relabelings."""
    table = perm_table(n)
    parts = [np.sort(table[:, np.asarray(f, dtype=np.int64)], axis=1) for f in families]
    imgs = np.concatenate(parts, axis=1)
    best = imgs[np.lexsort(imgs.T[::-1])[0]]
    out, i = [], 0
    for f in families:
        out.append(tuple(int(x) for x in best[i:i + len(f)]))
        i += len(f)
    return tuple(out)


@lru_cache(maxsize=None)
def popcount_table(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    counts = np.zeros(1 << n, dtype=np.int16)
    for e in range(n):
        counts += ((idx >> e) & 1).astype(np.int16)
    counts.setflags(write=False)
    return counts


def superset_or(flags: np.ndarray, n: int) -> np.ndarray:
    """flags[S] becomes True when any superset of S was flagged."""
    a = flags.copy()
    for e in range(n):
        v = a.reshape(-1, 2, 1 << e)
        v[:, 0, :] |= v[:, 1, :]
    return a


def subset_or(flags: np.ndarray, n: int) -> np.ndarray:
    """flags[S] becomes True when any subset of S was flagged."""
    a = flags.copy()
    for e in range(n):
        v = a.reshape(-1, 2, 1 << e)
        v[:, 1, :] |= v[:, 0, :]
    return a


def subset_max(values: np.ndarray, n: int) -> np.ndarray:
    a = values.copy()
    for e in range(n):
        v = a.reshape(-1, 2, 1 << e)
        np.maximum(v[:, 1, :], v[:, 0, :], out=v[:, 1, :])
    return a
