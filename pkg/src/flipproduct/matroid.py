"""Matroids on ground sets {0..n-1}, stored as an explicit family of bases.

Subsets are int bitmasks throughout; public functions also accept any
iterable of element indices.
"""
from itertools import combinations

import numpy as np

from . import linalg
from ._bits import (MAX_GROUND, bits_of, compress, k_subsets, least_image, mask_of,
                    permute_mask, popcount, popcount_table, subset_max,
                    superset_or)
from .errors import (ExchangeAxiomViolated, IndexOutOfRange, InputError,
                     NotCircuitHyperplane, RankOutOfRange, SizeCapExceeded,
                     SubsetOutOfRange, UnequalBasisSizes)

ISO_GUARD = 7


class Matroid:
    """Immutable matroid. ``bases`` is a sorted tuple of int bitmasks."""

    __slots__ = ("n", "bases", "rank", "_basis_set", "_rank_table",
                 "_components", "_loops", "_coloops")

    def __init__(self, n: int, bases):
        self.n = n
        self.bases = tuple(sorted(bases))
        self.rank = popcount(self.bases[0])
        self._basis_set = None
        self._rank_table = None
        self._components = None
        self._loops = None
        self._coloops = None

    # equality is on the normalized basis family
    def __eq__(self, other):
        return isinstance(other, Matroid) and self.n == other.n and self.bases == other.bases

    def __hash__(self):
        return hash((self.n, self.bases))

    def __repr__(self):
        shown = [bits_of(b) for b in self.bases[:6]]
        more = "" if len(self.bases) <= 6 else ", ..."
        return f"Matroid(n={self.n}, rank={self.rank}, bases={shown}{more})"

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def basis_set(self) -> frozenset:
        if self._basis_set is None:
            self._basis_set = frozenset(self.bases)
        return self._basis_set

    def is_basis(self, s: int) -> bool:
        return s in self.basis_set

    def rank_table(self) -> np.ndarray:
        """Rank of every subset, indexed by bitmask."""
        if self._rank_table is None:
            n = self.n
            flags = np.zeros(1 << n, dtype=bool)
            flags[np.fromiter(self.bases, dtype=np.int64, count=len(self.bases))] = True
            indep = superset_or(flags, n)
            r = np.where(indep, popcount_table(n), 0).astype(np.int8)
            r = subset_max(r, n)
            r.setflags(write=False)
            self._rank_table = r
        return self._rank_table

    def rank_of(self, s: int) -> int:
        if self._rank_table is not None:
            return int(self._rank_table[s])
        return max(popcount(b & s) for b in self.bases)

    def is_independent(self, s: int) -> bool:
        k = popcount(s)
        return self.rank_of(s) == k

    def loops_mask(self) -> int:
        if self._loops is None:
            union = 0
            for b in self.bases:
                union |= b
            self._loops = self.full & ~union
        return self._loops

    def coloops_mask(self) -> int:
        if self._coloops is None:
            inter = self.full
            for b in self.bases:
                inter &= b
            self._coloops = inter
        return self._coloops

    def components(self):
        """Connected components as a list of masks.

        Built from the fundamental circuits of one basis: two elements share a
        component iff they are joined by a chain of fundamental circuits.
        """
        if self._components is None:
            parent = list(range(self.n))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            b0 = self.bases[0]
            bs = self.basis_set
            in_b = bits_of(b0)
            for e in range(self.n):
                if (b0 >> e) & 1:
                    continue
                for f in in_b:
                    if ((b0 & ~(1 << f)) | (1 << e)) in bs:
                        ra, rb = find(e), find(f)
                        if ra != rb:
                            parent[ra] = rb
            groups = {}
            for e in range(self.n):
                groups.setdefault(find(e), 0)
                groups[find(e)] |= 1 << e
            self._components = sorted(groups.values())
        return self._components


def _to_mask(s, n: int, err=SubsetOutOfRange) -> int:
    if isinstance(s, (int, np.integer)) and not isinstance(s, bool):
        m = int(s)
        if m < 0 or m >> n:
            raise err(f"subset mask {m:#x} outside ground set of size {n}")
        return m
    m = 0
    for e in s:
        e = int(e)
        if e < 0 or e >= n:
            raise err(f"element {e} outside ground set of size {n}")
        m |= 1 << e
    return m


def _check_n(n: int):
    if n < 0:
        raise InputError("ground set size must be nonnegative")
    if n > MAX_GROUND:
        raise SizeCapExceeded(f"ground set size {n} exceeds cap {MAX_GROUND}")


def find_exchange_violation(n: int, bases):
    """Return (B1, B2, x) breaking the exchange axiom, or None."""
    bs = set(bases)
    blist = sorted(bs)
    for b1 in blist:
        for b2 in blist:
            if b1 == b2:
                continue
            for x in bits_of(b1 & ~b2):
                base = b1 & ~(1 << x)
                if not any((base | (1 << y)) in bs for y in bits_of(b2 & ~b1)):
                    return b1, b2, x
    return None


def from_bases(n: int, bases, verify: bool = True) -> Matroid:
    _check_n(n)
    masks = {_to_mask(b, n, IndexOutOfRange) for b in bases}
    if not masks:
        raise InputError("basis family must be nonempty")
    sizes = {popcount(b) for b in masks}
    if len(sizes) != 1:
        raise UnequalBasisSizes(f"bases have sizes {sorted(sizes)}")
    if verify:
        bad = find_exchange_violation(n, masks)
        if bad is not None:
            b1, b2, x = bad
            raise ExchangeAxiomViolated(
                f"no exchange for x={x} from {bits_of(b1)} into {bits_of(b2)}")
    return Matroid(n, masks)


def uniform(n: int, r: int) -> Matroid:
    _check_n(n)
    if r < 0 or r > n:
        raise RankOutOfRange(f"rank {r} not in 0..{n}")
    return Matroid(n, k_subsets(n, r))


def _forest_rank(edges, vertices) -> int:
    parent = list(range(vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    r = 0
    for u, v in edges:
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            r += 1
    return r


def graphic(vertices: int, edges) -> Matroid:
    edges = [tuple(int(x) for x in e) for e in edges]
    _check_n(len(edges))
    for u, v in edges:
        if not (0 <= u < vertices and 0 <= v < vertices):
            raise IndexOutOfRange(f"edge ({u},{v}) has endpoint outside 0..{vertices - 1}")
    m = len(edges)
    r = _forest_rank(edges, vertices)
    bases = [mask_of(c) for c in combinations(range(m), r)
             if _forest_rank([edges[i] for i in c], vertices) == r]
    return Matroid(m, bases)


def from_matrix(entries, field: str = "Q", orientation: str = "columns", p: int = 2) -> Matroid:
    """Row or column matroid of a matrix over Q or F_p."""
    rows = [list(r) for r in entries]
    if not rows or not rows[0]:
        raise InputError("matrix must be nonempty")
    if any(len(r) != len(rows[0]) for r in rows):
        raise InputError("matrix rows have unequal length")
    if orientation == "columns":
        vectors = [list(c) for c in zip(*rows)]
    elif orientation == "rows":
        vectors = rows
    else:
        raise InputError(f"unknown orientation {orientation!r}")
    field = field.upper()
    if field == "Q":
        rank_fn = linalg.rank_rational
    elif field in ("F2", "FP"):
        if field == "F2":
            p = 2
        if p < 2 or p > 97 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise InputError(f"modulus {p} is not a supported prime")
        for v in vectors:
            for x in v:
                if int(x) != x or not 0 <= int(x) < p:
                    raise InputError(f"entry {x} is not a residue mod {p}")

        def rank_fn(vs):
            return linalg.rank_mod_p(vs, p)
    else:
        raise InputError(f"unknown field {field!r}")
    n = len(vectors)
    _check_n(n)
    r = rank_fn(vectors)
    bases = [mask_of(c) for c in combinations(range(n), r)
             if rank_fn([vectors[i] for i in c]) == r]
    return Matroid(n, bases)


def rank_of(M: Matroid, S) -> int:
    return M.rank_of(_to_mask(S, M.n))


def _survivors(n: int, removed: int):
    return [e for e in range(n) if not (removed >> e) & 1]


def delete(M: Matroid, S, return_map: bool = False):
    """M \\ S, re-indexed. With ``return_map`` also return the surviving old indices."""
    s = _to_mask(S, M.n)
    keep = M.full & ~s
    pos = _survivors(M.n, s)
    k = max(popcount(b & keep) for b in M.bases)
    bases = {compress(b & keep, pos) for b in M.bases if popcount(b & keep) == k}
    out = Matroid(len(pos), bases)
    return (out, pos) if return_map else out


def contract(M: Matroid, S, return_map: bool = False):
    """M / S, re-indexed. With ``return_map`` also return the surviving old indices."""
    s = _to_mask(S, M.n)
    keep = M.full & ~s
    pos = _survivors(M.n, s)
    k = max(popcount(b & s) for b in M.bases)
    bases = {compress(b & keep, pos) for b in M.bases if popcount(b & s) == k}
    out = Matroid(len(pos), bases)
    return (out, pos) if return_map else out


def restrict(M: Matroid, S) -> Matroid:
    s = _to_mask(S, M.n)
    return delete(M, M.full & ~s)


def dual(M: Matroid) -> Matroid:
    full = M.full
    return Matroid(M.n, [full & ~b for b in M.bases])


def direct_sum(M1: Matroid, M2: Matroid) -> Matroid:
    _check_n(M1.n + M2.n)
    sh = M1.n
    return Matroid(M1.n + M2.n, [a | (b << sh) for a in M1.bases for b in M2.bases])


def is_loop(M: Matroid, e: int) -> bool:
    _to_mask([e], M.n, IndexOutOfRange)
    return bool((M.loops_mask() >> e) & 1)


def is_coloop(M: Matroid, e: int) -> bool:
    _to_mask([e], M.n, IndexOutOfRange)
    return bool((M.coloops_mask() >> e) & 1)


def loops(M: Matroid) -> int:
    return M.loops_mask()


def coloops(M: Matroid) -> int:
    return M.coloops_mask()


def circuits(M: Matroid):
    """Inclusion-minimal dependent sets, as masks sorted by size then value."""
    rt = M.rank_table()
    out = []
    for k in range(1, min(M.rank + 1, M.n) + 1):
        for c in combinations(range(M.n), k):
            s = mask_of(c)
            if rt[s] == k - 1 and all(rt[s & ~(1 << e)] == k - 1 for e in c):
                out.append(s)
    return out


def closure(M: Matroid, S) -> int:
    s = _to_mask(S, M.n)
    r = M.rank_of(s)
    cl = s
    for e in range(M.n):
        if not (s >> e) & 1 and M.rank_of(s | (1 << e)) == r:
            cl |= 1 << e
    return cl


def is_flat(M: Matroid, S) -> bool:
    s = _to_mask(S, M.n)
    return closure(M, s) == s


def truncation(M: Matroid, k: int) -> Matroid:
    if k < 0 or k > M.rank:
        raise RankOutOfRange(f"truncation rank {k} not in 0..{M.rank}")
    if k == M.rank:
        return M
    bases = {mask_of(c) for b in M.bases for c in combinations(bits_of(b), k)}
    return Matroid(M.n, bases)


def circuit_hyperplane_relax(M: Matroid, X) -> Matroid:
    x = _to_mask(X, M.n)
    size = popcount(x)
    is_circuit = (M.rank_of(x) == size - 1
                  and all(M.rank_of(x & ~(1 << e)) == size - 1 for e in bits_of(x)))
    is_hyperplane = M.rank_of(x) == M.rank - 1 and is_flat(M, x)
    if not (is_circuit and is_hyperplane):
        raise NotCircuitHyperplane(f"{bits_of(x)} is not a circuit-hyperplane")
    return Matroid(M.n, M.bases + (x,))


def relabel(M: Matroid, perm) -> Matroid:
    """Image of M under the bijection e -> perm[e]."""
    return Matroid(M.n, [permute_mask(b, perm) for b in M.bases])


def _encode(n: int, bases) -> bytes:
    out = bytearray([n])
    for b in bases:
        out += b.to_bytes(3, "little")
    return bytes(out)


def canonical_key(M: Matroid, iso: bool = False) -> bytes:
    if not iso:
        return _encode(M.n, M.bases)
    return _encode(M.n, iso_canonical_bases(M))


def pair_key(M: Matroid, N: Matroid, iso: bool = False) -> bytes:
    if not iso:
        return canonical_key(M) + b"|" + canonical_key(N)
    bm, bn = iso_canonical_pair(M, N)
    return _encode(M.n, bm) + b"|" + _encode(N.n, bn)


def _iso_guard(n: int):
    if n > ISO_GUARD:
        raise SizeCapExceeded(f"isomorphism-canonical keys need n <= {ISO_GUARD}, got {n}")


def iso_canonical_bases(M: Matroid) -> tuple:
    """Lexicographically least sorted basis tuple over all relabelings."""
    _iso_guard(M.n)
    return least_image(M.n, M.bases)[0]


def iso_canonical_pair(M: Matroid, N: Matroid):
    """Least (bases of σM, bases of σN) over simultaneous relabelings σ."""
    _iso_guard(M.n)
    return least_image(M.n, M.bases, N.bases)


def is_simple(M: Matroid) -> bool:
    if M.loops_mask():
        return False
    for a in range(M.n):
        for b in range(a + 1, M.n):
            if M.rank_of((1 << a) | (1 << b)) < 2:
                return False
    return True


