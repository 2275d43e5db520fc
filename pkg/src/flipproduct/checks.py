"""Exhaustive and randomized property checks across all modules.

Each check returns a CheckResult; ``run_suite`` runs them in order. The CLI
``check`` command and the acceptance tests share these functions.
"""
import random
import time
from dataclasses import dataclass, field
from typing import Callable, List

from .enumeration import enumerate_matroids, relabel_images
from .flip import FlipConfig, FlipEngine, is_flip_positive
from .invariants import (beta_direct, beta_via_flip, char_poly, mu_via_flip,
                         nbc_count, nbc_flip_check)
from .matroid import (Matroid, circuit_hyperplane_relax, circuits,
                      from_matrix, is_flat, is_simple, iso_canonical_pair)
from .tropical import oracle_flip


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    seconds: float
    failures: List[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"; first failure: {self.failures[0]}" if self.failures else ""
        return f"{status} {self.name} ({self.cases} cases, {self.seconds:.1f}s){extra}"


class _Recorder:
    def __init__(self, name):
        self.name = name
        self.cases = 0
        self.failures = []
        self.start = time.perf_counter()

    def check(self, ok: bool, what: Callable[[], str]):
        self.cases += 1
        if not ok and len(self.failures) < 20:
            self.failures.append(what())

    def result(self) -> CheckResult:
        return CheckResult(self.name, not self.failures, self.cases,
                           time.perf_counter() - self.start, self.failures)


def reps_up_to(max_n: int, ranks=None):
    for n in range(max_n + 1):
        for r in range(n + 1):
            if ranks is None or r in ranks:
                yield from enumerate_matroids(n, r).reps


def labelled_images(n: int, r: int):
    """Every labelled rank-r matroid on range(n), from the iso-class reps."""
    out = []
    for N in enumerate_matroids(n, r).reps:
        out.extend(Matroid(n, b) for b in relabel_images(N))
    return out


def pair_orbits(max_n: int, balanced_only: bool = False):
    """(M, N) with M an iso-class rep and N any labelled matroid on the same ground set.

    Every pair of matroids is isomorphic to one of these.
    """
    for n in range(max_n + 1):
        for r1 in range(n + 1):
            for M in enumerate_matroids(n, r1).reps:
                r2_range = [n + 1 - r1] if balanced_only else range(n + 1)
                for r2 in r2_range:
                    if 0 <= r2 <= n:
                        for N in labelled_images(n, r2):
                            yield M, N


def _fmt(M: Matroid) -> str:
    return f"n={M.n} bases={list(M.bases)}"


def random_matroid(n: int, r: int, rng: random.Random, loopless: bool = True) -> Matroid:
    """Column matroid of a random small-integer r x n matrix of full rank."""
    while True:
        rows = [[rng.choice((0, 0, 1, 1, -1, 2)) for _ in range(n)] for _ in range(r)]
        M = from_matrix(rows, field="Q", orientation="columns") if r else Matroid(n, [0])
        if M.rank == r and (not loopless or not M.loops_mask()):
            return M


def check_symmetry(max_n: int = 5, random_pairs: int = 200, seed: int = 0) -> CheckResult:
    rec = _Recorder("flip symmetry")
    a, b = FlipEngine(), FlipEngine()
    for M, N in pair_orbits(max_n):
        x, y = a.flip(M, N), b.flip(N, M)
        rec.check(x == y, lambda: f"{_fmt(M)} vs {_fmt(N)}: {x} != {y}")
    rng = random.Random(seed)
    for _ in range(random_pairs):
        n = rng.randint(6, 8)
        r1 = rng.randint(1, n)
        M, N = random_matroid(n, r1, rng), random_matroid(n, n + 1 - r1, rng)
        x, y = a.flip(M, N), b.flip(N, M)
        rec.check(x == y, lambda: f"{_fmt(M)} vs {_fmt(N)}: {x} != {y}")
    return rec.result()


def check_pivot_independence(max_n: int = 5) -> CheckResult:
    rec = _Recorder("pivot independence")
    ref = FlipEngine()
    for M, N in pair_orbits(max_n, balanced_only=True):
        want = ref.flip(M, N)
        for p in range(M.n):
            got = FlipEngine().flip(M, N, pivot=p) if M.n <= 3 else ref.flip(M, N, pivot=p)
            rec.check(got == want, lambda: f"{_fmt(M)} x {_fmt(N)} pivot {p}: {got} != {want}")
    minb = FlipEngine(FlipConfig(pivot_rule="min_branching"))
    iso = FlipEngine(FlipConfig(memo_mode="iso"))
    for M, N in pair_orbits(min(max_n, 4), balanced_only=True):
        want = ref.flip(M, N)
        rec.check(minb.flip(M, N) == want and iso.flip(M, N) == want,
                  lambda: f"{_fmt(M)} x {_fmt(N)}: config-dependent value")
    return rec.result()


def check_loops_and_rank_gate(max_n: int = 5) -> CheckResult:
    rec = _Recorder("loop rule and rank gate")
    eng = FlipEngine()
    for M, N in pair_orbits(max_n):
        v = eng.flip(M, N)
        n = M.n
        total = M.rank + N.rank
        if n >= 1 and (M.loops_mask() or N.loops_mask()):
            rec.check(v == 0, lambda: f"loop pair {_fmt(M)} x {_fmt(N)} gave {v}")
        if n == 0:
            rec.check(v == 1, lambda: f"empty pair gave {v}")
        elif total < n + 1:
            rec.check(v == 0, lambda: f"rank-deficient pair gave {v}")
        elif total == n + 1:
            rec.check(not v.is_infinite, lambda: f"balanced pair gave {v}")
            rec.check((v > 0) == is_flip_positive(M, N),
                      lambda: f"positivity test disagrees for {_fmt(M)} x {_fmt(N)}")
        else:
            want_inf = is_flip_positive(M, N)
            rec.check(v.is_infinite == want_inf and (v.is_infinite or v == 0),
                      lambda: f"rank-excess pair {_fmt(M)} x {_fmt(N)} gave {v}")
    return rec.result()


def check_beta(max_n: int = 5, random_count: int = 100, seed: int = 1) -> CheckResult:
    rec = _Recorder("beta direct = beta via flip")
    eng = FlipEngine()
    mats = [M for M in reps_up_to(max_n) if M.n >= 2]
    rng = random.Random(seed)
    for _ in range(random_count):
        n = rng.choice((6, 7))
        mats.append(random_matroid(n, rng.randint(1, n - 1), rng, loopless=False))
    for M in mats:
        b = beta_direct(M)
        for e in range(M.n):
            v = beta_via_flip(M, e, eng)
            rec.check(v == b, lambda: f"{_fmt(M)} eps={e}: {v} != {b}")
    return rec.result()


def check_nbc(max_n: int = 5, orders: int = 10, seed: int = 2) -> CheckResult:
    rec = _Recorder("nbc order independence, nbc via flip, mu_{r-1} = nbc")
    eng = FlipEngine()
    rng = random.Random(seed)
    for M in reps_up_to(max_n):
        c = nbc_count(M)
        for _ in range(orders):
            order = list(range(M.n))
            rng.shuffle(order)
            c2 = nbc_count(M, order)
            rec.check(c2 == c, lambda: f"{_fmt(M)} order {order}: {c2} != {c}")
        v = nbc_flip_check(M, eng)
        rec.check(v == c, lambda: f"{_fmt(M)}: flip {v} != nbc {c}")
        if M.n >= 1 and M.rank >= 1:
            mu = char_poly(M).mu
            rec.check(mu[-1] == c, lambda: f"{_fmt(M)}: mu_(r-1) {mu[-1]} != nbc {c}")
    return rec.result()


def check_mu(max_n: int = 5) -> CheckResult:
    rec = _Recorder("mu via flip = mu from characteristic polynomial")
    eng = FlipEngine()
    for M in reps_up_to(max_n):
        if M.n == 0 or M.rank == 0 or not is_simple(M):
            continue
        mu = char_poly(M).mu
        for k in range(M.rank):
            v = mu_via_flip(M, k, eng)
            rec.check(v == mu[k], lambda: f"{_fmt(M)} k={k}: {v} != {mu[k]}")
    return rec.result()


def check_upper_bound(max_n: int = 5) -> CheckResult:
    rec = _Recorder("flip <= min(nbc(M), nbc(N))")
    eng = FlipEngine()
    nbc_cache = {}

    def nbc(M):
        if M not in nbc_cache:
            nbc_cache[M] = nbc_count(M)
        return nbc_cache[M]

    for M, N in pair_orbits(max_n, balanced_only=True):
        v = eng.flip(M, N)
        bound = min(nbc(M), nbc(N))
        rec.check(v <= bound, lambda: f"{_fmt(M)} x {_fmt(N)}: {v} > {bound}")
    return rec.result()


def circuit_hyperplanes(M: Matroid):
    return [c for c in circuits(M)
            if M.rank_of(c) == M.rank - 1 and is_flat(M, c)]


def check_relaxation(max_n: int = 5) -> CheckResult:
    rec = _Recorder("circuit-hyperplane relaxation is monotone")
    eng = FlipEngine()
    for M in reps_up_to(max_n):
        hyps = circuit_hyperplanes(M)
        if not hyps:
            continue
        n = M.n
        r2 = n + 1 - M.rank
        partners = labelled_images(n, r2) if 0 <= r2 <= n else []
        for X in hyps:
            R = circuit_hyperplane_relax(M, X)
            rec.check(R.rank == M.rank, lambda: f"relaxation changed rank of {_fmt(M)}")
            for N in partners:
                a, b = eng.flip(M, N), eng.flip(R, N)
                rec.check(a <= b, lambda: f"{_fmt(M)} relaxed at {X} with {_fmt(N)}: {a} > {b}")
    return rec.result()


def check_oracle(max_n: int = 5, random_pairs: int = 50, seed: int = 3) -> CheckResult:
    """Tropical oracle against the recursion on balanced loopless pairs."""
    rec = _Recorder("tropical oracle = recursion")
    eng = FlipEngine()
    seen = set()
    for M, N in pair_orbits(max_n, balanced_only=True):
        if M.n == 0 or M.loops_mask() or N.loops_mask():
            continue
        key = iso_canonical_pair(M, N)
        if key in seen:
            continue
        seen.add(key)
        want = eng.flip(M, N)
        got = oracle_flip(M, N, eps=0, seed=len(seen))
        rec.check(got == want, lambda: f"{_fmt(M)} x {_fmt(N)}: oracle {got} != recursion {want}")
    rng = random.Random(seed)
    for i in range(random_pairs):
        n = 6 + i % 2
        r1 = rng.randint(2, n - 1)
        M, N = random_matroid(n, r1, rng), random_matroid(n, n + 1 - r1, rng)
        want = eng.flip(M, N)
        got = oracle_flip(M, N, eps=rng.randrange(n), seed=rng.randrange(1 << 32))
        rec.check(got == want, lambda: f"{_fmt(M)} x {_fmt(N)}: oracle {got} != recursion {want}")
    return rec.result()


SUITE = [
    check_symmetry,
    check_pivot_independence,
    check_loops_and_rank_gate,
    check_beta,
    check_nbc,
    check_mu,
    check_upper_bound,
    check_relaxation,
]


def run_suite(max_n: int = 5, include_oracle: bool = False, progress=None) -> List[CheckResult]:
    checks = SUITE + ([check_oracle] if include_oracle else [])
    out = []
    for fn in checks:
        res = fn(max_n=max_n)
        out.append(res)
        if progress is not None:
            progress(res)
    return out
