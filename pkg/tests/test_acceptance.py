"""Acceptance criteria, one test each.

Every test records a one-line PASS/FAIL verdict with its measured time;
the lines are printed in the pytest terminal summary. Time limits are part
of the verdict.

Set FLIPPRODUCT_SKIP_LARGE=1 to skip the n = 7 enumeration in criterion 11
(about three minutes).
"""
import os
import time
from math import comb


from flipproduct.checks import SUITE, check_oracle
from flipproduct.enumeration import (KNOWN_H_ROWS, KNOWN_H_ROWS_LARGE, KNOWN_SELF_ROW_7,
                                     KNOWN_SELF_ROWS, conjecture_scan, h_table,
                                     self_product_table)
from flipproduct.flip import FlipEngine
from flipproduct.gain import z4_rotation_graph, is_min_rotation_rigid, realisation_sym
from flipproduct.matroid import from_matrix, graphic, uniform

from conftest import ACCEPTANCE, BINARY7_ROWS, GLUED_EDGES, MOVED_EDGES

_tables = {}


def verdict(num, ok, seconds, limit, what):
    passed = bool(ok) and seconds < limit
    ACCEPTANCE[num] = (passed, f"{what} ({seconds:.3f}s, limit {limit:g}s)")
    print(f"criterion {num}: {'PASS' if passed else 'FAIL'} {what} ({seconds:.3f}s, limit {limit:g}s)")
    assert ok, what
    assert seconds < limit, f"took {seconds:.3f}s, limit {limit}s"


def test_criterion_01_single_element_base_cases():
    one, zero = uniform(1, 1), uniform(1, 0)
    eng = FlipEngine()
    t = time.perf_counter()
    vals = {(a, b): eng.flip(x, y) for a, x in (("U11", one), ("U10", zero))
            for b, y in (("U11", one), ("U10", zero))}
    dt = time.perf_counter() - t
    ok = vals[("U11", "U11")] == 1 and all(v == 0 for k, v in vals.items() if k != ("U11", "U11"))
    verdict(1, ok, dt, 1e-3, f"1-element pairs {dict((k, str(v)) for k, v in vals.items())}")


def test_criterion_02_figure_graph_pairs():
    t = time.perf_counter()
    g, g2 = graphic(6, GLUED_EDGES), graphic(6, MOVED_EDGES)
    a, b = FlipEngine().flip(g, g), FlipEngine().flip(g2, g2)
    dt = time.perf_counter() - t
    verdict(2, a == 0 and b == 16, dt, 1.0, f"glued K4/C4 graph {a}, moved-edge graph {b}")


def test_criterion_03_uniform_closed_form():
    eng = FlipEngine()
    bad = []
    t = time.perf_counter()
    for n in range(1, 11):
        for r in range(1, n + 1):
            v = eng.flip(uniform(n, r), uniform(n, n - r + 1))
            if v != comb(n - 1, r - 1):
                bad.append((n, r, str(v)))
    dt = time.perf_counter() - t
    verdict(3, not bad, dt, 60.0, f"U(n,r) * U(n,n-r+1) = C(n-1,r-1) for 1<=r<=n<=10; mismatches {bad}")


def test_criterion_04_self_product_tables():
    t = time.perf_counter()
    got = {n: self_product_table(n) for n in (1, 3, 5)}
    dt = time.perf_counter() - t
    verdict(4, got == KNOWN_SELF_ROWS, dt, 300.0, f"self-product histograms {got}")


def _h_rows():
    if not _tables:
        eng = FlipEngine()
        for k in KNOWN_H_ROWS:
            _tables[k] = h_table(*k, engine=eng)
    return _tables


def test_criterion_05_h_table_rows_up_to_n5():
    t = time.perf_counter()
    rows = _h_rows()
    dt = time.perf_counter() - t
    bad = [k for k, want in KNOWN_H_ROWS.items()
           if [rows[k].get(p, 0) for p in range(len(want))] != want or not set(rows[k]) <= set(range(len(want)))]
    verdict(5, not bad, dt, 7200.0, f"9 h-table rows, (3,3) = {list(rows[(3, 3)].values())}; mismatched {bad}")


def test_criterion_06_binary_example():
    t = time.perf_counter()
    M = from_matrix(BINARY7_ROWS, field="F2")
    v = FlipEngine().flip(M, M)
    dt = time.perf_counter() - t
    verdict(6, M.rank == 4 and M.n == 7 and v == 6, dt, 30.0,
            f"binary matrix matroid rank {M.rank} on {M.n}, M * M = {v}")


def test_criterion_07_rotation_example():
    t = time.perf_counter()
    G = z4_rotation_graph()
    rigid = is_min_rotation_rigid(G)
    c = realisation_sym(G)
    dt = time.perf_counter() - t
    verdict(7, rigid and c == 6, dt, 1.0, f"Z_4 graph: minimally rotation rigid {rigid}, csym = {c}")


def test_criterion_08_oracle_equivalence():
    t = time.perf_counter()
    res = check_oracle(max_n=5, random_pairs=50)
    dt = time.perf_counter() - t
    verdict(8, res.passed, dt, 1800.0, f"{res.cases} pairs (n<=5 up to iso, 50 random n=6,7); failures {res.failures[:3]}")


def test_criterion_09_invariant_suite():
    t = time.perf_counter()
    results = [fn(max_n=5) for fn in SUITE]
    dt = time.perf_counter() - t
    for r in results:
        print("   ", r.line())
    summary = "; ".join(f"{r.name}: {r.cases}" for r in results)
    failed = [r.line() for r in results if not r.passed]
    verdict(9, not failed, dt, 1800.0, f"{len(results)} properties [{summary}]; failed {failed}")


def test_criterion_10_conjecture_scan():
    t = time.perf_counter()
    rows = _h_rows()
    scans = {k: conjecture_scan(*k, table=rows[k]) for k in rows}
    dt = time.perf_counter() - t
    bad = {k: s["violations"] for k, s in scans.items() if s["violations"]
           or s["clause1"] is False or s["clause2"] is False}
    applied = sum(1 for s in scans.values() if s["clause2"] is not None)
    guards_ok = scans[(1, 1)]["clause1"] is None and scans[(1, 1)]["clause2"] is None
    verdict(10, not bad and guards_ok, dt, 7200.0,
            f"both clauses hold on {len(scans)} rows ({applied} with n >= 3); violations {bad}")


def test_criterion_11_beyond_desk_scale():
    """Rows listed as out of reach, reproduced where the enumerator allows.

    The n = 6 and n = 7 table rows and the (7,4) self-product row come from
    the opt-in ``large`` enumeration. Real realisations and Hadamard-fibre
    counts need numerical algebraic geometry and stay covered by criteria
    6 to 9.
    """
    t = time.perf_counter()
    eng = FlipEngine()
    ks = [k for k in KNOWN_H_ROWS_LARGE if sum(k) - 1 == 6]
    skip_large = os.environ.get("FLIPPRODUCT_SKIP_LARGE") == "1"
    if not skip_large:
        ks += [k for k in KNOWN_H_ROWS_LARGE if sum(k) - 1 == 7]
    bad = []
    for k in ks:
        row = h_table(*k, engine=eng, large=True)
        if [row.get(p, 0) for p in range(len(KNOWN_H_ROWS_LARGE[k]))] != KNOWN_H_ROWS_LARGE[k]:
            bad.append(k)
    self7 = None
    if not skip_large:
        self7 = self_product_table(7, engine=eng, large=True)
        if self7 != KNOWN_SELF_ROW_7:
            bad.append("self 7")
    dt = time.perf_counter() - t
    verdict(11, not bad, dt, 3600.0,
            f"h rows {ks} and (7,4) self row {'skipped' if skip_large else 'checked'}; "
            f"mismatched {bad}; realisations over R and fibre counts not attempted")
