"""Command-line entry point: ``flipproduct <command> [args]``."""
import argparse
import json
import sys

from .checks import run_suite
from .descriptors import matroid_to_json, parse_gain_graph, parse_graph, parse_matroid
from .enumeration import (conjecture_scan, format_h_rows, format_self_rows, h_table,
                          self_product_table)
from .errors import ConsistencyError, InputError
from .flip import FlipConfig, FlipEngine, flip_zero_certificate, hadamard_matroid
from .gain import realisation_per, realisation_plane, realisation_sym
from .invariants import beta_direct, beta_via_flip, char_poly, mu_via_flip, nbc_count
from .tropical import oracle_details

EXIT_OK, EXIT_INPUT, EXIT_CONSISTENCY = 0, 2, 3


def _engine(args) -> FlipEngine:
    return FlipEngine(FlipConfig(pivot_rule=args.pivot_rule, memo_mode=args.memo))


def _pivot(args):
    p = getattr(args, "pivot", "auto")
    if p == "auto":
        return None
    try:
        return int(p)
    except ValueError:
        raise InputError(f"--pivot must be an index or 'auto', got {p!r}") from None


def _json_keys(table: dict) -> dict:
    return {str(k): v for k, v in table.items()}


def cmd_flip(args):
    M, N = parse_matroid(args.m), parse_matroid(args.n)
    v = _engine(args).flip(M, N, pivot=_pivot(args))
    out = {"value": v.to_json()}
    text = str(v)
    if v == 0 and args.certificate:
        cert = flip_zero_certificate(M, N)
        out["certificate"] = cert.describe() if cert else None
        if cert:
            text += f"\ncertificate: {cert.describe()}"
    return out, text


def cmd_beta(args):
    M = parse_matroid(args.matroid)
    b = beta_direct(M)
    out = {"beta": b}
    text = str(b)
    if args.epsilon is not None:
        v = beta_via_flip(M, args.epsilon, _engine(args))
        out["via_flip"] = v.to_json()
        text += f"\nvia flip (eps={args.epsilon}): {v}"
    return out, text


def cmd_nbc(args):
    M = parse_matroid(args.matroid)
    order = [int(x) for x in args.order.split(",")] if args.order else None
    c = nbc_count(M, order)
    return {"nbc": c}, str(c)


def cmd_charpoly(args):
    M = parse_matroid(args.matroid)
    cp = char_poly(M)
    out = {"coeffs": list(cp.coeffs), "reduced": list(cp.reduced), "mu": list(cp.mu)}
    if args.via_flip:
        eng = _engine(args)
        out["mu_via_flip"] = [mu_via_flip(M, k, eng).to_json() for k in range(M.rank)]
    text = "\n".join(f"{k}: {' '.join(str(x) for x in v)}" for k, v in out.items())
    return out, text


def cmd_hadamard(args):
    H = hadamard_matroid(parse_matroid(args.m), parse_matroid(args.n))
    desc = matroid_to_json(H)
    return desc, f"rank {H.rank}, {len(H.bases)} bases: {desc['bases']}"


def cmd_oracle(args):
    M, N = parse_matroid(args.m), parse_matroid(args.n)
    res = oracle_details(M, N, eps=args.epsilon or 0, seed=args.seed, retries=args.retries)
    out = {"value": res.value, "eps": res.eps, "attempts": res.attempts,
           "multiplicities": res.multiplicities, "shift": [str(x) for x in res.shift]}
    return out, f"{res.value}\n(eps={res.eps}, attempts={res.attempts})"


def cmd_c2(args):
    vertices, edges = parse_graph(args.graph)
    c = realisation_plane(vertices, edges, _engine(args))
    return {"c2": c}, str(c)


def cmd_csym(args):
    c = realisation_sym(parse_gain_graph(args.graph), _engine(args))
    return {"csym": c}, str(c)


def cmd_cper(args):
    c = realisation_per(parse_gain_graph(args.graph), _engine(args))
    return {"cper": c}, str(c)


def _rank_pairs(spec: str):
    pairs = []
    for tok in spec.split(","):
        try:
            a, b = tok.split(":")
            pairs.append((int(a), int(b)))
        except ValueError:
            raise InputError(f"bad rank pair {tok!r}; expected k1:k2") from None
    return pairs


def cmd_htable(args):
    from .enumeration import KNOWN_H_ROWS
    pairs = _rank_pairs(args.ranks) if args.ranks else sorted(KNOWN_H_ROWS)
    rows = {}
    for k1, k2 in pairs:
        rows[(k1, k2)] = h_table(k1, k2, jobs=args.jobs, engine=_engine(args), large=args.large)
    out = {f"{k1},{k2}": _json_keys(t) for (k1, k2), t in rows.items()}
    text = format_h_rows(rows)
    if args.conjecture:
        scans = {f"{k1},{k2}": conjecture_scan(k1, k2, table=rows[(k1, k2)])
                 for (k1, k2) in rows if k1 + k2 - 1 <= 5}
        out = {"tables": out, "conjecture": {
            k: {"clause1": s["clause1"], "clause2": s["clause2"], "violations": s["violations"]}
            for k, s in scans.items()}}
        for k, s in scans.items():
            text += f"\n({k}) clause 1: {s['clause1']}, clause 2: {s['clause2']}"
            for v in s["violations"]:
                text += f"\n  {v}"
    return out, text


def cmd_selftable(args):
    ns = [int(x) for x in args.n.split(",")] if args.n else [1, 3, 5]
    rows = {n: self_product_table(n, _engine(args), large=args.large) for n in ns}
    out = {str(n): _json_keys(t) for n, t in rows.items()}
    return out, format_self_rows(rows)


def cmd_check(args):
    results = run_suite(max_n=args.max_n, include_oracle=not args.skip_oracle,
                        progress=None if args.format == "json" else lambda r: print(r.line(), flush=True))
    out = {"passed": all(r.passed for r in results),
           "checks": [{"name": r.name, "passed": r.passed, "cases": r.cases,
                       "failures": r.failures} for r in results]}
    text = "all checks passed" if out["passed"] else "some checks FAILED"
    return out, text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--memo", choices=("exact", "iso"), default="exact")
    common.add_argument("--pivot", default="auto", help="ground-set index or 'auto'")
    common.add_argument("--pivot-rule", choices=("first", "min_branching"), default="first")

    # argparse exits with 2 on bad usage, which matches the input-error code
    p = argparse.ArgumentParser(prog="flipproduct", description="Flip products of matroids and related counts.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("flip", cmd_flip, "flip product M * N")
    sp.add_argument("m")
    sp.add_argument("n")
    sp.add_argument("--certificate", action="store_true", help="explain a zero result")

    sp = add("beta", cmd_beta, "beta invariant")
    sp.add_argument("matroid")
    sp.add_argument("--epsilon", type=int, help="also compute it through the flip product at this element")

    sp = add("nbc", cmd_nbc, "number of nbc bases")
    sp.add_argument("matroid")
    sp.add_argument("--order", help="comma-separated element order")

    sp = add("charpoly", cmd_charpoly, "characteristic polynomial")
    sp.add_argument("matroid")
    sp.add_argument("--via-flip", action="store_true", help="also compute mu_k through flip products")

    sp = add("hadamard", cmd_hadamard, "Hadamard product matroid")
    sp.add_argument("m")
    sp.add_argument("n")

    sp = add("oracle", cmd_oracle, "flip product by tropical stable intersection")
    sp.add_argument("m")
    sp.add_argument("n")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--epsilon", type=int, default=0)
    sp.add_argument("--retries", type=int, default=32)

    sp = add("c2", cmd_c2, "realisation number of a Laman graph")
    sp.add_argument("graph", help="graphic:u-v,... or a graphic JSON descriptor")

    sp = add("csym", cmd_csym, "realisation number of a rotation-symmetric Z_k gain graph")
    sp.add_argument("graph")

    sp = add("cper", cmd_cper, "realisation number of a periodic Z^d gain graph")
    sp.add_argument("graph")

    sp = add("htable", cmd_htable, "h_{k1,k2}(p) histograms")
    sp.add_argument("--ranks", help="comma-separated k1:k2 pairs; default all rows with n <= 5")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--large", action="store_true", help="allow n up to 7 (slow)")
    sp.add_argument("--conjecture", action="store_true", help="scan both conjecture clauses")

    sp = add("selftable", cmd_selftable, "histograms of M * M over iso classes")
    sp.add_argument("--n", help="comma-separated odd ground-set sizes; default 1,3,5")
    sp.add_argument("--large", action="store_true", help="allow n = 7 (minutes)")

    sp = add("check", cmd_check, "exhaustive property suite")
    sp.add_argument("--max-n", type=int, default=5)
    sp.add_argument("--skip-oracle", action="store_true")
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        out, text = args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    if args.format == "json":
        print(json.dumps(out, sort_keys=True))
    else:
        print(text)
    if args.command == "check" and not out["passed"]:
        return EXIT_CONSISTENCY
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
