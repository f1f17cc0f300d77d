"""Command-line front end: ``symprod <subcommand> [flags]``.

Every subcommand draws its randomness from ``random.Random`` objects derived
from ``--seed`` (one per trial), writes a JSON or CSV report to ``--out`` (or
stdout) and exits 0 on success, 1 when a checked invariant fails and 2 on bad
input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import tempfile
from collections import Counter
from pathlib import Path

from . import __version__
from .chain import (ChainInvariantError, InfeasibleComponent, brill_noether_number,
                    run_campaign)
from .gfp import DEFAULT_PRIME, MAX_PRIME, centered, check_prime
from .hyperelliptic import (Divisor, HECurve, canonical_divisor, h0, random_curve,
                            random_generic_divisor, rr_space)
from .product_map import full_tensor_relation_check, sym2_kernel_report
from .quadric import DegenerateCurve, QuadricCurve, example_kernel, run_example

EXIT_OK, EXIT_INVARIANT, EXIT_BAD_INPUT = 0, 1, 2
MIN_PRIME = 101
MAX_EXAMPLES = 5
CAVEAT = ("hyperelliptic curves of genus >= 3 are not generic: kernels found here "
          "do not bear on curves in general position")


class BadInput(ValueError):
    pass


# ---------------------------------------------------------------------------
# helpers


def _prime(text: str) -> int:
    try:
        p = int(text)
        if p < MIN_PRIME or p >= MAX_PRIME:
            raise ValueError
        return check_prime(p)
    except ValueError:
        raise argparse.ArgumentTypeError(f"need an odd prime in [{MIN_PRIME}, 2^62), got {text}")


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"need a positive integer, got {text}")
    return n


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise BadInput(f"cannot read {path}: {exc}")


def _load_he_curve(path: str, p: int | None = None) -> HECurve:
    data = _load_json(path)
    try:
        curve = HECurve.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise BadInput(f"bad curve file {path}: {exc}")
    if p is not None and curve.p != p:
        raise BadInput(f"curve file is over F_{curve.p} but --prime is {p}")
    return curve


def _load_divisor(path: str, curve: HECurve | None) -> Divisor:
    data = _load_json(path)
    try:
        D = Divisor.from_json(data, curve)
    except (KeyError, TypeError, ValueError) as exc:
        raise BadInput(f"bad divisor file {path}: {exc}")
    if D.affine() and curve is None:
        raise BadInput("a divisor with affine points needs --curve-file")
    if curve is not None:
        for pt, _ in D.affine():
            if not curve.contains(pt):
                raise BadInput(f"divisor point {pt} is not on the curve")
    return D


def render(payload: dict, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(args, payload: dict, rows: list[dict]) -> None:
    text = render(payload, rows, args.format)
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _kernel_str(report) -> str:
    return " ; ".join(" ".join(f"{centered(c, report.p):+d}*({n},{m})" for (n, m), c in t.coeffs)
                      for t in report.kernel_basis)


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify(args) -> int:
    g, p = args.genus, args.prime
    fixed_curve = _load_he_curve(args.curve_file, p) if args.curve_file else None
    fixed_div = _load_divisor(args.divisor_file, fixed_curve) if args.divisor_file else None
    if fixed_curve is not None and fixed_curve.genus != g:
        raise BadInput(f"curve file has genus {fixed_curve.genus}, --genus is {g}")
    if fixed_div is not None:
        if args.degree is not None and args.degree != fixed_div.degree:
            raise BadInput(f"divisor file has degree {fixed_div.degree}, --degree is {args.degree}")
        d = fixed_div.degree
    elif args.degree is None:
        raise BadInput("--degree is required without --divisor-file")
    else:
        d = args.degree
    if d > g + 2:
        print(f"note: degree {d} > genus + 2; the histogram is purely empirical", file=sys.stderr)
    if d < 1:
        raise BadInput("degree must be positive")
    if fixed_div is None and d > p:
        raise BadInput("not enough x-coordinates for a divisor of distinct points")

    hist: Counter = Counter()
    examples, rows = [], []
    for trial in range(args.trials):
        rng = random.Random(f"{args.seed}:{trial}")
        curve = fixed_curve or random_curve(p, g, rng)
        D = fixed_div if fixed_div is not None else random_generic_divisor(curve, d, rng)
        B = rr_space(curve, D)
        if B.dim == 0:
            raise BadInput(f"trial {trial}: L(D) is zero")
        rep = sym2_kernel_report(curve, D, B)
        wedge_ok = full_tensor_relation_check(curve, D, B, rep.kernel_dim)
        if not wedge_ok:
            raise AssertionError(f"trial {trial}: full tensor kernel != S^2 kernel + wedge part")
        hist[rep.kernel_dim] += 1
        rows.append({"trial": trial, "genus": g, "degree": d, "k": rep.k, "dim_sym2": rep.dim_sym2,
                     "rank": rep.rank, "h0_L2": rep.h0_square, "kernel_dim": rep.kernel_dim,
                     "wedge_relation": wedge_ok})
        if rep.kernel_dim and len(examples) < MAX_EXAMPLES:
            examples.append({"trial": trial, "curve": curve.to_json(), "divisor": D.to_json(),
                             "report": rep.to_json()})
    payload = {
        "command": "verify", "version": __version__, "p": p, "genus": g, "degree": d,
        "seed": args.seed, "trials": args.trials,
        "kernel_dim_histogram": {str(k): v for k, v in sorted(hist.items())},
        "examples_of_nonzero_kernels": examples,
        "per_trial": rows,
    }
    if d > g + 1:
        payload["beyond_injectivity_range"] = True
    if g >= 3:
        payload["caveat"] = CAVEAT
    emit(args, payload, rows)
    return EXIT_OK


def cmd_genus4_example(args) -> int:
    if args.curve_file:
        data = _load_json(args.curve_file)
        try:
            curve = QuadricCurve.from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise BadInput(f"bad curve file {args.curve_file}: {exc}")
        rep = example_kernel(curve, random.Random(args.seed))
    else:
        curve, rep = run_example(args.prime, args.seed)
    out = rep.to_json()
    payload = {"command": "genus4-example", "version": __version__, "p": curve.p, "seed": args.seed,
               "curve": curve.to_json(), "report": out}
    row = {"p": curve.p, "seed": args.seed, "genus": out["genus"], "degree_L": out["degree_L"],
           "k": rep.k, "dim_sym2": rep.dim_sym2, "section_rank": out["section_rank"],
           "rank": rep.rank, "evaluation_rank": out["evaluation_rank"], "h0_L2": rep.h0_square,
           "kernel_dim": rep.kernel_dim, "injective": rep.injective, "kernel": _kernel_str(rep)}
    emit(args, payload, [row])
    return EXIT_OK


def cmd_hyperelliptic_kernel(args) -> int:
    rng = random.Random(f"{args.seed}:0")
    if args.curve_file:
        curve = _load_he_curve(args.curve_file)
    else:
        if args.genus is None:
            raise BadInput("need --curve-file or --genus")
        curve = random_curve(args.prime, args.genus, rng)
    if args.divisor_file:
        D = _load_divisor(args.divisor_file, curve)
    else:
        if args.degree is None:
            raise BadInput("need --divisor-file or --degree")
        if args.degree < 1 or args.degree > curve.p:
            raise BadInput("bad --degree")
        D = random_generic_divisor(curve, args.degree, rng)
    B = rr_space(curve, D)
    if B.dim == 0:
        raise BadInput("L(D) is zero; nothing to multiply")
    rep = sym2_kernel_report(curve, D, B)
    wedge_ok = full_tensor_relation_check(curve, D, B, rep.kernel_dim)
    if not wedge_ok:
        raise AssertionError("full tensor kernel != S^2 kernel + wedge part")
    payload = {"command": "hyperelliptic-kernel", "version": __version__, "curve": curve.to_json(),
               "divisor": D.to_json(), "genus": curve.genus, "degree": D.degree,
               "report": rep.to_json(), "wedge_relation": wedge_ok}
    if curve.genus >= 3:
        payload["caveat"] = CAVEAT
    row = {"p": curve.p, "genus": curve.genus, "degree": D.degree, "k": rep.k,
           "dim_sym2": rep.dim_sym2, "rank": rep.rank, "h0_L2": rep.h0_square,
           "kernel_dim": rep.kernel_dim, "injective": rep.injective, "wedge_relation": wedge_ok,
           "kernel": _kernel_str(rep)}
    emit(args, payload, [row])
    return EXIT_OK


def cmd_rr(args) -> int:
    rng = random.Random(f"{args.seed}:0")
    if args.curve_file:
        curve = _load_he_curve(args.curve_file)
    else:
        if args.genus is None:
            raise BadInput("need --curve-file or --genus")
        curve = random_curve(args.prime, args.genus, rng)
    if args.divisor_file:
        D = _load_divisor(args.divisor_file, curve)
    else:
        if args.degree is None:
            raise BadInput("need --divisor-file or --degree")
        if args.degree > curve.p:
            raise BadInput("bad --degree")
        D = random_generic_divisor(curve, args.degree, rng) if args.degree > 0 else Divisor(())
    B = rr_space(curve, D)
    K = canonical_divisor(curve)
    h_dual = h0(curve, K - D)
    rhs = D.degree - curve.genus + 1
    ok = B.dim - h_dual == rhs
    basis = [{"a": [centered(c, curve.p) for c in phi.a.coeffs],
              "b": [centered(c, curve.p) for c in phi.b.coeffs],
              "h": [centered(c, curve.p) for c in phi.h.coeffs]} for phi in B.basis]
    payload = {"command": "rr", "version": __version__, "curve": curve.to_json(), "divisor": D.to_json(),
               "genus": curve.genus, "degree": D.degree, "h0_D": B.dim, "h0_K_minus_D": h_dual,
               "riemann_roch": ok, "basis": basis}
    emit(args, payload, [{"p": curve.p, "genus": curve.genus, "degree": D.degree, "h0_D": B.dim,
                          "h0_K_minus_D": h_dual, "riemann_roch": ok}])
    if not ok:
        print(f"Riemann-Roch identity fails: {B.dim} - {h_dual} != {rhs}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_chain(args) -> int:
    g, d, k = args.genus, args.degree, args.sections
    if not 1 <= k <= d:
        raise BadInput("need 1 <= --sections <= --degree")
    if g < 1:
        raise BadInput("need --genus >= 1")
    rho_bn = brill_noether_number(g, d, k)
    if rho_bn < 0:
        print(f"warning: Brill-Noether number {rho_bn} < 0; expect infeasible draws", file=sys.stderr)
    res = run_campaign(g, d, k, args.trials, args.seed, torsion=args.torsion,
                       keep_traces=args.traces)
    payload = {"command": "chain", "version": __version__, "seed": args.seed,
               "torsion": args.torsion, **res.to_json(with_traces=args.traces)}
    keys = ["rank_one", "contradiction", "survived", "torsion_evasion", "infeasible"]
    row = {"g": g, "d": d, "k": k, "trials": args.trials, "brill_noether": rho_bn,
           **{key: res.counts.get(key, 0) for key in keys},
           "surviving_kernel_candidates": res.surviving}
    for key, v in sorted(res.endgames.items()):
        row["endgame:" + key] = v
    emit(args, payload, [row])
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import print_table, run_all
    results = run_all(seed=args.seed)
    print_table(results, sys.stdout)
    return EXIT_OK if all(r.passed for r in results) else EXIT_INVARIANT


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symprod",
                                     description="Experiments on the symmetric square of sections of line bundles on curves")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, genus=None, degree=None, trials=None):
        sp.add_argument("--prime", type=_prime, default=DEFAULT_PRIME, help="odd prime >= 101 (default %(default)s)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="report path (default: stdout)")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        if genus is not False:
            sp.add_argument("--genus", type=_positive, default=genus)
        if degree is not False:
            sp.add_argument("--degree", type=int, default=degree)
        if trials is not None:
            sp.add_argument("--trials", type=_positive, default=trials)

    sp = sub.add_parser("verify", help="random curves and divisors: kernel of S^2 H^0(D) -> H^0(2D)")
    common(sp, genus=2, degree=None, trials=100)
    sp.add_argument("--curve-file", help="fix the curve (JSON {p, f})")
    sp.add_argument("--divisor-file", help="fix the divisor (JSON {points, inf})")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("genus4-example", help="the degree-6 bundle on a (3,3) curve in P^1 x P^1")
    common(sp, genus=False, degree=False)
    sp.add_argument("--curve-file", help="use this (3,3) form (JSON {p, F})")
    sp.set_defaults(func=cmd_genus4_example)

    sp = sub.add_parser("hyperelliptic-kernel", help="kernel report for one curve and divisor")
    common(sp)
    sp.add_argument("--curve-file")
    sp.add_argument("--divisor-file")
    sp.set_defaults(func=cmd_hyperelliptic_kernel)

    sp = sub.add_parser("rr", help="Riemann-Roch space basis and the identity h0(D) - h0(K-D) = deg D - g + 1")
    common(sp)
    sp.add_argument("--curve-file")
    sp.add_argument("--divisor-file")
    sp.set_defaults(func=cmd_rr)

    sp = sub.add_parser("chain", help="propagation campaigns on chains of elliptic and rational curves")
    common(sp, genus=4, degree=3, trials=500)
    sp.add_argument("--sections", "-k", type=_positive, default=2, help="dimension k of the space of sections")
    sp.add_argument("--torsion", action="store_true", help="allow [P - Q] of finite order")
    sp.add_argument("--traces", action="store_true", help="include every trial's trace")
    sp.set_defaults(func=cmd_chain)

    sp = sub.add_parser("selftest", help="run every invariant suite and print a pass/fail table")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (BadInput, InfeasibleComponent) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (AssertionError, ChainInvariantError, DegenerateCurve) as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
