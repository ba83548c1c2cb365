"""Command-line surface.

Five commands: `lambda` and `hh` and `ostrowski` compute values, `verify`
runs a gated slack scan for one theorem, and `selftest` runs the entire
verification battery. Exit codes are fixed: 0 success, 1 verification
failure, 2 usage or domain error; nothing else.

All floating-point output uses 17 significant digits so downstream tools
can diff and round-trip values exactly; identical invocations produce
byte-identical documents.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from .bounds import (CSV_FIELDS, BoundResult, ConjugatePair, LambdaArgs,
                     classic_ostrowski_rhs, hh_harmonic_bounds,
                     hh_s_convex_bounds, lambda5, lambda_integrand,
                     lambda_value, ostrowski_lhs, ostrowski_rhs, validate_q)
from .convexity import (VIOLATION_TOL, ConvexityMode, check_am_hm,
                        check_convexity, proposition_implications)
from .errors import DomainError, NumericError
from .numeric import (DEFAULT_TOL, FunctionSpec, Interval, derivative,
                      get_function, integrate, weighted_mean)
from .specfn import beta, hyp2f1
from .verify import (LEMMA_FUNCTIONS, LEMMA_INTERVALS, MATRIX_FUNCTIONS,
                     SLACK_TOL, _hypothesis_function, lambda_consistency_rows,
                     lemma_residual, matrix_summary, min_corollary_gap,
                     run_ostrowski_matrix, verify_theorem)
from .convexity import _uniform_grid


def _fmt(v: float) -> str:
    return format(v, ".17g")


def _to_json(obj) -> str:
    """Minimal deterministic JSON emitter with 17-significant-digit floats.

    The stdlib encoder does not allow overriding float formatting, and the
    output contract here fixes it, so the few shapes we emit are handled
    directly. Dict keys keep insertion order.
    """
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_to_json(v) for v in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_to_json(v)}"
                               for k, v in obj.items()) + "}"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if v is True:
        return "true"
    if v is False:
        return "false"
    if isinstance(v, float):
        return _fmt(v)
    return str(v)


def _csv_doc(header: Sequence[str], rows: list[dict]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_csv_cell(row.get(k)) for k in header))
    return "\n".join(lines)


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _resolve_exponents(theorem: str, q: Optional[float], p: Optional[float]):
    """Map the --q/--p flags onto what the theorem expects."""
    if theorem in ("T2_6", "T2_7"):
        if q is not None and p is not None:
            return ConjugatePair(p, q)
        if p is not None:
            return ConjugatePair.from_p(p)
        if q is not None:
            return ConjugatePair.from_q(q)
        raise DomainError(f"{theorem} needs conjugate exponents: give --p, --q or both")
    if theorem == "T2_2":
        return None
    if q is None:
        raise DomainError(f"{theorem} needs --q (a power-mean exponent >= 1)")
    return validate_q(q)


# ---------------------------------------------------------------- commands

def cmd_lambda(ns: argparse.Namespace) -> int:
    if ns.kind == 5:
        value = lambda5(ns.theta, ns.x)
        payload = {"kind": 5, "theta": ns.theta, "x": ns.x,
                   "s": None, "vartheta": None, "rho": None, "value": value}
        if ns.check:
            def integrand(t: float) -> float:
                denom = t * ns.theta + (1.0 - t) * ns.x
                return t / (denom * denom)
            oracle = integrate(integrand, 0.0, 1.0, 1e-13).value
            payload["oracle"] = oracle
            payload["rel_err"] = abs(value - oracle) / abs(value)
    else:
        if ns.s is None or ns.vartheta is None or ns.rho is None:
            raise DomainError(f"kind {ns.kind} needs --s, --vartheta and --rho")
        args = LambdaArgs(ns.kind, ns.theta, ns.x, ns.s, ns.vartheta, ns.rho)
        value = lambda_value(args)
        payload = {"kind": ns.kind, "theta": ns.theta, "x": ns.x,
                   "s": ns.s, "vartheta": ns.vartheta, "rho": ns.rho,
                   "value": value}
        if ns.check:
            oracle = integrate(lambda_integrand(args), 0.0, 1.0, 1e-12).value
            payload["oracle"] = oracle
            payload["rel_err"] = abs(value - oracle) / abs(value)
    if ns.format == "csv":
        header = ("kind", "theta", "x", "s", "vartheta", "rho",
                  "value", "oracle", "rel_err")
        _emit(_csv_doc(header, [payload]), ns.out)
    else:
        _emit(_to_json(payload), ns.out)
    return 0


def cmd_hh(ns: argparse.Namespace) -> int:
    f = get_function(ns.fn)
    if ns.variant == "harmonic":
        left, middle, right = hh_harmonic_bounds(f, Interval(ns.a, ns.b),
                                                 ns.s, ns.tol)
    else:
        left, middle, right = hh_s_convex_bounds(f, ns.a, ns.b, ns.s, ns.tol)
    payload = {
        "variant": ns.variant, "fn": f.fn_id, "a": ns.a, "b": ns.b, "s": ns.s,
        "left": left, "middle": middle, "right": right,
        "slack_left": middle - left, "slack_right": right - middle,
    }
    if ns.format == "csv":
        header = ("variant", "fn", "a", "b", "s", "left", "middle", "right",
                  "slack_left", "slack_right")
        _emit(_csv_doc(header, [payload]), ns.out)
    else:
        _emit(_to_json(payload), ns.out)
    return 0


def cmd_ostrowski(ns: argparse.Namespace) -> int:
    f = get_function(ns.fn)
    iv = Interval(ns.a, ns.b)
    if ns.theorem == "classic":
        if ns.M is None:
            raise DomainError("classic needs --M (a bound on |f'|)")
        mean = integrate(lambda u: f(u), iv.a, iv.b, ns.tol).value / (iv.b - iv.a)
        lhs = abs(f(ns.x) - mean)
        rhs = classic_ostrowski_rhs(ns.x, iv, ns.M)
        # the hypothesis here is |f'| <= M on [a, b]; check it on a grid
        worst = max(abs(derivative(f, u)) for u in _uniform_grid(iv.a, iv.b, 33))
        hyp_ok = worst <= ns.M + VIOLATION_TOL
        result = BoundResult("classic", ns.x, iv.a, iv.b, ns.s, None, None,
                             ns.M, lhs=lhs, rhs=rhs, slack=rhs - lhs,
                             hypothesis_ok=hyp_ok,
                             fd_fallback=f.deriv_fn is None)
    else:
        q_or_pair = _resolve_exponents(ns.theorem, ns.q, ns.p)
        q_val = q_or_pair.q if isinstance(q_or_pair, ConjugatePair) else q_or_pair
        p_val = q_or_pair.p if isinstance(q_or_pair, ConjugatePair) else None
        gate = check_convexity(_hypothesis_function(f, q_val), iv,
                               ConvexityMode.HARMONICALLY_S_CONVEX, ns.s,
                               grid_n=ns.grid_gate, seed=ns.seed)
        lhs = ostrowski_lhs(f, ns.x, iv, ns.tol)
        rhs = ostrowski_rhs(ns.theorem, f, ns.x, iv, ns.s, q_or_pair, M=ns.M)
        result = BoundResult(ns.theorem, ns.x, iv.a, iv.b, ns.s, q_val, p_val,
                             ns.M, lhs=lhs, rhs=rhs, slack=rhs - lhs,
                             hypothesis_ok=gate.holds,
                             fd_fallback=f.deriv_fn is None and ns.M is None)
    if ns.format == "csv":
        _emit(_csv_doc(CSV_FIELDS, [result.to_dict()]), ns.out)
    else:
        _emit(_to_json(result.to_dict()), ns.out)
    return 0


def cmd_verify(ns: argparse.Namespace) -> int:
    f = get_function(ns.fn)
    iv = Interval(ns.a, ns.b)
    q_or_pair = _resolve_exponents(ns.theorem, ns.q, ns.p)
    report = verify_theorem(ns.theorem, f, iv, ns.s, q_or_pair,
                            x_grid=ns.grid, gate_grid_n=ns.grid_gate,
                            seed=ns.seed, tol=ns.tol)
    if ns.format == "csv":
        _emit(_csv_doc(CSV_FIELDS, [r.to_dict() for r in report.results]), ns.out)
    else:
        _emit(_to_json(report.to_dict()), ns.out)
    return 0 if report.passed else 1


# ---------------------------------------------------------------- selftest

def _selftest_checks(tol: Optional[float], lambda2_variant: bool) -> list[dict]:
    """Run the whole battery. Each row compares a measured metric against a
    limit: kind 'max_err' passes when value <= limit, 'min_slack' when
    value >= -limit, 'count_min' when value >= limit. A --tol override
    replaces the limit of every err/slack row (count rows keep theirs)."""
    checks: list[dict] = []

    def add(name: str, kind: str, value: float, default_limit: float) -> None:
        limit = default_limit
        if tol is not None and kind != "count_min":
            limit = tol
        if kind == "max_err":
            ok = value <= limit
        elif kind == "min_slack":
            ok = value >= -limit
        else:
            ok = value >= limit
        checks.append({"check": name, "kind": kind, "value": value,
                       "limit": limit, "pass": ok})

    # closed forms vs the quadrature oracle
    rows = lambda_consistency_rows(lambda2_variant=lambda2_variant)
    add("lambda_fidelity_kinds_1_4", "max_err",
        max(r["rel_err"] for r in rows if r["kind"] <= 4), 1e-8)
    add("lambda5_fidelity", "max_err",
        max(r["rel_err"] for r in rows if r["kind"] == 5), 1e-10)

    # the integral identity behind all the bounds
    worst = 0.0
    for fn_id in LEMMA_FUNCTIONS:
        f = get_function(fn_id)
        for a, b in LEMMA_INTERVALS:
            iv = Interval(a, b)
            for x in _uniform_grid(a, b, 9):
                r = lemma_residual(f, x, iv) / (1.0 + abs(f(x)))
                worst = max(worst, r)
    add("lemma_identity", "max_err", worst, 1e-7)

    # two-sided chain for x^s on subintervals of (0, 1]
    min_chain = math.inf
    for s in (0.25, 0.5, 0.75, 1.0):
        f = get_function(f"pow:{s:g}")
        for a, b in ((0.25, 1.0), (0.1, 0.9)):
            rep = verify_theorem("T2_2", f, Interval(a, b), s)
            if not rep.hypothesis_ok:
                min_chain = -math.inf
                break
            min_chain = min(min_chain, rep.min_slack)
    add("hh_chain_slack", "min_slack", min_chain, 1e-12)
    mid = weighted_mean(get_function("id"), Interval(1.0, 2.0))
    add("hh_reference_middle", "max_err", abs(mid - 2.0 * math.log(2.0)), 1e-10)

    # gated slack sweep over the theorem matrix
    summary = matrix_summary(run_ostrowski_matrix())
    add("ostrowski_matrix_slack", "min_slack",
        summary["min_slack"] if summary["min_slack"] is not None else -math.inf,
        SLACK_TOL)
    add("ostrowski_gate_coverage", "count_min",
        float(len(summary["gated_pairs"])), 5.0)

    # replacing derivative magnitudes with a dominating M can only enlarge
    add("corollary_monotonicity", "min_slack", min_corollary_gap(), 1e-12)

    # classic bound for f(x)=x, M=1 on [1, 2]
    f_id = get_function("id")
    iv = Interval(1.0, 2.0)
    mean = integrate(lambda u: f_id(u), 1.0, 2.0, DEFAULT_TOL).value
    min_classic = math.inf
    for x in _uniform_grid(1.0, 2.0, 33):
        slack = classic_ostrowski_rhs(x, iv, 1.0) - abs(f_id(x) - mean)
        min_classic = min(min_classic, slack)
    add("classic_slack", "min_slack", min_classic, 1e-14)

    # comparison inequality and the monotonicity implications
    am_hm = check_am_hm(Interval(0.5, 4.0), grid_n=32)
    add("am_hm_grid", "max_err", am_hm.max_violation, VIOLATION_TOL)
    prop = proposition_implications(MATRIX_FUNCTIONS, (0.25, 0.5, 0.75, 1.0),
                                    Interval(0.5, 4.0), grid_n=32)
    add("proposition_nonvacuous", "count_min", float(len(prop)), 1.0)
    add("proposition_implications", "max_err",
        max(r["consequent_violation"] for r in prop), VIOLATION_TOL)

    # special-function spot checks
    worst = 0.0
    for i in range(1, 10):
        z = i / 10.0
        ref = -math.log1p(-z) / z
        worst = max(worst, abs(hyp2f1(1.0, 1.0, 2.0, z) - ref) / abs(ref))
    add("hyp2f1_log_identity", "max_err", worst, 1e-10)
    worst = 0.0
    pts = (0.5, 1.0, 1.5, 2.5, 5.0, 12.0, 50.0)
    for x in pts:
        for y in pts:
            worst = max(worst, abs(beta(x, y) - beta(y, x)) / beta(x, y))
    add("beta_symmetry", "max_err", worst, 1e-13)
    return checks


def cmd_selftest(ns: argparse.Namespace) -> int:
    checks = _selftest_checks(ns.tol, ns.debug_lambda2_variant)
    n_pass = sum(1 for c in checks if c["pass"])
    all_pass = n_pass == len(checks)
    if ns.format == "json":
        _emit(_to_json({"checks": checks, "pass": all_pass}), ns.out)
    elif ns.format == "csv":
        header = ("check", "kind", "value", "limit", "pass")
        _emit(_csv_doc(header, checks), ns.out)
    else:
        width = max(len(c["check"]) for c in checks)
        lines = []
        for c in checks:
            status = "PASS" if c["pass"] else "FAIL"
            lines.append(f"{status}  {c['check']:<{width}}  "
                         f"value={_fmt(c['value'])}  limit={_fmt(c['limit'])}")
        lines.append(f"selftest: {n_pass}/{len(checks)} checks passed")
        _emit("\n".join(lines), ns.out)
    return 0 if all_pass else 1


# ---------------------------------------------------------------- parser

def _add_output_flags(p: argparse.ArgumentParser, formats=("json", "csv")) -> None:
    p.add_argument("--out", metavar="PATH", default=None,
                   help="write the document to PATH instead of stdout")
    p.add_argument("--format", choices=formats, default=formats[0],
                   help="output format (default %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hsconvex",
        description="Compute and verify integral-mean bounds for harmonically "
                    "s-convex functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lambda", help="evaluate a lambda coefficient weight")
    p.add_argument("--kind", type=int, required=True, choices=(1, 2, 3, 4, 5))
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--vartheta", type=float, default=None)
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--check", action="store_true",
                   help="also integrate the defining integrand and report "
                        "the relative discrepancy")
    _add_output_flags(p)
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("hh", help="evaluate a Hermite-Hadamard chain")
    p.add_argument("--fn", required=True, help="registry id, e.g. pow:0.5")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--variant", choices=("harmonic", "arithmetic"),
                   default="harmonic",
                   help="harmonic chain (weighted mean, default) or the "
                        "arithmetic-mean chain for s-convex functions")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    _add_output_flags(p)
    p.set_defaults(func=cmd_hh)

    p = sub.add_parser("ostrowski", help="evaluate one bound instance at x")
    p.add_argument("--theorem", required=True,
                   choices=("classic", "T2_3", "T2_4", "T2_5", "T2_6", "T2_7"))
    p.add_argument("--fn", required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--M", type=float, default=None,
                   help="derivative bound; replaces every |f'| magnitude")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--grid-gate", type=int, default=16,
                   help="grid size per axis for the hypothesis gate")
    p.add_argument("--seed", type=int, default=None,
                   help="adds seeded random samples to the hypothesis gate")
    _add_output_flags(p)
    p.set_defaults(func=cmd_ostrowski)

    p = sub.add_parser("verify", help="gate a theorem's hypothesis and scan "
                                      "its slack over an x grid")
    p.add_argument("--theorem", required=True,
                   choices=("T2_2", "T2_3", "T2_4", "T2_5", "T2_6", "T2_7"))
    p.add_argument("--fn", required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--grid", type=int, default=9, help="number of x points")
    p.add_argument("--grid-gate", type=int, default=16)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    _add_output_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", help="run the full verification battery")
    p.add_argument("--tol", type=float, default=None,
                   help="replace every error/slack limit with this value")
    p.add_argument("--debug-lambda2-variant", action="store_true",
                   help="evaluate the kind-2 weight with a deliberately "
                        "inconsistent front factor; the fidelity check must "
                        "then fail (a canary for the oracle comparison)")
    _add_output_flags(p, formats=("table", "json", "csv"))
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits itself on usage errors (status 2) and --help (0);
        # fold that into the return-code contract instead of raising
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return ns.func(ns)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
