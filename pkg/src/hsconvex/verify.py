"""The empirical referee: residual checks, hypothesis gates, slack scans.

Nothing in here asserts an inequality without first checking its
hypothesis numerically (check-then-assert). verify_theorem gates the
harmonic chain on harmonic s-convexity of f itself and gates every
Ostrowski-type theorem on harmonic s-convexity of u -> |f'(u)|^q; only
when the gate passes does the slack scan run and count.

lambda_consistency is the package's oracle comparison: every lambda closed
form against its defining integral by adaptive quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from .bounds import (BoundResult, ConjugatePair, LambdaArgs, hh_harmonic_bounds,
                     lambda5, lambda_integrand, lambda_value, ostrowski_rhs,
                     validate_q, validate_s, OSTROWSKI_THEOREMS)
from .convexity import ConvexityMode, check_convexity, _uniform_grid
from .errors import DomainError
from .numeric import (DEFAULT_TOL, FunctionSpec, Interval, derivative,
                      get_function, integrate, weighted_mean)

# combined quadrature + special-function error across an lhs/rhs pair stays
# well under this; slacks below -SLACK_TOL are genuine violations
SLACK_TOL = 1e-9

VERIFY_THEOREMS = ("T2_2",) + OSTROWSKI_THEOREMS


@dataclass(frozen=True)
class VerifyReport:
    """One verify_theorem outcome. results is empty when the hypothesis gate
    fails (no slack claim is made for a theorem whose premise is false)."""

    theorem: str
    grid: dict
    results: list[BoundResult]
    min_slack: Optional[float]
    hypothesis_ok: bool
    passed: bool

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "grid": self.grid,
            "results": [r.to_dict() for r in self.results],
            "min_slack": self.min_slack,
            "hypothesis_ok": self.hypothesis_ok,
            "pass": self.passed,
        }


def lemma_residual(f: FunctionSpec, x: float, iv: Interval,
                   tol: float = DEFAULT_TOL) -> float:
    """Residual of the integral identity behind all the Ostrowski bounds:

        f(x) - (ab/(b-a)) int_a^b f(u)/u^2 du
          = (ab/(b-a)) [ (x-a)^2 int_0^1 t/(ta+(1-t)x)^2 f'(ax/(ta+(1-t)x)) dt
                       - (b-x)^2 int_0^1 t/(tb+(1-t)x)^2 f'(bx/(tb+(1-t)x)) dt ]

    Both sides are evaluated by quadrature and |lhs - rhs| returned; for a
    differentiable f the residual is pure numerical noise.
    """
    a, b = iv.a, iv.b
    if not a <= x <= b:
        raise DomainError(f"x={x} outside [{a}, {b}]")
    lhs = f(x) - weighted_mean(f, iv, tol)

    def side_integral(theta: float) -> float:
        def integrand(t: float) -> float:
            denom = t * theta + (1.0 - t) * x
            return t / (denom * denom) * derivative(f, theta * x / denom)
        return integrate(integrand, 0.0, 1.0, tol).value

    rhs = 0.0
    if x > a:
        rhs += (x - a) ** 2 * side_integral(a)
    if x < b:
        rhs -= (b - x) ** 2 * side_integral(b)
    rhs *= a * b / (b - a)
    return abs(lhs - rhs)


def _hypothesis_function(f: FunctionSpec, q_exp: float) -> FunctionSpec:
    """Package u -> |f'(u)|^q as a FunctionSpec for the convexity gate."""
    return FunctionSpec(
        fn_id=f"|{f.fn_id}'|^{q_exp:g}",
        eval_fn=lambda u: abs(derivative(f, u)) ** q_exp,
        domain_lo=f.domain_lo,
        domain_hi=f.domain_hi,
    )


def verify_theorem(theorem: str, f: FunctionSpec, iv: Interval, s: float,
                   q: Union[float, ConjugatePair, None] = None,
                   x_grid: int = 9, gate_grid_n: int = 16,
                   seed: Optional[int] = None,
                   tol: float = DEFAULT_TOL) -> VerifyReport:
    """Gate a theorem's hypothesis, then scan its inequality over x.

    T2_2 gates on harmonic s-convexity of f and yields two chain rows
    (left-vs-middle and middle-vs-right; the two inequalities hold or fail
    independently). T2_3..T2_7 gate on harmonic s-convexity of |f'|^q and
    yield one row per x-grid point. A failed gate short-circuits: results
    stay empty and pass is false without any slack claim.
    """
    validate_s(s)
    if theorem not in VERIFY_THEOREMS:
        raise DomainError(f"unknown theorem {theorem!r}; expected one of "
                          f"{', '.join(VERIFY_THEOREMS)}")
    if x_grid < 1:
        raise DomainError("x_grid must have at least one point")
    a, b = iv.a, iv.b

    if theorem == "T2_2":
        q_val, p_val = None, None
        gate = check_convexity(f, iv, ConvexityMode.HARMONICALLY_S_CONVEX, s,
                               grid_n=gate_grid_n, seed=seed)
    else:
        if q is None:
            raise DomainError(f"{theorem} requires an exponent q")
        if theorem in ("T2_6", "T2_7"):
            if not isinstance(q, ConjugatePair):
                raise DomainError(f"{theorem} requires a ConjugatePair")
            q_val, p_val = q.q, q.p
        else:
            q_val = q.q if isinstance(q, ConjugatePair) else validate_q(q)
            p_val = None
        gate = check_convexity(_hypothesis_function(f, q_val), iv,
                               ConvexityMode.HARMONICALLY_S_CONVEX, s,
                               grid_n=gate_grid_n, seed=seed)

    grid_desc = {
        "x_count": 2 if theorem == "T2_2" else x_grid,
        "s_set": [s],
        "q_set": [] if q_val is None else [q_val],
        "fn": f.fn_id,
        "interval": [a, b],
    }
    hyp_ok = gate.holds
    if not hyp_ok:
        return VerifyReport(theorem=theorem, grid=grid_desc, results=[],
                            min_slack=None, hypothesis_ok=False, passed=False)

    fd = f.deriv_fn is None and theorem != "T2_2"
    results: list[BoundResult] = []
    if theorem == "T2_2":
        left, middle, right = hh_harmonic_bounds(f, iv, s, tol)
        h_mid = 2.0 * a * b / (a + b)
        results.append(BoundResult("T2_2_left", h_mid, a, b, s, None, None, None,
                                   lhs=left, rhs=middle, slack=middle - left,
                                   hypothesis_ok=True))
        results.append(BoundResult("T2_2_right", h_mid, a, b, s, None, None, None,
                                   lhs=middle, rhs=right, slack=right - middle,
                                   hypothesis_ok=True))
    else:
        wm = weighted_mean(f, iv, tol)  # one quadrature shared by all x
        for x in _uniform_grid(a, b, x_grid):
            lhs = abs(f(x) - wm)
            rhs = ostrowski_rhs(theorem, f, x, iv, s, q)
            results.append(BoundResult(theorem, x, a, b, s, q_val, p_val, None,
                                       lhs=lhs, rhs=rhs, slack=rhs - lhs,
                                       hypothesis_ok=True, fd_fallback=fd))

    min_slack = min(r.slack for r in results)
    return VerifyReport(theorem=theorem, grid=grid_desc, results=results,
                        min_slack=min_slack, hypothesis_ok=True,
                        passed=min_slack >= -SLACK_TOL)


@dataclass(frozen=True)
class LambdaGrid:
    """Grid specification for lambda_consistency.

    pairs_a: (theta, x) pairs with theta <= x, used directly for kinds 1, 2
    and with roles swapped for kinds 3, 4. lambda5_points are (theta, x)
    pairs for the lambda5 check and deliberately include the near-equal
    regime that exercises the Taylor branch.
    """

    pairs_a: tuple = ((1.0, 1.1), (1.0, 1.5), (1.0, 1.9))
    s_values: tuple = (0.0, 0.25, 0.5, 0.75, 1.0)
    vartheta_rho: tuple = ((1.0, 0.0), (1.0, 1.0), (2.0, 2.0), (1.5, 1.5))
    lambda5_points: tuple = field(default=())

    def __post_init__(self) -> None:
        if not self.lambda5_points:
            pts = [(1.0, 2.0), (2.0, 1.5), (1.0, 1.5), (1.5, 1.5)]
            x_ref = 1.5
            for mag in (1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1):
                for sign in (1.0, -1.0):
                    # z = 1 - theta/x on both sides of the Taylor handoff
                    pts.append((x_ref * (1.0 - sign * mag), x_ref))
            object.__setattr__(self, "lambda5_points", tuple(pts))


DEFAULT_LAMBDA_GRID = LambdaGrid()


def lambda_consistency_rows(grid: Optional[LambdaGrid] = None,
                            lambda2_variant: bool = False) -> list[dict]:
    """Closed form vs defining integral for every grid point.

    Returns one row per comparison with the closed value, the quadrature
    value, and their relative discrepancy (measured against the closed
    value, which is strictly positive on the grid).
    """
    g = grid or DEFAULT_LAMBDA_GRID
    rows: list[dict] = []
    for kind in (1, 2, 3, 4):
        for theta_a, x_a in g.pairs_a:
            # kinds 3, 4 live on the b-side: swap so x <= theta
            theta, x = (theta_a, x_a) if kind in (1, 2) else (x_a, theta_a)
            for s in g.s_values:
                for vt, rho in g.vartheta_rho:
                    args = LambdaArgs(kind, theta, x, s, vt, rho)
                    closed = lambda_value(args, lambda2_variant)
                    oracle = integrate(lambda_integrand(args), 0.0, 1.0, 1e-13).value
                    rel = abs(closed - oracle) / abs(closed)
                    rows.append({
                        "family": f"lambda{kind}",
                        "kind": kind, "theta": theta, "x": x,
                        "s": s, "vartheta": vt, "rho": rho,
                        "closed": closed, "oracle": oracle, "rel_err": rel,
                    })
    for theta, x in g.lambda5_points:
        closed = lambda5(theta, x)

        def integrand(t: float, theta: float = theta, x: float = x) -> float:
            denom = t * theta + (1.0 - t) * x
            return t / (denom * denom)

        oracle = integrate(integrand, 0.0, 1.0, 1e-13).value
        rel = abs(closed - oracle) / abs(closed)
        rows.append({
            "family": "lambda5", "kind": 5, "theta": theta, "x": x,
            "s": None, "vartheta": None, "rho": None,
            "closed": closed, "oracle": oracle, "rel_err": rel,
        })
    return rows


def lambda_consistency(grid: Optional[LambdaGrid] = None,
                       lambda2_variant: bool = False) -> float:
    """Maximum relative discrepancy between closed forms and the oracle."""
    rows = lambda_consistency_rows(grid, lambda2_variant)
    return max(r["rel_err"] for r in rows)


# the standard sweep configuration: every registry shape crossed with the
# exponents and intervals the slack scans care about
MATRIX_FUNCTIONS = ("const:2", "id", "pow:2", "pow:0.5", "inv", "neg")
MATRIX_INTERVALS = ((1.0, 2.0), (0.5, 3.0))
MATRIX_S_VALUES = (0.5, 1.0)
MATRIX_Q_VALUES = (1.0, 2.0)
MATRIX_PAIR = ConjugatePair(2.0, 2.0)

LEMMA_FUNCTIONS = ("const:2", "id", "pow:2", "pow:0.5", "inv")
LEMMA_INTERVALS = ((1.0, 2.0), (0.5, 3.0), (2.0, 2.5))


def _matrix_configs(fn_ids=MATRIX_FUNCTIONS, s_values=MATRIX_S_VALUES,
                    q_values=MATRIX_Q_VALUES, intervals=MATRIX_INTERVALS):
    """Yield (theorem, fn_id, iv, s, q_or_pair) across the sweep matrix.

    T2_3/T2_4/T2_5 run once per scalar q; T2_6/T2_7 run once per config with
    the fixed conjugate pair (such pairs have no free q to sweep).
    """
    for fn_id in fn_ids:
        for a, b in intervals:
            iv = Interval(a, b)
            for s in s_values:
                for theorem in ("T2_3", "T2_4", "T2_5"):
                    for q in q_values:
                        yield theorem, fn_id, iv, s, q
                for theorem in ("T2_6", "T2_7"):
                    yield theorem, fn_id, iv, s, MATRIX_PAIR


def run_ostrowski_matrix(fn_ids=MATRIX_FUNCTIONS, s_values=MATRIX_S_VALUES,
                         q_values=MATRIX_Q_VALUES, intervals=MATRIX_INTERVALS,
                         x_grid: int = 9,
                         gate_grid_n: int = 16) -> list[VerifyReport]:
    """verify_theorem over the whole sweep matrix, in a fixed order."""
    reports = []
    for theorem, fn_id, iv, s, q in _matrix_configs(fn_ids, s_values,
                                                    q_values, intervals):
        f = get_function(fn_id)
        reports.append(verify_theorem(theorem, f, iv, s, q,
                                      x_grid=x_grid, gate_grid_n=gate_grid_n))
    return reports


def matrix_summary(reports: list[VerifyReport]) -> dict:
    """Aggregate a matrix run: worst gated slack, gate coverage, failures.

    gated_pairs collects the distinct (theorem, fn) combinations whose
    hypothesis gate passed; a sweep where too few pairs pass is vacuous no
    matter how good the slacks look.
    """
    gated = [r for r in reports if r.hypothesis_ok]
    gated_pairs = sorted({(r.theorem, r.grid["fn"]) for r in gated})
    min_slack = min((r.min_slack for r in gated), default=None)
    return {
        "reports": len(reports),
        "gated": len(gated),
        "gated_pairs": gated_pairs,
        "min_slack": min_slack,
        "failed": [r.theorem + "/" + r.grid["fn"] for r in gated if not r.passed],
    }


def min_corollary_gap(fn_ids=MATRIX_FUNCTIONS, s_values=MATRIX_S_VALUES,
                      q_values=MATRIX_Q_VALUES, intervals=MATRIX_INTERVALS,
                      x_grid: int = 9, margin: float = 0.1) -> float:
    """Worst value of corollary_rhs - theorem_rhs across the matrix.

    For each configuration M is set to the grid maximum of |f'| plus a
    margin, so M dominates every derivative magnitude the theorem rhs uses;
    substituting it must only ever enlarge the bound. The returned minimum
    gap should therefore be nonnegative up to rounding. No hypothesis gate
    applies: the monotonicity is structural.
    """
    worst = math.inf
    for theorem, fn_id, iv, s, q in _matrix_configs(fn_ids, s_values,
                                                    q_values, intervals):
        f = get_function(fn_id)
        xs = _uniform_grid(iv.a, iv.b, x_grid)
        m_cap = max(abs(derivative(f, u)) for u in xs) + margin
        for x in xs:
            gap = (ostrowski_rhs(theorem, f, x, iv, s, q, M=m_cap)
                   - ostrowski_rhs(theorem, f, x, iv, s, q))
            if gap < worst:
                worst = gap
    return worst
