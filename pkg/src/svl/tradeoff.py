"""Closed-form trade-off bounds and the numerical verification harness.

Each bound limits the sum (or sum of squares) of Svetlichny values over
all three-qubit reductions of a state family.  verify_tradeoff pits a
bound against independent numerical maximization of every reduction and
returns a report; sweep_figure tabulates the bound curves.

Two readings exist for formulas whose printed form contains
asymmetric mixed-power terms: "verbatim" evaluates them exactly as
printed, "corrected" restores the symmetry the surrounding terms obey.
Both are exposed and neither is asserted as ground truth.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Mapping

from .config import DEFAULT_TOLERANCES, OptimizerOptions
from .correlations import svetlichny_upper_bound
from .errors import DomainError, InvalidArityError, NormalizationError
from .qstate import StateSpec, reduce_pure
from .svetlichny import maximize_svetlichny

__all__ = [
    "WClassCoefficients",
    "ReductionResult",
    "TradeoffReport",
    "VARIANTS",
    "BOUND_NAMES",
    "FIGURES",
    "bound_gghz_sum",
    "bound_gghz_sum_spectral",
    "bound_gghz_sum_n",
    "bound_ms_sum",
    "bound_ms_sum_spectral",
    "bound_ms_sum_n",
    "bound_wclass_sum",
    "bound_wclass_sum_squares",
    "bound_wclass_sum_squares_spectral",
    "verify_tradeoff",
    "sweep_figure",
]

VARIANTS = ("verbatim", "corrected")
SATISFIED_TOL = 1e-6


@dataclass(frozen=True)
class WClassCoefficients:
    """Amplitudes (alpha, beta, gamma, delta, lam) of a W-class state."""

    alpha: float
    beta: float
    gamma: float
    delta: float
    lam: float = 0.0

    def __post_init__(self):
        sq = (self.alpha**2 + self.beta**2 + self.gamma**2
              + self.delta**2 + self.lam**2)
        if abs(sq - 1.0) > DEFAULT_TOLERANCES.input_normalization:
            raise NormalizationError(f"squared coefficients sum to {sq!r}, expected 1")


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise DomainError(f"unknown variant {variant!r}, expected one of {VARIANTS}")


def bound_gghz_sum(theta: float) -> float:
    """Bound 16|cos 2 theta| on the summed values of all GGHZ(4) reductions."""
    return 16.0 * abs(math.cos(2.0 * theta))


def bound_gghz_sum_spectral(theta: float) -> float:
    """The looser route through per-reduction spectral bounds: 16 max(cos^4, sin^4)."""
    return 16.0 * max(math.cos(theta) ** 4, math.sin(theta) ** 4)


def bound_gghz_sum_n(n: int, theta: float) -> float:
    """Bound 4 C(n,3) |cos 2 theta| for the n-qubit GGHZ state, n >= 4."""
    if n < 4:
        raise InvalidArityError(f"need n >= 4, got {n}")
    return 4.0 * comb(n, 3) * abs(math.cos(2.0 * theta))


def bound_ms_sum(theta: float) -> float:
    """Bound 4 sqrt(2)|cos t| + 12|cos^2 t + sin(2t)/2| for MS(4) reductions."""
    return (4.0 * math.sqrt(2.0) * abs(math.cos(theta))
            + 12.0 * abs(math.cos(theta) ** 2 + 0.5 * math.sin(2.0 * theta)))


def bound_ms_sum_spectral(theta: float) -> float:
    """The spectral-route aggregate 20 cos^2 theta for MS(4) reductions."""
    return 20.0 * math.cos(theta) ** 2


def bound_ms_sum_n(n: int, theta: float) -> float:
    """n-qubit MS bound; does not reduce to bound_ms_sum at n = 4.

    4 sqrt(2) C(n-1,2)|cos t| + 4 (C(n,3) - C(n-1,2)) |cos^2 t + sin(2t)/2|.
    At n = 4 the second coefficient is 4, not the 12 of bound_ms_sum; both
    values are kept available so the discrepancy stays visible.
    """
    if n < 4:
        raise InvalidArityError(f"need n >= 4, got {n}")
    heavy = comb(n - 1, 2)
    return (4.0 * math.sqrt(2.0) * heavy * abs(math.cos(theta))
            + 4.0 * (comb(n, 3) - heavy)
            * abs(math.cos(theta) ** 2 + 0.5 * math.sin(2.0 * theta)))


def _xy_table(w: WClassCoefficients, variant: str):
    """Per-reduction (x, y, extra) coefficient rows for bound_wclass_sum."""
    a2, b2, g2, d2, l2 = (w.alpha**2, w.beta**2, w.gamma**2, w.delta**2, w.lam**2)
    x1 = (a2 + b2 + g2 - d2 - l2) ** 2
    x2 = (a2 + b2 - g2 + d2 - l2) ** 2
    x3 = (a2 - b2 + g2 + d2 - l2) ** 2
    x4 = (-a2 + b2 + g2 + d2 - l2) ** 2
    y1 = b2 * g2 + a2 * l2 + 1.5 * a2 * b2 + g2 * l2 + 1.5 * a2 * g2 + b2 * l2
    y3 = 1.5 * a2 * d2 + a2 * l2 + 1.5 * a2 * g2 + d2 * l2 + d2 * g2 + l2 * g2
    if variant == "verbatim":
        y2 = b2 * g2 + a2 * l2 + 1.5 * a2 * b2 + d2 * l2 + 1.5 * a2 * d2 + d2 * b2
        y4 = (1.5 * b2 * g2 + b2 * l2 + d2 * g2 + d2 * l2 + g2 * l2
              + 1.5 * d2 * w.beta * w.gamma)
    else:
        y2 = b2 * l2 + a2 * l2 + 1.5 * a2 * b2 + d2 * l2 + 1.5 * a2 * d2 + d2 * b2
        y4 = 1.5 * b2 * g2 + b2 * l2 + d2 * g2 + d2 * l2 + g2 * l2 + 1.5 * b2 * d2
    return [
        (x1, y1, b2 * g2),
        (x2, y2, b2 * d2),
        (x3, y3, d2 * l2),
        (x4, y4, d2 * g2),
    ]


def bound_wclass_sum(w: WClassCoefficients, variant: str = "verbatim") -> float:
    """Summed-value bound for all four reductions of a five-coefficient state.

    Sum over reductions of 2(sqrt(2x + 8y) + sqrt(2x + 8y + 8e)) with the
    per-reduction coefficient rows of _xy_table.  The verbatim reading can
    produce a negative radicand for sign-mixed coefficients; that raises
    DomainError rather than silently clamping.
    """
    _check_variant(variant)
    total = 0.0
    for x, y, extra in _xy_table(w, variant):
        base = 2.0 * x + 8.0 * y
        if base < -1e-15 or base + 8.0 * extra < -1e-15:
            raise DomainError(
                "negative radicand under the verbatim reading; "
                "use variant='corrected' or sign-free coefficients"
            )
        total += 2.0 * (math.sqrt(max(base, 0.0))
                        + math.sqrt(max(base + 8.0 * extra, 0.0)))
    return total


def _require_zero_vacuum(w: WClassCoefficients) -> None:
    if abs(w.lam) > 1e-12:
        raise DomainError(f"bound requires lam = 0, got {w.lam!r}")


def bound_wclass_sum_squares(w: WClassCoefficients) -> float:
    """Sum-of-squares bound 64(1 + a2 g2 + b2 d2 + 2 a2 b2 + 2 b2 g2 + 2 g2 d2).

    Applies to zero-vacuum (lam = 0) states only.
    """
    _require_zero_vacuum(w)
    a2, b2, g2, d2 = w.alpha**2, w.beta**2, w.gamma**2, w.delta**2
    return 64.0 * (1.0 + a2 * g2 + b2 * d2 + 2.0 * a2 * b2 + 2.0 * b2 * g2
                   + 2.0 * g2 * d2)


def bound_wclass_sum_squares_spectral(w: WClassCoefficients,
                                      variant: str = "verbatim") -> float:
    """Competing sum-of-squares bound assembled from per-reduction spectral maxima.

    Evaluated literally as printed under variant="verbatim" (mixed-power
    products such as alpha*beta^2 kept as written); variant="corrected"
    squares the odd factors.  Zero-vacuum states only.
    """
    _check_variant(variant)
    _require_zero_vacuum(w)
    a, b, g, d = w.alpha, w.beta, w.gamma, w.delta
    a2, b2, g2, d2 = a * a, b * b, g * g, d * d
    if variant == "verbatim":
        ab2, ag2, ad2 = a * b2, a * g2, a * d2
        bg2, bd2, gd2 = b * g2, b * d2, g * d2
    else:
        ab2, ag2, ad2 = a2 * b2, a2 * g2, a2 * d2
        bg2, bd2, gd2 = b2 * g2, b2 * d2, g2 * d2
    sa = (2.0 * a2 - 1.0) ** 2
    sb = (2.0 * b2 - 1.0) ** 2
    sg = (2.0 * g2 - 1.0) ** 2
    sd = (2.0 * d2 - 1.0) ** 2
    return 8.0 * (
        abs(4.0 * (ab2 + ag2) - 8.0 * bg2 - sd)
        + abs(4.0 * (ab2 + ad2) - 8.0 * bd2 - sg)
        + abs(4.0 * (bg2 + bd2) - 8.0 * gd2 - sa)
        + abs(4.0 * (ag2 + ad2) - 8.0 * gd2 - sb)
        + 8.0 * (ab2 + ag2 + ad2 + 1.5 * bg2 + 1.5 * bd2 + 2.0 * gd2)
        + sa + sb + sg + sd
    )


@dataclass(frozen=True)
class ReductionResult:
    keep: tuple[int, ...]
    value: float
    upper_bound: float
    converged: bool

    def to_dict(self) -> dict:
        return {
            "keep": list(self.keep),
            "value": self.value,
            "upper_bound_4lambda1": self.upper_bound,
            "converged": self.converged,
        }


@dataclass(frozen=True)
class TradeoffReport:
    """Outcome of checking one trade-off bound against maximization."""

    family: str
    params: Mapping[str, object]
    bound_name: str
    mode: str
    variant: str
    per_reduction: tuple[ReductionResult, ...]
    lhs: float
    rhs: float
    satisfied: bool
    gap: float
    converged: bool

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": dict(self.params),
            "bound": self.bound_name,
            "mode": self.mode,
            "variant": self.variant,
            "per_reduction": [r.to_dict() for r in self.per_reduction],
            "lhs": self.lhs,
            "rhs": self.rhs,
            "satisfied": self.satisfied,
            "gap": self.gap,
            "converged": self.converged,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _wcoeffs_from_spec(spec: StateSpec) -> WClassCoefficients:
    p = spec.params
    return WClassCoefficients(float(p["alpha"]), float(p["beta"]),
                              float(p["gamma"]), float(p["delta"]),
                              float(p["lambda"]))


@dataclass(frozen=True)
class _BoundRule:
    mode: str
    family: str
    min_qubits: int
    max_qubits: int | None
    rhs: Callable[[StateSpec, str], float]


def _rhs_gghz(spec: StateSpec, variant: str) -> float:
    return bound_gghz_sum(float(spec.params["theta"]))


def _rhs_gghz_n(spec: StateSpec, variant: str) -> float:
    return bound_gghz_sum_n(spec.num_qubits, float(spec.params["theta"]))


def _rhs_ms(spec: StateSpec, variant: str) -> float:
    return bound_ms_sum(float(spec.params["theta"]))


def _rhs_ms_n(spec: StateSpec, variant: str) -> float:
    return bound_ms_sum_n(spec.num_qubits, float(spec.params["theta"]))


def _rhs_wclass(spec: StateSpec, variant: str) -> float:
    return bound_wclass_sum(_wcoeffs_from_spec(spec), variant)


def _rhs_wclass_squares(spec: StateSpec, variant: str) -> float:
    return bound_wclass_sum_squares(_wcoeffs_from_spec(spec))


# Registry keyed by the bound identifiers the CLI accepts.
_BOUND_RULES: dict[str, _BoundRule] = {
    "theorem1": _BoundRule("sum", "GGHZ", 4, 4, _rhs_gghz),
    "corollary1": _BoundRule("sum", "GGHZ", 4, None, _rhs_gghz_n),
    "theorem2": _BoundRule("sum", "MS", 4, 4, _rhs_ms),
    "corollary2": _BoundRule("sum", "MS", 4, None, _rhs_ms_n),
    "theorem3": _BoundRule("sum", "WCLASS", 4, 4, _rhs_wclass),
    "eqn3p": _BoundRule("sum_squares", "WCLASS", 4, 4, _rhs_wclass_squares),
}

BOUND_NAMES = tuple(_BOUND_RULES)


def verify_tradeoff(spec: StateSpec, bound: str,
                    opts: OptimizerOptions | None = None,
                    mode: str | None = None,
                    variant: str = "verbatim") -> TradeoffReport:
    """Maximize every three-qubit reduction and compare against a bound.

    The aggregation mode (sum versus sum of squares) is fixed per bound;
    passing a mismatched mode raises DomainError so results for different
    forms cannot be conflated.  Optimizer non-convergence is flagged on
    the report, not raised.
    """
    _check_variant(variant)
    if bound not in _BOUND_RULES:
        raise DomainError(f"unknown bound {bound!r}, expected one of {BOUND_NAMES}")
    rule = _BOUND_RULES[bound]
    if mode is not None and mode != rule.mode:
        raise DomainError(f"bound {bound!r} aggregates by {rule.mode!r}, not {mode!r}")
    if spec.family != rule.family:
        raise DomainError(f"bound {bound!r} applies to {rule.family} states, "
                          f"got {spec.family}")
    if spec.num_qubits < rule.min_qubits:
        raise InvalidArityError(f"bound {bound!r} needs at least "
                                f"{rule.min_qubits} qubits, got {spec.num_qubits}")
    if rule.max_qubits is not None and spec.num_qubits > rule.max_qubits:
        raise InvalidArityError(f"bound {bound!r} is a {rule.max_qubits}-qubit "
                                f"statement, got {spec.num_qubits} qubits")
    rhs = rule.rhs(spec, variant)
    if opts is None:
        opts = OptimizerOptions()
    psi = spec.to_pure()
    results = []
    for keep in combinations(range(spec.num_qubits), 3):
        rho = reduce_pure(psi, keep)
        best = maximize_svetlichny(rho, opts)
        results.append(ReductionResult(
            keep=keep,
            value=best.value,
            upper_bound=svetlichny_upper_bound(rho),
            converged=best.converged,
        ))
    if rule.mode == "sum":
        lhs = sum(r.value for r in results)
    else:
        lhs = sum(r.value**2 for r in results)
    return TradeoffReport(
        family=spec.family,
        params=dict(spec.params),
        bound_name=bound,
        mode=rule.mode,
        variant=variant,
        per_reduction=tuple(results),
        lhs=lhs,
        rhs=rhs,
        satisfied=lhs <= rhs + SATISFIED_TOL,
        gap=rhs - lhs,
        converged=all(r.converged for r in results),
    )


FIGURES = ("FIG1", "FIG2", "FIG3", "FIG4")

# Open-interval endpoints are pulled inward by this much.
_EDGE_NUDGE = 1e-9


def _linspace(lo: float, hi: float, n: int) -> list[float]:
    if n < 2:
        raise DomainError(f"need at least 2 grid points, got {n}")
    step = (hi - lo) / (n - 1)
    return [lo + k * step for k in range(n)]


def sweep_figure(fig: str, grid_points: int = 181,
                 opts: OptimizerOptions | None = None,
                 variant: str = "verbatim"):
    """Tabulate one figure's curves; returns (column_names, rows).

    FIG1: GGHZ sum bound versus its spectral-route counterpart on
        [0, pi/4].
    FIG2: MS sum bound versus the spectral aggregate on the open
        interval (pi/2, 3*pi/2).
    FIG3: the two W-class sum-of-squares bounds along the slice
        alpha = beta = 0, delta = sqrt(1 - gamma^2), gamma in [0, 1].
    FIG4: maximized squared Svetlichny values of the reductions along
        the same slice, with their sum and the closed-form bound.
    """
    _check_variant(variant)
    if fig == "FIG1":
        cols = ("theta", "sum_bound", "spectral_bound")
        rows = [(t, bound_gghz_sum(t), bound_gghz_sum_spectral(t))
                for t in _linspace(0.0, math.pi / 4.0, grid_points)]
        return cols, rows
    if fig == "FIG2":
        cols = ("theta", "sum_bound", "spectral_bound")
        rows = [(t, bound_ms_sum(t), bound_ms_sum_spectral(t))
                for t in _linspace(math.pi / 2.0 + _EDGE_NUDGE,
                                   1.5 * math.pi - _EDGE_NUDGE, grid_points)]
        return cols, rows
    if fig == "FIG3":
        cols = ("gamma", "sum_squares_bound", "spectral_bound")
        rows = []
        for g in _linspace(0.0, 1.0, grid_points):
            w = WClassCoefficients(0.0, 0.0, g, math.sqrt(max(1.0 - g * g, 0.0)))
            rows.append((g, bound_wclass_sum_squares(w),
                         bound_wclass_sum_squares_spectral(w, variant)))
        return cols, rows
    if fig == "FIG4":
        if opts is None:
            opts = OptimizerOptions()
        cols = ("gamma", "sq_value_abc", "sq_value_acd", "sq_sum",
                "sum_squares_bound")
        rows = []
        for g in _linspace(0.0, 1.0, grid_points):
            d = math.sqrt(max(1.0 - g * g, 0.0))
            spec = StateSpec("WCLASS", 4, {"alpha": 0.0, "beta": 0.0,
                                           "gamma": g, "delta": d,
                                           "lambda": 0.0})
            report = verify_tradeoff(spec, "eqn3p", opts)
            by_keep = {r.keep: r.value**2 for r in report.per_reduction}
            rows.append((g, by_keep[(0, 1, 2)], by_keep[(0, 2, 3)],
                         report.lhs, report.rhs))
        return cols, rows
    raise DomainError(f"unknown figure {fig!r}, expected one of {FIGURES}")
