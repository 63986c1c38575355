"""Local fractional Taylor models and piecewise-scaling approximation.

A local model at a base point carries the ordinary Taylor data up to the
largest available derivative order N plus one fractional term: the local
fractional derivative at the critical order alpha, scaled by
``Gamma(alpha + 1)``.  Functions with infinite critical order get a plain
degree-N Taylor polynomial.  A piecewise-scaling approximation covers an
interval with such models at equispaced knots, one per side of each knot.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .catalog import (
    FunctionSpec,
    analytic_derivative,
    eval_1d,
    max_derivative_order,
    tail_increment_1d,
)
from .fraccalc import (
    gamma_value,
    integer_part,
    rl_frac_derivative,
    rl_frac_derivative_higher,
)
from .lfd import (
    DEFAULT_Q_PROBES,
    DEFAULT_SCHEDULE,
    DEFAULT_THRESHOLDS,
    Classification,
    InconclusiveLimitError,
    Side,
    Thresholds,
    WindowSchedule,
    _builder_1d,
    _classify,
    _run_sweep,
    critical_order,
    profile,
)

__all__ = [
    "LocalModel",
    "ApproximationReport",
    "PiecewiseScalingModel",
    "ModelUnavailableError",
    "build_local_model",
    "evaluate_model",
    "frac_residual",
    "remainder_profile",
    "piecewise_scaling_approx",
    "evaluate_piecewise",
    "piecewise_to_json",
]

_TINY = 1e-300


class ModelUnavailableError(RuntimeError):
    """The local behaviour diverges at its own critical order."""


@dataclass(frozen=True)
class LocalModel:
    """Truncated fractional Taylor data at a base point.

    ``derivs[n]`` is the n-th derivative at ``y`` (``derivs[0] = f(y)``).
    ``alpha`` is the critical order (``math.inf`` for smooth behaviour, in
    which case there is no fractional term and ``lfd_value`` is None).
    """

    y: float
    N: int
    derivs: tuple[float, ...]
    alpha: float
    lfd_value: float | None
    side: Side
    degraded: bool = False

    def __post_init__(self) -> None:
        if len(self.derivs) != self.N + 1:
            raise ValueError("derivs must hold orders 0..N")
        if math.isfinite(self.alpha):
            if not self.N < self.alpha <= self.N + 1:
                raise ValueError(
                    f"finite alpha must lie in (N, N+1] = ({self.N}, {self.N + 1}], "
                    f"got {self.alpha}"
                )
            if self.lfd_value is None:
                raise ValueError("finite alpha requires an lfd_value")


@dataclass(frozen=True)
class ApproximationReport:
    """Residuals of a local model at increasing offsets from its base point."""

    offsets: tuple[float, ...]
    residuals: tuple[float, ...]
    decay_slope: float | None
    exact: bool


@dataclass(frozen=True)
class PiecewiseScalingModel:
    """Local models at equispaced knots covering an interval.

    Each knot owns a left and a right model; evaluation dispatches to the
    nearest knot and the side-appropriate model.
    """

    interval: tuple[float, float]
    knots: tuple[float, ...]
    left_pieces: tuple[LocalModel, ...]
    right_pieces: tuple[LocalModel, ...]

    def __post_init__(self) -> None:
        if len(self.left_pieces) != len(self.knots) or len(self.right_pieces) != len(
            self.knots
        ):
            raise ValueError("one left and one right model per knot")
        if any(b <= a for a, b in zip(self.knots, self.knots[1:])):
            raise ValueError("knots must be strictly increasing")


# --------------------------------------------------------------------------
# Model construction and evaluation
# --------------------------------------------------------------------------

def build_local_model(
    spec: FunctionSpec,
    y: float,
    sched: WindowSchedule = DEFAULT_SCHEDULE,
    side: Side = Side.Right,
    q_probes: tuple[float, ...] = DEFAULT_Q_PROBES,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> LocalModel:
    """Fit the local fractional Taylor data at ``y``.

    Derivatives come from the catalog, alpha from the critical-order
    estimator, and the fractional coefficient from evaluating the derivative
    of order alpha at the smallest schedule window.  A divergent limit at
    alpha makes the model unavailable; a merely unsettled (oscillating)
    limit still yields a usable coefficient, which is what rough profiles
    like the Weierstrass family produce.
    """
    if spec.arity != 1:
        raise ValueError("build_local_model needs a 1D spec")
    N = max_derivative_order(spec, y, cap=3)
    derivs = [float(eval_1d(spec, y))]
    for n in range(1, N + 1):
        derivs.append(float(analytic_derivative(spec, n, y)))

    est = critical_order(spec, y, side, sched, q_probes, thresholds)
    if est.is_infinite:
        return LocalModel(
            y=float(y), N=N, derivs=tuple(derivs), alpha=math.inf,
            lfd_value=None, side=side,
        )
    # Keep alpha inside the window its own Taylor head defines, and off the
    # integer boundary so the fractional kernel stays well defined.
    alpha = min(max(est.alpha, N + 1e-9), N + 1.0 - 1e-9)
    sweep = _run_sweep(_builder_1d(spec, y, side, alpha), alpha, sched, thresholds)
    try:
        cls = _classify(sweep, thresholds)
    except InconclusiveLimitError:
        cls = None
    if cls is Classification.Divergent:
        raise ModelUnavailableError(
            f"limit of order alpha={alpha:.4f} diverges at y={y}; "
            "no finite fractional coefficient exists"
        )
    if cls is Classification.IdenticallyZero:
        value = 0.0
    else:
        value = float(sweep.edge_values[-1])
    return LocalModel(
        y=float(y), N=N, derivs=tuple(derivs), alpha=float(alpha),
        lfd_value=value, side=side,
    )


def evaluate_model(model: LocalModel, x) -> float | np.ndarray:
    """Evaluate the fractional Taylor approximant at ``x``.

    ``sum_n derivs[n] (x-y)^n / Gamma(n+1)`` plus, for finite alpha,
    ``lfd_value |x-y|**alpha / Gamma(alpha+1)``.  Points on the wrong side
    of the model are rejected.
    """
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    dx = arr - model.y
    if model.side is Side.Right:
        if np.any(dx < 0):
            raise ValueError("right-side model evaluated left of its base point")
    else:
        if np.any(dx > 0):
            raise ValueError("left-side model evaluated right of its base point")
    out = np.zeros_like(dx)
    for n in range(model.N, -1, -1):
        # Gamma(n+1) is exactly n! at integer orders
        out = out * dx + model.derivs[n] / math.factorial(n)
    if math.isfinite(model.alpha) and model.lfd_value is not None:
        out = out + model.lfd_value / gamma_value(model.alpha + 1.0) * np.abs(dx) ** model.alpha
    return float(out) if scalar else out


def frac_residual(
    spec: FunctionSpec,
    y: float,
    q: float,
    N: int,
    delta: float,
    samples: int,
) -> float:
    """Fractional derivative of the degree-N-subtracted increment at offset delta.

    This is the finite-window quantity whose limit (as delta shrinks) is the
    local fractional derivative; N must be the integer part of q.
    """
    if q <= 0 or q == math.floor(q):
        raise ValueError(f"q must be a positive non-integer, got {q}")
    n = integer_part(q)
    if n != N + 1:
        raise ValueError(f"need N + 1 = ceil(q): got N={N}, q={q}")
    pad = n - 1
    path = profile(spec, y, Side.Right, delta, samples, subtract_order=N, pad=pad)
    if n == 1:
        return rl_frac_derivative(path, q, samples)
    return rl_frac_derivative_higher(path, q, samples)


def remainder_profile(
    spec: FunctionSpec,
    model: LocalModel,
    offsets,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> ApproximationReport:
    """Residuals ``f(y + delta) - model(y + delta)`` over positive offsets.

    The decay slope is the log-log regression of the residual magnitude
    against the offset, over offsets whose residual clears the zero floor;
    a model that reproduces the function to the floor is flagged exact.
    """
    offs = np.asarray(offsets, dtype=float)
    if offs.ndim != 1 or offs.size == 0:
        raise ValueError("offsets must be a non-empty 1D collection")
    if np.any(offs <= 0):
        raise ValueError("offsets must be positive")
    sign = 1.0 if model.side is Side.Right else -1.0
    x = model.y + sign * offs
    f_vals = np.asarray(eval_1d(spec, x), dtype=float)
    m_vals = np.asarray(evaluate_model(model, x), dtype=float)
    resid = f_vals - m_vals
    floor = thresholds.zero_floor_scale * float(np.max(np.abs(f_vals)))
    usable = np.abs(resid) > max(floor, _TINY)
    if int(np.sum(usable)) < 2:
        return ApproximationReport(
            offsets=tuple(float(o) for o in offs),
            residuals=tuple(float(r) for r in resid),
            decay_slope=None, exact=True,
        )
    slope = float(
        np.polyfit(np.log(offs[usable]), np.log(np.abs(resid[usable])), 1)[0]
    )
    return ApproximationReport(
        offsets=tuple(float(o) for o in offs),
        residuals=tuple(float(r) for r in resid),
        decay_slope=slope, exact=False,
    )


# --------------------------------------------------------------------------
# Piecewise-scaling approximation
# --------------------------------------------------------------------------

def _degraded_piece(spec: FunctionSpec, y: float, side: Side) -> LocalModel:
    return LocalModel(
        y=float(y), N=0, derivs=(float(eval_1d(spec, y)),), alpha=math.inf,
        lfd_value=None, side=side, degraded=True,
    )


def _calibrate_piece(
    spec: FunctionSpec, model: LocalModel, reach: float, samples: int = 128
) -> LocalModel:
    """Refit the fractional coefficient of a piece on its own half-cell.

    The local-limit value is taken at the schedule's smallest window, which
    can sit far below the cell scale; for oscillatory profiles the two
    scales carry different effective amplitudes, so each piece re-fits its
    coefficient by least squares against ``|t|**alpha`` over the span it is
    responsible for.  Pure power-law behaviour is left numerically unchanged
    (the fit reproduces the coefficient).
    """
    if not math.isfinite(model.alpha):
        return model
    sign = 1.0 if model.side is Side.Right else -1.0
    t = sign * np.linspace(0.0, reach, samples + 1)[1:]
    resid = tail_increment_1d(spec, model.y, t, 0)
    for n in range(1, model.N + 1):
        resid = resid - model.derivs[n] / math.factorial(n) * t ** n
    basis = np.abs(t) ** model.alpha / gamma_value(model.alpha + 1.0)
    denom = float(basis @ basis)
    if denom <= _TINY:
        return model
    value = float(basis @ resid) / denom
    return LocalModel(
        y=model.y, N=model.N, derivs=model.derivs, alpha=model.alpha,
        lfd_value=value, side=model.side, degraded=model.degraded,
    )


def piecewise_scaling_approx(
    spec: FunctionSpec,
    interval: tuple[float, float],
    knots: int,
    sched: WindowSchedule = DEFAULT_SCHEDULE,
    q_probes: tuple[float, ...] = DEFAULT_Q_PROBES,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
    workers: int = 0,
) -> PiecewiseScalingModel:
    """Cover ``interval`` with local models at ``knots`` equispaced knots.

    Knots sit at cell midpoints, so nearest-knot assignment is exactly cell
    membership; each knot gets a right model for its right half-cell and a
    left model for its left half-cell.  Knots where the model is unavailable
    fall back to a constant piece flagged degraded.
    """
    a, b = float(interval[0]), float(interval[1])
    if not b > a:
        raise ValueError(f"interval must satisfy b > a, got [{a}, {b}]")
    if knots < 1:
        raise ValueError(f"need at least one knot, got {knots}")
    width = (b - a) / knots
    ys = tuple(a + (k + 0.5) * width for k in range(knots))

    def fit(y: float, side: Side) -> LocalModel:
        try:
            model = build_local_model(spec, y, sched, side, q_probes, thresholds)
        except (ModelUnavailableError, InconclusiveLimitError):
            return _degraded_piece(spec, y, side)
        return _calibrate_piece(spec, model, width / 2.0)

    jobs = [(y, side) for y in ys for side in (Side.Left, Side.Right)]
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            fitted = list(pool.map(lambda args: fit(*args), jobs))
    else:
        fitted = [fit(*args) for args in jobs]
    left = tuple(fitted[2 * k] for k in range(knots))
    right = tuple(fitted[2 * k + 1] for k in range(knots))
    return PiecewiseScalingModel(
        interval=(a, b), knots=ys, left_pieces=left, right_pieces=right
    )


def evaluate_piecewise(pm: PiecewiseScalingModel, x) -> float | np.ndarray:
    """Evaluate a piecewise-scaling model: nearest knot, side-appropriate piece."""
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    scalar = np.asarray(x).ndim == 0
    knots = np.asarray(pm.knots)
    out = np.empty_like(arr)
    for i, xi in enumerate(arr):
        k = int(np.argmin(np.abs(knots - xi)))
        model = pm.right_pieces[k] if xi >= pm.knots[k] else pm.left_pieces[k]
        out[i] = evaluate_model(model, xi)
    return float(out[0]) if scalar else out


def _model_to_json(model: LocalModel) -> dict:
    return {
        "y": model.y,
        "N": model.N,
        "derivs": list(model.derivs),
        "alpha": "inf" if math.isinf(model.alpha) else model.alpha,
        "lfd_value": model.lfd_value,
        "side": "Right" if model.side is Side.Right else "Left",
        "degraded": model.degraded,
    }


def piecewise_to_json(pm: PiecewiseScalingModel) -> dict:
    pieces = []
    for k in range(len(pm.knots)):
        pieces.append(_model_to_json(pm.left_pieces[k]))
        pieces.append(_model_to_json(pm.right_pieces[k]))
    return {
        "interval": [pm.interval[0], pm.interval[1]],
        "knots": list(pm.knots),
        "pieces": pieces,
    }
