"""Local fractional derivatives: limit classification and critical orders.

The local fractional derivative at a base point is the limit, as the window
shrinks onto the point, of the fractional derivative of the profile
``f(y +/- t) - P_N(+/- t)`` where ``P_N`` is the Taylor head up to the
largest available derivative order below the probe order.  This module
realizes the limit as a geometric schedule of windows, classifies the
outcome from the scaling of the values across windows, locates the critical
order where the outcome flips from vanishing to divergent, and cross-checks
against a direct pointwise Holder-exponent estimate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .catalog import (
    FunctionSpec,
    analytic_derivative,
    max_derivative_order,
    tail_increment_1d,
)
from .fraccalc import SampledPath, derivative_curve, integer_part

__all__ = [
    "Side",
    "Classification",
    "Method",
    "WindowSchedule",
    "Thresholds",
    "ScalingDiagnostics",
    "LfdEstimate",
    "CriticalOrderEstimate",
    "HolderEstimate",
    "InconclusiveLimitError",
    "DEFAULT_Q_PROBES",
    "profile",
    "lfd_at",
    "scale_exponent",
    "critical_order",
    "holder_exponent_oracle",
]

_INTEGER_TOL = 1e-9
_TINY = 1e-300

DEFAULT_Q_PROBES: tuple[float, ...] = (0.25, 0.5, 0.75, 1.25, 1.75, 2.25, 2.75)


class Side(enum.Enum):
    Right = 1
    Left = -1


class Classification(enum.Enum):
    Zero = "Zero"
    Finite = "Finite"
    Divergent = "Divergent"
    IdenticallyZero = "IdenticallyZero"


class Method(enum.Enum):
    SlopeShift = "SlopeShift"
    Bisection = "Bisection"


class InconclusiveLimitError(RuntimeError):
    """The window schedule did not produce a classifiable limit."""


@dataclass(frozen=True)
class WindowSchedule:
    """Geometric ladder of shrinking windows.

    ``delta0`` is the largest half-width, each subsequent window shrinks by
    ``ratio``, and every window is sampled with ``samples_per_window`` cells
    so that grid refinement is tied to window size.
    """

    delta0: float = 0.1
    ratio: float = 0.5
    count: int = 8
    samples_per_window: int = 256

    def __post_init__(self) -> None:
        if not self.delta0 > 0:
            raise ValueError(f"delta0 must be > 0, got {self.delta0}")
        if not 0 < self.ratio < 1:
            raise ValueError(f"ratio must be in (0, 1), got {self.ratio}")
        if self.count < 4:
            raise ValueError(f"count must be >= 4, got {self.count}")
        if self.samples_per_window < 64:
            raise ValueError(
                f"samples_per_window must be >= 64, got {self.samples_per_window}"
            )
        eps = float(np.finfo(float).eps)
        if self.ratio ** (self.count - 1) <= 1e3 * eps:
            raise ValueError("windows shrink into rounding noise; reduce count")

    def windows(self) -> np.ndarray:
        return self.delta0 * self.ratio ** np.arange(self.count)


@dataclass(frozen=True)
class Thresholds:
    """Decision constants that make the limit trichotomy testable."""

    slope_tol: float = 0.05
    spread_tol: float = 0.02
    zero_floor_scale: float = 1e-12
    bisection_tol: float = 0.01
    consistency_tol: float = 0.1

    def __post_init__(self) -> None:
        for name in ("slope_tol", "spread_tol", "zero_floor_scale", "bisection_tol",
                     "consistency_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")


DEFAULT_THRESHOLDS = Thresholds()
DEFAULT_SCHEDULE = WindowSchedule()


@dataclass(frozen=True)
class ScalingDiagnostics:
    """Per-window record of a limit sweep.

    ``values`` are the derivative values at each window edge; ``amplitudes``
    are root-mean-square magnitudes of the derivative over the outer half of
    each window, which is what the scaling regression runs on (edge values
    alone wobble too much on lacunary profiles).  ``sigma`` is the
    least-squares slope of ``log(amplitude)`` against ``log(window)``; it is
    absent when fewer than 3 windows rise above the zero floor.
    """

    window_sizes: tuple[float, ...]
    values: tuple[float, ...]
    amplitudes: tuple[float, ...]
    sigma: float | None
    r2: float | None
    zero_floor_hits: int
    zero_floor: float

    def __post_init__(self) -> None:
        if len(self.window_sizes) != len(self.values) or len(self.values) != len(
            self.amplitudes
        ):
            raise ValueError("window_sizes, values and amplitudes must align")


@dataclass(frozen=True)
class LfdEstimate:
    """Classified outcome of a local-fractional-derivative limit."""

    classification: Classification
    value: float | None
    side: Side
    q: float
    diagnostics: ScalingDiagnostics


@dataclass(frozen=True)
class CriticalOrderEstimate:
    """Estimated critical order with bracket and per-probe detail.

    ``alpha`` is ``math.inf`` when every probed order sees a vanishing
    residual (the smooth / identically-zero case).  Orders beyond the probe
    ladder are reported as infinite as well: the estimator cannot certify
    regularity it never probes.
    """

    alpha: float
    bracket: tuple[float, float]
    per_q_estimates: tuple[tuple[float, float], ...]
    method: Method
    consistency: float | None = None

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.alpha)


@dataclass(frozen=True)
class HolderEstimate:
    """Pointwise Holder exponent from polynomial-residual decay."""

    h: float
    n: int
    r2: float | None

    @property
    def is_smooth(self) -> bool:
        # Exponents past the degree cap cannot be distinguished from
        # analytic behaviour by this estimator.
        return math.isinf(self.h) or self.h > 3.0


# --------------------------------------------------------------------------
# Profile construction
# --------------------------------------------------------------------------

def profile(
    spec: FunctionSpec,
    y: float,
    side: Side,
    delta: float,
    samples: int,
    subtract_order: int = 0,
    pad: int = 0,
) -> SampledPath:
    """Sampled residual profile ``g(t) = f(y +/- t) - P_N(+/- t)`` on [0, delta].

    ``subtract_order`` is the Taylor degree N removed from the increment;
    it requires analytic derivatives up to N at ``y``.  ``pad`` extra samples
    beyond the window edge give higher-order stencils room to breathe.
    """
    if not delta > 0:
        raise ValueError(f"delta must be > 0, got {delta}")
    if samples < 2:
        raise ValueError(f"need at least 2 samples, got {samples}")
    h = delta / samples
    du = float(side.value) * (np.arange(samples + pad + 1) * h)
    vals = tail_increment_1d(spec, y, du, subtract_order)
    return SampledPath(h, vals)


def _subtract_order_for(spec: FunctionSpec, y: float, q: float) -> int:
    return min(integer_part(q) - 1, max_derivative_order(spec, y, cap=3))


# --------------------------------------------------------------------------
# Window sweeps
# --------------------------------------------------------------------------

@dataclass
class _Sweep:
    windows: list[float] = field(default_factory=list)
    edge_values: list[float] = field(default_factory=list)
    amplitudes: list[float] = field(default_factory=list)
    raw_scales: list[float] = field(default_factory=list)
    floor: float = 0.0
    raw_scale: float = 0.0
    identically_zero: bool = False
    sigma: float | None = None
    r2: float | None = None
    hits: int = 0

    def usable(self) -> int:
        return len(self.amplitudes) - self.hits


# A profile builder returns (path, raw_scale) for one window; raw_scale is
# the largest magnitude of the unsubtracted increment on that window, the
# scale against which "identically zero" is judged.
ProfileBuilder = Callable[[float, int, int], tuple[SampledPath, float]]


def _builder_1d(spec: FunctionSpec, y: float, side: Side, q: float) -> ProfileBuilder:
    n_sub = _subtract_order_for(spec, y, q)

    def build(delta: float, samples: int, pad: int) -> tuple[SampledPath, float]:
        h = delta / samples
        du = float(side.value) * (np.arange(samples + pad + 1) * h)
        raw = tail_increment_1d(spec, y, du, 0)
        raw_scale = float(np.max(np.abs(raw)))
        if n_sub == 0:
            vals = raw
        else:
            vals = tail_increment_1d(spec, y, du, n_sub)
        return SampledPath(h, vals), raw_scale

    return build


def _run_sweep(
    builder: ProfileBuilder, q: float, sched: WindowSchedule, th: Thresholds
) -> _Sweep:
    n = integer_part(q)
    pad = n - 1
    M = sched.samples_per_window
    sweep = _Sweep()
    for widx, delta in enumerate(sched.windows()):
        path, raw_scale = builder(float(delta), M, pad)
        if widx == 0:
            sweep.raw_scale = raw_scale
            sweep.floor = th.zero_floor_scale * raw_scale
            if np.all(np.abs(path.values) <= sweep.floor):
                # Zero at the coarsest scale means zero at every finer one.
                sweep.identically_zero = True
                sweep.windows.append(float(delta))
                sweep.edge_values.append(0.0)
                sweep.amplitudes.append(0.0)
                sweep.raw_scales.append(raw_scale)
                sweep.hits = 1
                return sweep
        curve, first = derivative_curve(path, q)
        lo = max(first, M // 2)
        window_vals = curve[lo : M + 1]
        sweep.windows.append(float(delta))
        sweep.edge_values.append(float(curve[M]))
        sweep.amplitudes.append(float(np.sqrt(np.mean(window_vals ** 2))))
        sweep.raw_scales.append(raw_scale)
    amps = np.asarray(sweep.amplitudes)
    wins = np.asarray(sweep.windows)
    # the profile zero floor, passed through the derivative's delta**(-q)
    # scaling (amplified noise of a flat profile)
    floors = np.maximum(th.zero_floor_scale * sweep.raw_scale * wins ** (-q), _TINY)
    usable = amps > floors
    # A decreasing amplitude sequence that turns around and rises faster
    # than delta**(-0.75) marks the floating-point cancellation floor of
    # deep windows (Taylor-subtracted smooth profiles), not a genuine
    # divergence: genuinely divergent sweeps rise from the first window.
    if amps.size >= 5:
        m = int(np.argmin(amps))
        if 2 <= m <= amps.size - 3 and amps[m] < amps[0]:
            tail, tw = amps[m:], wins[m:]
            rise = float(np.max(tail)) / max(float(amps[m]), _TINY)
            tail_slope = float(
                np.polyfit(np.log(tw), np.log(np.maximum(tail, _TINY)), 1)[0]
            )
            if rise >= 4.0 and tail_slope <= -0.75:
                usable[m + 1 :] = False
    sweep.hits = int(np.sum(~usable))
    if int(np.sum(usable)) >= 3:
        lx = np.log(wins[usable])
        ly = np.log(amps[usable])
        coef = np.polyfit(lx, ly, 1)
        fitted = np.polyval(coef, lx)
        ss_res = float(np.sum((ly - fitted) ** 2))
        ss_tot = float(np.sum((ly - ly.mean()) ** 2))
        sweep.sigma = float(coef[0])
        sweep.r2 = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)
    return sweep


def _diagnostics(sweep: _Sweep) -> ScalingDiagnostics:
    return ScalingDiagnostics(
        window_sizes=tuple(sweep.windows),
        values=tuple(sweep.edge_values),
        amplitudes=tuple(sweep.amplitudes),
        sigma=sweep.sigma,
        r2=sweep.r2,
        zero_floor_hits=sweep.hits,
        zero_floor=sweep.floor,
    )


def _classify(sweep: _Sweep, th: Thresholds) -> Classification | None:
    """Classification per the limit trichotomy; None means boundary noise.

    None arises when the slope sits inside the dead zone but the edge values
    have not settled (oscillatory limits); callers turn that into an
    inconclusive error or fall back on the raw diagnostics.
    """
    if sweep.identically_zero:
        return Classification.IdenticallyZero
    if sweep.usable() == 0:
        return Classification.Zero  # nonzero profile, derivative under the floor
    if sweep.usable() < 3:
        raise InconclusiveLimitError(
            f"only {sweep.usable()} window(s) above the zero floor; "
            "schedule too coarse for a classification"
        )
    assert sweep.sigma is not None
    if sweep.sigma > th.slope_tol:
        return Classification.Zero
    if sweep.sigma < -th.slope_tol:
        return Classification.Divergent
    last = np.asarray(sweep.edge_values[-3:])
    denom = max(abs(float(np.mean(last))), _TINY)
    spread = float(np.max(last) - np.min(last)) / denom
    if spread < th.spread_tol:
        return Classification.Finite
    return None


# --------------------------------------------------------------------------
# Integer orders: ordinary derivatives
# --------------------------------------------------------------------------

def _is_integer_order(q: float) -> bool:
    return abs(q - round(q)) <= _INTEGER_TOL and round(q) >= 1


def _fd_derivative(spec: FunctionSpec, y: float, n: int, step: float) -> float:
    """Ordinary n-th derivative by a 5-point central stencil on increments."""
    g = tail_increment_1d(spec, y, np.array([-2.0, -1.0, 1.0, 2.0]) * step, 0)
    gm2, gm1, gp1, gp2 = (float(v) for v in g)
    if n == 1:
        return (-gp2 + 8.0 * gp1 - 8.0 * gm1 + gm2) / (12.0 * step)
    if n == 2:
        return (-gp2 + 16.0 * gp1 + 16.0 * gm1 - gm2) / (12.0 * step ** 2)
    if n == 3:
        return (gp2 - 2.0 * gp1 + 2.0 * gm1 - gm2) / (2.0 * step ** 3)
    raise ValueError(f"finite-difference fallback supports n <= 3, got {n}")


def _integer_order_estimate(
    spec: FunctionSpec, y: float, q: float, side: Side, sched: WindowSchedule,
    th: Thresholds,
) -> LfdEstimate:
    n = int(round(q))
    delta0 = sched.delta0
    h = delta0 / sched.samples_per_window
    raw = tail_increment_1d(
        spec, y, float(side.value) * np.arange(sched.samples_per_window + 1) * h, 0
    )
    raw_scale = float(np.max(np.abs(raw)))
    floor = th.zero_floor_scale * raw_scale
    diag = ScalingDiagnostics(
        window_sizes=(delta0,), values=(0.0,), amplitudes=(0.0,),
        sigma=None, r2=None, zero_floor_hits=1, zero_floor=floor,
    )
    if np.all(np.abs(raw) <= floor):
        return LfdEstimate(Classification.IdenticallyZero, None, side, q, diag)
    value = analytic_derivative(spec, n, y)
    if value is None:
        step = sched.delta0 * sched.ratio ** (sched.count - 1) / 8.0
        value = _fd_derivative(spec, y, n, step)
    diag = ScalingDiagnostics(
        window_sizes=(delta0,), values=(float(value),), amplitudes=(abs(float(value)),),
        sigma=None, r2=None, zero_floor_hits=0, zero_floor=floor,
    )
    return LfdEstimate(Classification.Finite, float(value), side, q, diag)


# --------------------------------------------------------------------------
# Public operations
# --------------------------------------------------------------------------

def scale_exponent(
    spec: FunctionSpec,
    y: float,
    q: float,
    side: Side = Side.Right,
    sched: WindowSchedule = DEFAULT_SCHEDULE,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> ScalingDiagnostics:
    """Log-log scaling diagnostics of the limit sweep at probe order ``q``.

    For power-law-type local behaviour ``sigma`` approximates
    ``(local exponent) - q``.
    """
    _validate_probe(q)
    sweep = _run_sweep(_builder_1d(spec, y, side, q), q, sched, thresholds)
    return _diagnostics(sweep)


def lfd_at(
    spec: FunctionSpec,
    y: float,
    q: float,
    side: Side = Side.Right,
    sched: WindowSchedule = DEFAULT_SCHEDULE,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> LfdEstimate:
    """Classify the local fractional derivative of order ``q`` at ``y``.

    Integer orders are answered by ordinary derivatives and tagged Finite.
    For non-integer orders the profile (with the appropriate Taylor head
    subtracted when q > 1) is differentiated at the edge of each window in
    the schedule; the scaling of the results across windows decides between
    Zero, Finite and Divergent.  A Finite value is the one from the smallest
    window, with no extrapolation beyond the schedule.
    """
    if q <= 0:
        raise ValueError(f"order must be > 0, got {q}")
    if spec.arity != 1:
        raise ValueError("lfd_at needs a 1D spec; see the directional module")
    if _is_integer_order(q):
        return _integer_order_estimate(spec, y, q, side, sched, thresholds)
    _validate_probe(q)
    sweep = _run_sweep(_builder_1d(spec, y, side, q), q, sched, thresholds)
    cls = _classify(sweep, thresholds)
    if cls is None:
        raise InconclusiveLimitError(
            f"limit at q={q} neither settles nor scales (sigma={sweep.sigma:.4f}); "
            "refine the schedule or probe a different order"
        )
    value = sweep.edge_values[-1] if cls is Classification.Finite else None
    return LfdEstimate(cls, value, side, q, _diagnostics(sweep))


def _validate_probe(q: float) -> None:
    if q <= 0 or _is_integer_order(q) or q == math.floor(q):
        raise ValueError(f"probe orders must be positive non-integers, got {q}")
    if q >= 4:
        raise ValueError(f"probe orders above 4 are not supported, got {q}")


def critical_order(
    spec: FunctionSpec,
    y: float,
    side: Side = Side.Right,
    sched: WindowSchedule = DEFAULT_SCHEDULE,
    q_probes: tuple[float, ...] = DEFAULT_Q_PROBES,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> CriticalOrderEstimate:
    """Estimate the critical order at ``y``: the threshold below which local
    fractional derivatives vanish and above which they diverge.

    Each probe order contributes the estimate ``q + sigma(q)``; when the
    probes agree the median is reported (SlopeShift), otherwise the sign of
    ``sigma`` is bisected between a vanishing and a divergent order
    (Bisection).  Profiles that vanish at every probe, and functions whose
    residuals keep shrinking past the top probe, report an infinite order.
    """
    if spec.arity != 1:
        raise ValueError("critical_order needs a 1D spec")

    def sweep_at(q: float) -> _Sweep:
        return _run_sweep(_builder_1d(spec, y, side, q), q, sched, thresholds)

    return _critical_order_core(sweep_at, q_probes, thresholds)


def _critical_order_core(
    sweep_at: Callable[[float], _Sweep],
    q_probes: tuple[float, ...],
    th: Thresholds,
) -> CriticalOrderEstimate:
    if not q_probes:
        raise ValueError("q_probes must be non-empty")
    probes = sorted(float(q) for q in q_probes)
    for q in probes:
        _validate_probe(q)

    sweeps: dict[float, _Sweep] = {q: sweep_at(q) for q in probes}
    estimates = [
        (q, q + s.sigma) for q, s in sweeps.items() if s.sigma is not None
    ]

    if all(s.identically_zero for s in sweeps.values()):
        return CriticalOrderEstimate(
            alpha=math.inf, bracket=(math.inf, math.inf),
            per_q_estimates=(), method=Method.SlopeShift,
        )

    top_q = probes[-1]
    divergent_seen = any(
        s.sigma is not None and s.sigma < -th.slope_tol for s in sweeps.values()
    )
    if not divergent_seen:
        top_vanishes = sweeps[top_q].identically_zero
        if not estimates or top_vanishes or max(e for _, e in estimates) > top_q:
            return CriticalOrderEstimate(
                alpha=math.inf, bracket=(math.inf, math.inf),
                per_q_estimates=tuple(estimates), method=Method.SlopeShift,
            )

    if not estimates:
        raise InconclusiveLimitError("no probe produced a usable scaling slope")

    values = np.asarray([e for _, e in estimates])
    alpha = float(np.median(values))
    consistency = float(np.std(values))
    if consistency <= th.consistency_tol:
        half = th.bisection_tol / 2.0
        return CriticalOrderEstimate(
            alpha=alpha, bracket=(alpha - half, alpha + half),
            per_q_estimates=tuple(estimates), method=Method.SlopeShift,
            consistency=consistency,
        )

    # Probes disagree: bisect the sign change of sigma(q).
    lo, hi = _initial_bracket(sweeps, probes)
    extra: dict[float, _Sweep] = {}
    while hi - lo > th.bisection_tol:
        mid = 0.5 * (lo + hi)
        if abs(mid - round(mid)) < 10 * _INTEGER_TOL:
            mid += 0.37 * th.bisection_tol
        s = extra.setdefault(mid, sweep_at(mid))
        if s.sigma is None or s.sigma > 0:
            lo = mid
        else:
            hi = mid
    # Probes evaluated near the crossing see the residual's dominant power
    # cleanly; their slope-shift estimates beat the bracket midpoint.
    near = [
        q + s.sigma
        for q, s in extra.items()
        if s.sigma is not None and lo - 2 * th.bisection_tol <= q <= hi + 2 * th.bisection_tol
    ]
    alpha = float(np.clip(np.median(near), lo, hi)) if near else 0.5 * (lo + hi)
    per_q = sorted(
        estimates + [(q, q + s.sigma) for q, s in extra.items() if s.sigma is not None]
    )
    return CriticalOrderEstimate(
        alpha=alpha, bracket=(lo, hi),
        per_q_estimates=tuple(per_q), method=Method.Bisection,
        consistency=consistency,
    )


def _initial_bracket(sweeps: dict[float, _Sweep], probes: list[float]) -> tuple[float, float]:
    """First sign change of sigma scanning the probes upward."""
    lo = None
    for q in probes:
        sigma = sweeps[q].sigma
        if sigma is None:
            continue
        if sigma > 0:
            lo = q
        elif lo is not None:
            return lo, q
    # Divergence was seen but not above a vanishing order; fall back to the
    # smallest divergent probe with a synthetic lower end.
    for q in probes:
        sigma = sweeps[q].sigma
        if sigma is not None and sigma < 0:
            return q / 4.0, q
    raise InconclusiveLimitError("no sign change to bracket the critical order")


# --------------------------------------------------------------------------
# Holder-exponent oracle
# --------------------------------------------------------------------------

def holder_exponent_oracle(
    spec: FunctionSpec,
    y: float,
    sched: WindowSchedule = DEFAULT_SCHEDULE,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> HolderEstimate:
    """Pointwise Holder exponent from sup-residual decay after polynomial fit.

    On each two-sided window a degree-n polynomial is least-squares fitted
    and the sup of the residual recorded; the exponent is the log-log slope
    of the residual against the window size.  The polynomial degree starts
    at the largest available derivative order and is re-fitted once if the
    measured exponent disagrees with it.  Degenerate residuals (all below
    the zero floor) report an infinite exponent: the function is smooth at
    the resolution of the schedule.
    """
    if spec.arity != 1:
        raise ValueError("holder_exponent_oracle needs a 1D spec")
    n = max_derivative_order(spec, y, cap=3)
    result = _holder_fit(spec, y, sched, thresholds, n)
    if not math.isinf(result.h):
        target = min(max(_largest_integer_below(result.h), 0), 3)
        if target != n:
            return _holder_fit(spec, y, sched, thresholds, target)
    return result


def _largest_integer_below(h: float) -> int:
    n = int(math.ceil(h)) - 1
    if h == math.floor(h):
        n = int(h) - 1
    return n


def _holder_fit(
    spec: FunctionSpec, y: float, sched: WindowSchedule, th: Thresholds, n: int
) -> HolderEstimate:
    M = sched.samples_per_window
    sup_res: list[float] = []
    wins: list[float] = []
    floor = None
    for delta in sched.windows():
        t = np.linspace(-float(delta), float(delta), 2 * M + 1)
        w = tail_increment_1d(spec, y, t, 0)
        if floor is None:
            floor = th.zero_floor_scale * float(np.max(np.abs(w)))
        coeffs = np.polynomial.polynomial.polyfit(t, w, n)
        resid = w - np.polynomial.polynomial.polyval(t, coeffs)
        sup_res.append(float(np.max(np.abs(resid))))
        wins.append(float(delta))
    sup = np.asarray(sup_res)
    wa = np.asarray(wins)
    usable = sup > max(floor, _TINY)
    if int(np.sum(usable)) < 3:
        return HolderEstimate(h=math.inf, n=n, r2=None)
    lx = np.log(wa[usable])
    ly = np.log(sup[usable])
    coef = np.polyfit(lx, ly, 1)
    fitted = np.polyval(coef, lx)
    ss_res = float(np.sum((ly - fitted) ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)
    return HolderEstimate(h=float(coef[0]), n=n, r2=r2)
