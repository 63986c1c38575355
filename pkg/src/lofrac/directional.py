"""Directional local fractional derivatives of functions of two variables.

A direction probe reduces a 2D question to the 1D machinery through the
profile ``Phi(y, t) = f(y + v t) - f(y)``: the directional LFD of order q at
``y`` along the unit vector ``v`` is the LFD of ``t -> Phi(y, t)`` at
``t = 0`` from the right.  Partial LFDs are the axis directions.  The map
operation sweeps a grid of base points against a fan of directions and
serializes the resulting critical-order field to CSV or JSON.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .catalog import FunctionSpec, argument_map_2d, underlying_1d, tail_increment_1d
from .fraccalc import SampledPath
from .lfd import (
    DEFAULT_SCHEDULE,
    DEFAULT_THRESHOLDS,
    Classification,
    CriticalOrderEstimate,
    InconclusiveLimitError,
    LfdEstimate,
    Side,
    Thresholds,
    WindowSchedule,
    _classify,
    _critical_order_core,
    _diagnostics,
    _run_sweep,
)

__all__ = [
    "DirectionProbe",
    "direction_fan",
    "phi_profile",
    "directional_lfd",
    "partial_lfd",
    "directional_critical_order",
    "critical_order_map",
    "CriticalOrderField",
    "field_to_csv",
    "field_to_json",
    "DEFAULT_DIRECTIONAL_PROBES",
]

DEFAULT_DIRECTIONAL_PROBES: tuple[float, ...] = (0.1, 0.25, 0.4, 0.55, 0.7, 0.85)

_HALF_SQRT2 = math.sqrt(0.5)


@dataclass(frozen=True)
class DirectionProbe:
    """A base point and a unit direction in the plane.

    The direction is normalized at construction; the stored components keep
    exact sign symmetry (negating an input component negates the stored one
    bit-for-bit), which is what lets degenerate directions like
    ``(1, -1)/sqrt(2)`` produce exactly vanishing profiles.
    """

    y: tuple[float, float]
    v: tuple[float, float]

    def __post_init__(self) -> None:
        y = (float(self.y[0]), float(self.y[1]))
        vx, vy = float(self.v[0]), float(self.v[1])
        norm = math.hypot(vx, vy)
        if not norm > 0 or not math.isfinite(norm):
            raise ValueError(f"direction must be a nonzero finite vector, got {self.v}")
        v = (vx / norm, vy / norm)
        if abs(math.hypot(*v) - 1.0) > 1e-12:
            raise ValueError(f"direction could not be normalized: {self.v}")
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "v", v)


def direction_fan(count: int) -> tuple[tuple[float, float], ...]:
    """``count`` unit vectors evenly spaced over the circle.

    Angles that land on multiples of pi/4 use exact component values
    (0, +/-1, +/-sqrt(1/2)) so that the diagonal directions carry exact
    sign symmetry.
    """
    if count < 1:
        raise ValueError(f"fan size must be >= 1, got {count}")
    exact = {
        0: (1.0, 0.0), 1: (_HALF_SQRT2, _HALF_SQRT2), 2: (0.0, 1.0),
        3: (-_HALF_SQRT2, _HALF_SQRT2), 4: (-1.0, 0.0),
        5: (-_HALF_SQRT2, -_HALF_SQRT2), 6: (0.0, -1.0),
        7: (_HALF_SQRT2, -_HALF_SQRT2),
    }
    out = []
    for j in range(count):
        eighths, rem = divmod(8 * j, count)
        if rem == 0:
            out.append(exact[eighths % 8])
        else:
            theta = 2.0 * math.pi * j / count
            out.append((math.cos(theta), math.sin(theta)))
    return tuple(out)


# --------------------------------------------------------------------------
# Phi profiles
# --------------------------------------------------------------------------

def _phi_values(spec: FunctionSpec, probe: DirectionProbe, t: np.ndarray) -> np.ndarray:
    u0, c1, c2 = argument_map_2d(spec, probe.y, probe.v)
    du = t * (c1 + c2 * t)
    return tail_increment_1d(underlying_1d(spec), u0, du, 0)


def phi_profile(
    spec: FunctionSpec, probe: DirectionProbe, delta: float, samples: int
) -> SampledPath:
    """Sample ``Phi(y, t) = f(y + v t) - f(y)`` at ``t = 0, delta/M, ..., delta``.

    The first sample is exactly zero, and so is the whole profile whenever
    the direction is degenerate for the function (the argument increment
    vanishes identically).
    """
    if spec.arity != 2:
        raise ValueError(f"{spec.kind.value} is not a 2D kind")
    if not delta > 0:
        raise ValueError(f"delta must be > 0, got {delta}")
    if samples < 2:
        raise ValueError(f"need at least 2 samples, got {samples}")
    h = delta / samples
    t = np.arange(samples + 1) * h
    return SampledPath(h, _phi_values(spec, probe, t))


def _builder_phi(spec: FunctionSpec, probe: DirectionProbe):
    def build(delta: float, samples: int, pad: int) -> tuple[SampledPath, float]:
        h = delta / samples
        t = np.arange(samples + pad + 1) * h
        vals = _phi_values(spec, probe, t)
        return SampledPath(h, vals), float(np.max(np.abs(vals)))

    return build


def _check_directional_order(q: float) -> None:
    if not 0 < q < 1:
        raise ValueError(
            f"directional orders are limited to 0 < q < 1, got {q} "
            "(no multivariable Taylor subtraction is defined)"
        )


# --------------------------------------------------------------------------
# Directional operations
# --------------------------------------------------------------------------

def directional_lfd(
    spec: FunctionSpec,
    probe: DirectionProbe,
    q: float,
    sched: WindowSchedule = DEFAULT_SCHEDULE,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> LfdEstimate:
    """LFD of order q in (0, 1) along ``probe.v`` at ``probe.y``."""
    if spec.arity != 2:
        raise ValueError(f"{spec.kind.value} is not a 2D kind")
    _check_directional_order(q)
    sweep = _run_sweep(_builder_phi(spec, probe), q, sched, thresholds)
    cls = _classify(sweep, thresholds)
    if cls is None:
        raise InconclusiveLimitError(
            f"directional limit at q={q} neither settles nor scales "
            f"(sigma={sweep.sigma:.4f})"
        )
    value = sweep.edge_values[-1] if cls is Classification.Finite else None
    return LfdEstimate(cls, value, Side.Right, q, _diagnostics(sweep))


def partial_lfd(
    spec: FunctionSpec,
    y,
    axis: int,
    q: float,
    sched: WindowSchedule = DEFAULT_SCHEDULE,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> LfdEstimate:
    """i-th partial LFD: the directional LFD along the i-th axis (1-based)."""
    if axis not in (1, 2):
        raise ValueError(f"axis must be 1 or 2, got {axis}")
    v = (1.0, 0.0) if axis == 1 else (0.0, 1.0)
    return directional_lfd(spec, DirectionProbe(tuple(y), v), q, sched, thresholds)


def directional_critical_order(
    spec: FunctionSpec,
    probe: DirectionProbe,
    sched: WindowSchedule = DEFAULT_SCHEDULE,
    q_probes: tuple[float, ...] = DEFAULT_DIRECTIONAL_PROBES,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> CriticalOrderEstimate:
    """Critical order of ``t -> Phi(y, t)`` at ``t = 0`` from the right."""
    if spec.arity != 2:
        raise ValueError(f"{spec.kind.value} is not a 2D kind")
    for q in q_probes:
        _check_directional_order(q)

    def sweep_at(q: float) -> object:
        return _run_sweep(_builder_phi(spec, probe), q, sched, thresholds)

    return _critical_order_core(sweep_at, tuple(q_probes), thresholds)


# --------------------------------------------------------------------------
# Critical-order fields
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CriticalOrderField:
    """Directional critical orders over base points x directions.

    ``entries[i][j]`` matches ``grid[i]`` and ``directions[j]``; failed
    entries hold the error message instead of an estimate.
    """

    grid: tuple[tuple[float, float], ...]
    directions: tuple[tuple[float, float], ...]
    entries: tuple[tuple[CriticalOrderEstimate | str, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != len(self.grid) or any(
            len(row) != len(self.directions) for row in self.entries
        ):
            raise ValueError("entries must be shaped grid x directions")

    @property
    def failed_count(self) -> int:
        return sum(1 for row in self.entries for e in row if isinstance(e, str))


def critical_order_map(
    spec: FunctionSpec,
    grid,
    directions,
    sched: WindowSchedule = DEFAULT_SCHEDULE,
    q_probes: tuple[float, ...] = DEFAULT_DIRECTIONAL_PROBES,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
    workers: int = 0,
) -> CriticalOrderField:
    """Directional critical orders for every (grid point, direction) pair.

    Entries are independent pure computations; with ``workers > 1`` they are
    evaluated in a thread pool and reassembled by index, so the output is
    identical regardless of the worker count.  Individual failures are
    recorded in the field rather than raised.
    """
    pts = tuple((float(p[0]), float(p[1])) for p in grid)
    dirs = tuple(DirectionProbe((0.0, 0.0), d).v for d in directions)
    if not pts or not dirs:
        raise ValueError("grid and directions must be non-empty")

    def compute(pt: tuple[float, float], d: tuple[float, float]):
        try:
            return directional_critical_order(
                spec, DirectionProbe(pt, d), sched, q_probes, thresholds
            )
        except (InconclusiveLimitError, ValueError) as exc:
            return str(exc)

    tasks = [(i, j, pt, d) for i, pt in enumerate(pts) for j, d in enumerate(dirs)]
    results: dict[tuple[int, int], CriticalOrderEstimate | str] = {}
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {
                (i, j): pool.submit(compute, pt, d) for i, j, pt, d in tasks
            }
        results = {key: fut.result() for key, fut in futures.items()}
    else:
        results = {(i, j): compute(pt, d) for i, j, pt, d in tasks}
    entries = tuple(
        tuple(results[(i, j)] for j in range(len(dirs))) for i in range(len(pts))
    )
    return CriticalOrderField(grid=pts, directions=dirs, entries=entries)


# --------------------------------------------------------------------------
# Serialization
# --------------------------------------------------------------------------

_CSV_HEADER = (
    "point_x", "point_y", "dir_x", "dir_y",
    "alpha", "bracket_lo", "bracket_hi", "method", "status",
)


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return f"{x:.17g}"


def field_to_csv(field: CriticalOrderField) -> str:
    """CSV rendering, grid-major then direction, '.' decimals, 17 digits."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_HEADER)
    for pt, row in zip(field.grid, field.entries):
        for d, entry in zip(field.directions, row):
            if isinstance(entry, str):
                writer.writerow(
                    [_fmt(pt[0]), _fmt(pt[1]), _fmt(d[0]), _fmt(d[1]),
                     "", "", "", "", f"error: {entry}"]
                )
            else:
                writer.writerow(
                    [_fmt(pt[0]), _fmt(pt[1]), _fmt(d[0]), _fmt(d[1]),
                     _fmt(entry.alpha), _fmt(entry.bracket[0]),
                     _fmt(entry.bracket[1]), entry.method.value, "ok"]
                )
    return buf.getvalue()


def field_to_json(field: CriticalOrderField) -> dict:
    """JSON document mirroring the CSV fields."""
    rows = []
    for pt, row in zip(field.grid, field.entries):
        for d, entry in zip(field.directions, row):
            base = {
                "point_x": pt[0], "point_y": pt[1],
                "dir_x": d[0], "dir_y": d[1],
            }
            if isinstance(entry, str):
                base.update(
                    alpha=None, bracket_lo=None, bracket_hi=None,
                    method=None, status=f"error: {entry}",
                )
            else:
                base.update(
                    alpha="inf" if entry.is_infinite else entry.alpha,
                    bracket_lo="inf" if math.isinf(entry.bracket[0]) else entry.bracket[0],
                    bracket_hi="inf" if math.isinf(entry.bracket[1]) else entry.bracket[1],
                    method=entry.method.value, status="ok",
                )
            rows.append(base)
    return {"entries": rows}
