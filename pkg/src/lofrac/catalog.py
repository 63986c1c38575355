"""Catalog of analytically understood test functions.

Every entry is a closed-form function (1D or 2D) with validated parameters,
an exact way to evaluate increments ``f(y + du) - f(y)`` without catastrophic
cancellation, and analytic derivatives wherever they exist.  The catalog is
the single source of function inputs for the fractional-derivative and
critical-order machinery.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "Kind",
    "WeierstrassParams",
    "CuspParams",
    "PolynomialParams",
    "SineParams",
    "ConstantParams",
    "FunctionSpec",
    "truncation_depth",
    "eval_1d",
    "eval_2d",
    "analytic_derivative",
    "max_derivative_order",
    "tail_increment_1d",
    "underlying_1d",
    "argument_map_2d",
    "weierstrass_1d",
    "weierstrass_sum_2d",
    "weierstrass_prod_2d",
    "holder_cusp",
    "polynomial",
    "sine",
    "constant",
    "spec_to_json",
    "spec_from_json",
    "param_schema",
]


class Kind(str, enum.Enum):
    """Catalog entry kinds."""

    Weierstrass1D = "Weierstrass1D"
    WeierstrassSum2D = "WeierstrassSum2D"
    WeierstrassProd2D = "WeierstrassProd2D"
    HolderCusp = "HolderCusp"
    Polynomial = "Polynomial"
    Sine = "Sine"
    Constant = "Constant"


_WEIERSTRASS_KINDS = (Kind.Weierstrass1D, Kind.WeierstrassSum2D, Kind.WeierstrassProd2D)
_2D_KINDS = (Kind.WeierstrassSum2D, Kind.WeierstrassProd2D)


@dataclass(frozen=True)
class WeierstrassParams:
    """Scale factor, box-dimension parameter and series truncation tolerance.

    The lacunary sine series has amplitudes ``lam**((s - 2) * k)``; the series
    is summed up to the smallest depth whose geometric amplitude tail is at
    most ``tol``.
    """

    lam: float
    s: float
    tol: float = 1e-12

    def __post_init__(self) -> None:
        if not self.lam > 1:
            raise ValueError(f"lambda must be > 1, got {self.lam}")
        if not 1 < self.s < 2:
            raise ValueError(f"s must satisfy 1 < s < 2, got {self.s}")
        if not self.tol > 0:
            raise ValueError(f"tol must be > 0, got {self.tol}")


@dataclass(frozen=True)
class CuspParams:
    """Coefficients of ``a + b*x + c*|x|**gamma``."""

    a: float
    b: float
    c: float
    gamma: float

    def __post_init__(self) -> None:
        if not self.gamma > 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if self.gamma == math.floor(self.gamma):
            raise ValueError(f"gamma must be non-integer, got {self.gamma}")
        if self.c == 0:
            raise ValueError("c must be nonzero (no cusp otherwise)")


@dataclass(frozen=True)
class PolynomialParams:
    """Coefficients in ascending degree order."""

    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) == 0:
            raise ValueError("coefficient list must be non-empty")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))


@dataclass(frozen=True)
class SineParams:
    """Parameters of ``amplitude * sin(frequency * t + phase)``."""

    amplitude: float = 1.0
    frequency: float = 1.0
    phase: float = 0.0


@dataclass(frozen=True)
class ConstantParams:
    value: float = 0.0


_PARAM_TYPES = {
    Kind.Weierstrass1D: WeierstrassParams,
    Kind.WeierstrassSum2D: WeierstrassParams,
    Kind.WeierstrassProd2D: WeierstrassParams,
    Kind.HolderCusp: CuspParams,
    Kind.Polynomial: PolynomialParams,
    Kind.Sine: SineParams,
    Kind.Constant: ConstantParams,
}


@dataclass(frozen=True)
class FunctionSpec:
    """An evaluatable catalog entry: a kind plus its parameter record."""

    kind: Kind
    params: object

    def __post_init__(self) -> None:
        expected = _PARAM_TYPES[self.kind]
        if not isinstance(self.params, expected):
            raise ValueError(
                f"{self.kind.value} expects {expected.__name__}, "
                f"got {type(self.params).__name__}"
            )

    @property
    def arity(self) -> int:
        return 2 if self.kind in _2D_KINDS else 1


def weierstrass_1d(lam: float, s: float, tol: float = 1e-12) -> FunctionSpec:
    return FunctionSpec(Kind.Weierstrass1D, WeierstrassParams(lam, s, tol))


def weierstrass_sum_2d(lam: float, s: float, tol: float = 1e-12) -> FunctionSpec:
    return FunctionSpec(Kind.WeierstrassSum2D, WeierstrassParams(lam, s, tol))


def weierstrass_prod_2d(lam: float, s: float, tol: float = 1e-12) -> FunctionSpec:
    return FunctionSpec(Kind.WeierstrassProd2D, WeierstrassParams(lam, s, tol))


def holder_cusp(a: float, b: float, c: float, gamma: float) -> FunctionSpec:
    return FunctionSpec(Kind.HolderCusp, CuspParams(a, b, c, gamma))


def polynomial(coeffs) -> FunctionSpec:
    return FunctionSpec(Kind.Polynomial, PolynomialParams(tuple(coeffs)))


def sine(amplitude: float = 1.0, frequency: float = 1.0, phase: float = 0.0) -> FunctionSpec:
    return FunctionSpec(Kind.Sine, SineParams(amplitude, frequency, phase))


def constant(value: float) -> FunctionSpec:
    return FunctionSpec(Kind.Constant, ConstantParams(value))


# --------------------------------------------------------------------------
# Weierstrass series plumbing
# --------------------------------------------------------------------------

def truncation_depth(p: WeierstrassParams) -> int:
    """Smallest depth K >= 1 whose amplitude tail sums to at most ``tol``.

    The amplitudes form a geometric sequence with ratio ``lam**(s - 2) < 1``,
    so the tail beyond K is ``lam**((s - 2) * (K + 1)) / (1 - lam**(s - 2))``.
    """
    ratio = p.lam ** (p.s - 2.0)
    K = 1
    while ratio ** (K + 1) / (1.0 - ratio) > p.tol:
        K += 1
    return K


@lru_cache(maxsize=64)
def _series_terms(lam: float, s: float, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """(amplitudes, frequencies) for the truncated series, cached per params."""
    K = truncation_depth(WeierstrassParams(lam, s, tol))
    k = np.arange(1, K + 1, dtype=float)
    amps = lam ** ((s - 2.0) * k)
    freqs = lam ** k
    amps.setflags(write=False)
    freqs.setflags(write=False)
    return amps, freqs


def _weierstrass_values(p: WeierstrassParams, t: np.ndarray) -> np.ndarray:
    amps, freqs = _series_terms(p.lam, p.s, p.tol)
    return np.sin(np.multiply.outer(t, freqs)) @ amps


def _weierstrass_increment(p: WeierstrassParams, u0: float, du: np.ndarray) -> np.ndarray:
    """W(u0 + du) - W(u0) as a difference of correctly evaluated terms.

    Both phase arrays are formed by a single multiplication per term, so for
    power-of-two ``lam`` the phases are exact and a zero ``du`` yields an
    exactly zero increment.
    """
    amps, freqs = _series_terms(p.lam, p.s, p.tol)
    base = np.sin(u0 * freqs)
    return (np.sin(np.multiply.outer(u0 + du, freqs)) - base) @ amps


# --------------------------------------------------------------------------
# Evaluation
# --------------------------------------------------------------------------

def _as_array(t) -> tuple[np.ndarray, bool]:
    arr = np.asarray(t, dtype=float)
    return arr, arr.ndim == 0


def eval_1d(spec: FunctionSpec, t):
    """Evaluate a 1D catalog entry at ``t`` (scalar or array)."""
    if spec.arity != 1:
        raise ValueError(f"{spec.kind.value} has arity 2, eval_1d needs arity 1")
    arr, scalar = _as_array(t)
    p = spec.params
    if spec.kind is Kind.Weierstrass1D:
        out = _weierstrass_values(p, arr)
    elif spec.kind is Kind.HolderCusp:
        out = p.a + p.b * arr + p.c * np.abs(arr) ** p.gamma
    elif spec.kind is Kind.Polynomial:
        out = np.zeros_like(arr)
        for c in reversed(p.coeffs):
            out = out * arr + c
    elif spec.kind is Kind.Sine:
        out = p.amplitude * np.sin(p.frequency * arr + p.phase)
    else:  # Constant
        out = np.full_like(arr, p.value)
    return float(out) if scalar else out


def underlying_1d(spec: FunctionSpec) -> FunctionSpec:
    """The 1D Weierstrass profile a 2D Weierstrass kind reduces to."""
    if spec.kind not in _2D_KINDS:
        raise ValueError(f"{spec.kind.value} has no 1D reduction")
    return FunctionSpec(Kind.Weierstrass1D, spec.params)


def eval_2d(spec: FunctionSpec, x, y):
    """Evaluate a 2D catalog entry at ``(x, y)``."""
    if spec.arity != 2:
        raise ValueError(f"{spec.kind.value} has arity 1, eval_2d needs arity 2")
    xa, sx = _as_array(x)
    ya, sy = _as_array(y)
    u = xa + ya if spec.kind is Kind.WeierstrassSum2D else xa * ya
    out = _weierstrass_values(spec.params, u)
    return float(out) if (sx and sy) else out


def argument_map_2d(spec: FunctionSpec, y, v) -> tuple[float, float, float]:
    """Scalar-argument reduction of ``f(y + v*t)`` for a 2D kind.

    Returns ``(u0, c1, c2)`` with ``f(y + v*t) = W(u0 + c1*t + c2*t**2)``
    where W is the underlying 1D series.  The coefficients are computed
    directly from the base point and direction, so a degenerate direction
    gives an exactly zero argument increment.
    """
    if spec.arity != 2:
        raise ValueError(f"{spec.kind.value} is not a 2D kind")
    y0, y1 = float(y[0]), float(y[1])
    v0, v1 = float(v[0]), float(v[1])
    if spec.kind is Kind.WeierstrassSum2D:
        return y0 + y1, v0 + v1, 0.0
    return y0 * y1, y0 * v1 + y1 * v0, v0 * v1


# --------------------------------------------------------------------------
# Analytic derivatives
# --------------------------------------------------------------------------

def _falling_product(gamma: float, n: int) -> float:
    out = 1.0
    for i in range(n):
        out *= gamma - i
    return out


def analytic_derivative(spec: FunctionSpec, n: int, point: float) -> float | None:
    """Exact n-th derivative at ``point`` where the kind admits one.

    Returns None where no finite n-th derivative exists (absent is a value,
    not an error): Weierstrass kinds everywhere, the cusp at the origin for
    orders above the cusp exponent.
    """
    if n < 1:
        raise ValueError(f"derivative order must be >= 1, got {n}")
    if spec.arity != 1:
        raise ValueError("analytic_derivative is defined for 1D entries only")
    p = spec.params
    if spec.kind is Kind.Weierstrass1D:
        return None
    if spec.kind is Kind.Constant:
        return 0.0
    if spec.kind is Kind.Sine:
        return p.amplitude * p.frequency ** n * math.sin(
            p.frequency * point + p.phase + n * math.pi / 2.0
        )
    if spec.kind is Kind.Polynomial:
        out = 0.0
        for j in range(len(p.coeffs) - 1, n - 1, -1):
            out = out * point + p.coeffs[j] * _falling_product(float(j), n)
        # the j == n term carries point**0
        if len(p.coeffs) > n:
            return out
        return 0.0
    # HolderCusp
    if point == 0.0:
        if n > p.gamma:
            return None
        # |x|**gamma contributes nothing below its exponent
        return p.b if n == 1 else 0.0
    smooth = p.b if n == 1 else 0.0
    sign = -1.0 if (point < 0 and n % 2) else 1.0
    return smooth + p.c * _falling_product(p.gamma, n) * abs(point) ** (p.gamma - n) * sign


def max_derivative_order(spec: FunctionSpec, point: float, cap: int = 3) -> int:
    """Largest n <= cap with finite derivatives of every order 1..n at ``point``."""
    n = 0
    while n < cap and analytic_derivative(spec, n + 1, point) is not None:
        n += 1
    return n


# --------------------------------------------------------------------------
# Stable increments
# --------------------------------------------------------------------------

def tail_increment_1d(spec: FunctionSpec, y: float, du, order: int = 0) -> np.ndarray:
    """``f(y + du) - sum_{n<=order} f^(n)(y) du^n / n!`` without cancellation.

    ``order = 0`` is the plain increment ``f(y + du) - f(y)``.  Higher orders
    remove the Taylor head term by term; they require the corresponding
    analytic derivatives to exist at ``y``.  Each kind uses a formulation in
    which the subtracted head never passes through the full function value,
    so the result stays accurate down to tiny ``du``.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    if spec.arity != 1:
        raise ValueError("tail_increment_1d is defined for 1D entries only")
    du = np.asarray(du, dtype=float)
    if order > 0:
        avail = max_derivative_order(spec, y, cap=order)
        if avail < order:
            raise ValueError(
                f"{spec.kind.value} admits derivatives up to order {avail} at "
                f"{y!r}; cannot subtract a degree-{order} Taylor polynomial"
            )
    p = spec.params

    if spec.kind is Kind.Constant:
        return np.zeros_like(du)

    if spec.kind is Kind.Weierstrass1D:
        return _weierstrass_increment(p, y, du)

    if spec.kind is Kind.Polynomial:
        # Taylor coefficients about y beyond the subtracted head, exactly.
        deg = len(p.coeffs) - 1
        if order >= deg:
            return np.zeros_like(du)
        coeffs = [
            analytic_derivative(spec, m, y) / math.factorial(m)
            for m in range(order + 1, deg + 1)
        ]
        acc = np.zeros_like(du)
        for c in reversed(coeffs):
            acc = acc * du + c
        return acc * du ** (order + 1)

    if spec.kind is Kind.Sine:
        inc = 2.0 * p.amplitude * np.cos(
            p.frequency * (y + du / 2.0) + p.phase
        ) * np.sin(p.frequency * du / 2.0)
        for m in range(1, order + 1):
            inc = inc - analytic_derivative(spec, m, y) / math.factorial(m) * du ** m
        return inc

    # HolderCusp
    if y == 0.0:
        pow_part = p.c * np.abs(du) ** p.gamma
        if order == 0:
            return p.b * du + pow_part
        return pow_part  # b*du removed exactly, higher head terms vanish
    inc = p.b * du + p.c * (np.abs(y + du) ** p.gamma - abs(y) ** p.gamma)
    for m in range(1, order + 1):
        inc = inc - analytic_derivative(spec, m, y) / math.factorial(m) * du ** m
    return inc


# --------------------------------------------------------------------------
# JSON (de)serialization — the function-input contract of the CLI
# --------------------------------------------------------------------------

_SCHEMAS: dict[Kind, dict[str, str]] = {
    Kind.Weierstrass1D: {"lambda": "float > 1", "s": "float in (1, 2)", "tol": "float > 0 (default 1e-12)"},
    Kind.WeierstrassSum2D: {"lambda": "float > 1", "s": "float in (1, 2)", "tol": "float > 0 (default 1e-12)"},
    Kind.WeierstrassProd2D: {"lambda": "float > 1", "s": "float in (1, 2)", "tol": "float > 0 (default 1e-12)"},
    Kind.HolderCusp: {"a": "float", "b": "float", "c": "float != 0", "gamma": "float > 0, non-integer"},
    Kind.Polynomial: {"coeffs": "list of floats, ascending degree"},
    Kind.Sine: {"amplitude": "float (default 1)", "frequency": "float (default 1)", "phase": "float (default 0)"},
    Kind.Constant: {"value": "float (default 0)"},
}


def param_schema(kind: Kind) -> dict[str, str]:
    return dict(_SCHEMAS[kind])


def spec_to_json(spec: FunctionSpec) -> dict:
    p = spec.params
    if isinstance(p, WeierstrassParams):
        params = {"lambda": p.lam, "s": p.s, "tol": p.tol}
    elif isinstance(p, CuspParams):
        params = {"a": p.a, "b": p.b, "c": p.c, "gamma": p.gamma}
    elif isinstance(p, PolynomialParams):
        params = {"coeffs": list(p.coeffs)}
    elif isinstance(p, SineParams):
        params = {"amplitude": p.amplitude, "frequency": p.frequency, "phase": p.phase}
    else:
        params = {"value": p.value}
    return {"kind": spec.kind.value, "params": params, "arity": spec.arity}


def spec_from_json(obj) -> FunctionSpec:
    """Parse a spec from a JSON object or string."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict):
        raise ValueError("function spec must be a JSON object")
    try:
        kind = Kind(obj["kind"])
    except KeyError:
        raise ValueError("function spec is missing 'kind'") from None
    except ValueError:
        known = ", ".join(k.value for k in Kind)
        raise ValueError(f"unknown kind {obj.get('kind')!r}; known kinds: {known}") from None
    raw = obj.get("params", {})
    if not isinstance(raw, dict):
        raise ValueError("'params' must be a JSON object")
    unknown = set(raw) - set(_SCHEMAS[kind])
    if unknown:
        raise ValueError(f"unknown parameter(s) for {kind.value}: {sorted(unknown)}")
    if kind in _WEIERSTRASS_KINDS:
        params = WeierstrassParams(
            lam=float(raw["lambda"]), s=float(raw["s"]), tol=float(raw.get("tol", 1e-12))
        )
    elif kind is Kind.HolderCusp:
        params = CuspParams(
            a=float(raw["a"]), b=float(raw["b"]), c=float(raw["c"]), gamma=float(raw["gamma"])
        )
    elif kind is Kind.Polynomial:
        params = PolynomialParams(tuple(raw["coeffs"]))
    elif kind is Kind.Sine:
        params = SineParams(
            amplitude=float(raw.get("amplitude", 1.0)),
            frequency=float(raw.get("frequency", 1.0)),
            phase=float(raw.get("phase", 0.0)),
        )
    else:
        params = ConstantParams(value=float(raw.get("value", 0.0)))
    spec = FunctionSpec(kind, params)
    if "arity" in obj and int(obj["arity"]) != spec.arity:
        raise ValueError(f"{kind.value} has arity {spec.arity}, spec says {obj['arity']}")
    return spec
