"""Local fractional derivatives and critical orders of fractal functions.

The package computes Riemann-Liouville fractional derivatives of sampled
profiles, takes the base-point limit that defines the local fractional
derivative, estimates critical orders (pointwise Holder exponents), extends
both to directions and partials of 2D functions, and fits local fractional
Taylor models.
"""

from .catalog import (
    ConstantParams,
    CuspParams,
    FunctionSpec,
    Kind,
    PolynomialParams,
    SineParams,
    WeierstrassParams,
    analytic_derivative,
    constant,
    eval_1d,
    eval_2d,
    holder_cusp,
    polynomial,
    sine,
    spec_from_json,
    spec_to_json,
    tail_increment_1d,
    truncation_depth,
    weierstrass_1d,
    weierstrass_prod_2d,
    weierstrass_sum_2d,
)
from .directional import (
    CriticalOrderField,
    DirectionProbe,
    critical_order_map,
    direction_fan,
    directional_critical_order,
    directional_lfd,
    field_to_csv,
    field_to_json,
    partial_lfd,
    phi_profile,
)
from .fraccalc import (
    SampledPath,
    ScalingCheckReport,
    gamma_value,
    power_law_rl_derivative,
    rl_frac_derivative,
    rl_frac_derivative_higher,
    rl_frac_integral,
    scaling_defect,
)
from .lfd import (
    Classification,
    CriticalOrderEstimate,
    HolderEstimate,
    InconclusiveLimitError,
    LfdEstimate,
    Method,
    ScalingDiagnostics,
    Side,
    Thresholds,
    WindowSchedule,
    critical_order,
    holder_exponent_oracle,
    lfd_at,
    profile,
    scale_exponent,
)
from .taylor import (
    ApproximationReport,
    LocalModel,
    ModelUnavailableError,
    PiecewiseScalingModel,
    build_local_model,
    evaluate_model,
    evaluate_piecewise,
    frac_residual,
    piecewise_scaling_approx,
    remainder_profile,
)

__version__ = "0.1.0"
