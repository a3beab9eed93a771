"""Heat evolution on the real line for initial data that is the
distributional derivative of an L^p function, together with the sharp
constants controlling the evolution and a verification suite that
measures every bound against adaptive quadrature."""

from .constants import (
    ExponentTriple,
    K_const,
    L_const,
    M_const,
    beta_extremizer,
    c_const,
    conjugate,
    r_from,
    young_constant,
)
from .convolve import (
    convolve_grid,
    convolve_point,
    convolve_smooth_derivative_check,
    convolution_lp_norm,
)
from .exceptions import (
    ApproximationError,
    DomainError,
    LpHeatError,
    MembershipError,
    QuadratureAccuracyError,
    ResolutionError,
    SearchFailureError,
    UnsupportedOrderError,
)
from .heat_solver import (
    Solution,
    TestFunction,
    continuity_bound,
    default_time_sweep,
    gaussian_test_function,
    ic_convergence,
    norm_limit_check,
    pde_residual,
    plateau_test_function,
    solution_primitive_norm,
    solve_at,
    solve_values,
    weak_ic_check,
)
from .kernel import (
    KernelPoint,
    MAX_DERIV_ORDER,
    alpha_coefficient,
    delta_coefficient,
    semigroup_residual,
    theta,
    theta_deriv,
    theta_deriv_norm_closed,
    theta_norm_closed,
    theta_power,
    theta_time_deriv,
)
from .lp_space import (
    GaussianPower,
    GridFunction,
    Indicator,
    PrimitiveFunction,
    Sampled,
    StepCombo,
    TailLog,
    TruncatedSine,
    antiderivative,
    combo_lp_norm,
    evaluate,
    lp_norm,
    primitive_from_json,
    primitive_to_json,
    sample,
    sample_function,
    translate,
)
from .lprime import (
    LprimeElement,
    StepApproximation,
    dirac_difference,
    element_from_json,
    element_to_json,
    from_primitive,
    lprime_norm,
    pairing,
    step_approximation,
)
from .estimates import (
    EstimateReport,
    NonmembershipEvidence,
    decay_bound_check,
    extremal_family_ratio,
    limit_at_infinity,
    nonmembership_probe,
    rate_sharpness,
    run_suite,
    sign_change,
    variation_lower_bound,
    verify_lprime_bound,
    verify_lr_bound,
    young_equality_gap,
    zero_integral,
)
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, integrate

__version__ = "0.1.0"
