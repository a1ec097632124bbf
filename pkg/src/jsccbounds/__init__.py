"""Finite-blocklength distortion bounds for short binary codes, with
broadcast extensions, exact brute-force oracles, and grid verifiers."""

__version__ = "0.1.0"

from .binary_info import (
    NAT_LOG2,
    DomainError,
    Phi,
    R,
    beta,
    conv,
    g,
    h_b,
    h_b_inv,
    h_b_prime,
    info_fn,
    kappa,
    mgl_phi,
    mgl_phi_deriv,
    nu,
    phi,
    psi,
    vartheta,
)
from .bounds_core import (
    LowerBoundReport,
    SystemParams,
    d_asym,
    d_asym_deriv,
    eta,
    expected_sphere_floor,
    f_factor,
    gamma_corr,
    gap_lower_bound,
    gap_rhs,
    separation_upper,
    sphere_floor,
    sphere_floor_at_weight,
    sum_distortion_lb,
    tau_star,
)
from .broadcast_region import (
    BinaryBroadcastParams,
    ErasureParams,
    GaussianBroadcastParams,
    RegionPoint,
    d1_feasibility_margin,
    d2_floor,
    d2_floor_slack,
    erasure_d2_floor,
    fp_binary,
    g_bec,
    g_bsc,
    g_spherical_ub,
    gaussian_bound,
    gaussian_d2_floor,
    gaussian_fp,
    gaussian_gq,
    gaussian_rate,
    gaussian_rbar,
    general_compose,
    outer_bound_slack,
    rbar_binary,
    region_trace,
)
from .oracles import (
    ALL_SUITES,
    DEFAULT_BUDGET,
    BudgetExceeded,
    EncoderTable,
    ExactValue,
    FrontierPoint,
    ViolationReport,
    binomial_gamma_approx,
    binomial_gamma_exact,
    broadcast_frontier,
    converse_search_gq,
    coupling_distance_exact,
    encoder_from_index,
    p2p_bruteforce,
    rbar_grid,
    sphere_bruteforce,
    verify_inequalities,
)
