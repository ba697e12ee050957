"""Entanglement of a two-parameter family of 2 x n states: construction, LOCC twirl, measures."""

from .linalg import (
    BipartiteDims,
    HermitianEigenDecomposition,
    binary_entropy,
    hermitian_eig,
    matrix_from_json,
    matrix_to_json,
    partial_trace_B,
    partial_transpose,
    tensor_product,
    trace_distance,
    trace_norm,
    von_neumann_entropy,
)
from .measures import (
    EntanglementReport,
    RegionLabel,
    classify_region,
    cllh_lower_bound,
    concurrence_2x2,
    curly_E,
    eof_exact_varrho,
    eof_exact_werner,
    eof_lower_bound,
    eof_upper_bound,
    negativity,
    negativity_closed_form,
    report,
)
from .roof import ConvexRoofConfig, convex_roof_estimate, optimize_convex_roof, pure_state_entanglement
from .states import (
    HigherDimParams,
    TwoParamState,
    bell_vectors,
    build_higher_dim_state,
    build_two_param_state,
    build_varrho,
    build_werner_line,
    class_residual,
    extract_parameters,
)
from .twirl import (
    LocalUnitary,
    MixtureStep,
    apply_bilateral,
    check_uu_invariance,
    monte_carlo_twirl,
    protocol_steps,
    sample_g2n,
    twirl_pipeline,
    u_cycle_T,
    u_flip_k,
    u_hadamard_H,
    u_swap01,
    u_theta,
)

__version__ = "0.1.0"
