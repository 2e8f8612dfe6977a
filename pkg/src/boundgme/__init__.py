"""Entanglement of multipartite bound entangled states.

Constructors for the Smolin and Dur states and their relatives, the
entanglement eigenvalue and geometric measures of pure states, convex-roof
upper bounds for mixed states with certificate decompositions, negativity,
relative entropy to candidate separable states, the GHZ-diagonal normal form
with its distillability predicates, and the trigonometric overlap bounds.
"""

from .distill import (
    DepolarizedCoeffs,
    bell_violation_threshold,
    consistency_report,
    delta,
    depolarize,
    ghz_basis,
    max_delta_nondistillable,
    nondistillable_all_partitions,
    partition_for_j,
)
from .geometric import (
    GmeOptions,
    LambdaResult,
    ProductState,
    e_log2_pure,
    e_sin2_pure,
    lambda_max,
    stationarity_residual,
    support_lambda_profile,
)
from .inequalities import (
    f_n,
    psi_y_closest_product,
    psi_y_lambda_closed,
    smolin_overlap_norm_sq,
    smolin_remainder,
)
from .roof import (
    Decomposition,
    RoofOptions,
    average_entanglement,
    certificate_dur,
    certificate_smolin,
    optimize_roof,
    reconstruct,
)
from .spectral import dur_negativity_closed, negativity, relative_entropy
from .states import (
    bell,
    bell_like,
    dur,
    ghz,
    psi_y,
    sigma_conjectured,
    smolin,
    u_state,
    v_state,
    x_state,
    xbar_view,
)
from .tensor import (
    DensityMatrix,
    PartySplit,
    PureState,
    StateError,
    eig_hermitian,
    load_state,
    matrix_log2_on_support,
    overlap,
    partial_trace,
    partial_transpose,
    save_state,
    tensor_product,
)

__version__ = "0.1.0"
