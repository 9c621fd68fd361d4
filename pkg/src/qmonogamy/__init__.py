"""Multi-qubit entanglement monogamy toolkit.

Measures (linear entropy, concurrence and its assisted dual, tangles),
Schmidt-cut discriminant machinery with independent cross-checking
evaluation routes, structured inequality checkers, and a falsification
harness with a CLI.  Hot kernels run in a compiled extension when built,
with a pure-Python fallback selected at import.
"""

from ._backend import JacobiConvergenceError, backend_name
from .harness import (
    CampaignSummary,
    HuntSummary,
    RunConfig,
    family_table,
    fuzz_campaign,
    hunt_campaign,
    measure_document,
)
from .inequalities import (
    DEFAULT_TOLERANCE,
    BipartitionTangles,
    InequalityReport,
    bipartition_tangles,
    check_aggregate_bound,
    check_chain,
    check_ckw,
    check_dual_monogamy,
    check_mutual_entropy_sum,
    check_mutual_vs_assistance,
    check_pair_cut_bounds,
    check_tangle_sum_vs_mutual,
    check_three_qubit_equality,
    evaluate_pure_state,
)
from .measures import (
    MeasureSet,
    concurrence,
    concurrence_of_assistance,
    decomposition_average_concurrence,
    linear_entropy,
    linear_mutual_entropy,
    r_spectrum,
    spin_flip,
    tangles,
)
from .qlinalg import (
    Decomposition,
    DensityMatrix,
    PureState,
    SpectralDecomposition,
    apply_single_qubit_unitary,
    haar_random_pure,
    haar_random_unitary,
    hermitian_eig,
    partial_trace,
    permute_qubits,
    psd_sqrt,
    read_state_file,
    sample_decomposition,
    state_family,
    write_state_file,
)
from .schmidt_discriminant import (
    SchmidtForm,
    alpha_table,
    discriminant4_closed_form,
    discriminant_direct,
    discriminant_via_alpha,
    lambda_delta,
    p_matrix,
    schmidt_cut,
    sigma_matrices,
    state_discriminant,
    v_matrix,
    v_spectrum_check,
)

__version__ = "0.1.0"
