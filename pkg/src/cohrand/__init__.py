"""Quantum coherence as intrinsic measurement randomness: measures,
convex-roof optimization, incoherent channels, distillation, and a
randomness-extraction pipeline."""

from .channels import (
    KrausSet,
    MonotonicityCheck,
    PropertyId,
    PropertyReport,
    SelectiveOutcome,
    apply_channel,
    apply_selective,
    check_convexity,
    check_monotonicity,
    dephasing_kraus,
    identity_kraus,
    is_incoherent_kraus_set,
    projection_partition_kraus,
    random_incoherent_kraus,
)
from .distill import (
    DistillationReport,
    ExactRun,
    GroupOutcome,
    binomial_outcome_distribution,
    coherence_loss_ledger,
    distill_exact,
    distill_simulate,
    log2_binomial,
    regularized_roof_estimate,
    sample_exact_outcomes,
)
from .measures import (
    MeasureId,
    MeasureValue,
    binary_entropy,
    c_l1,
    c_rel_ent,
    coherence_concurrence_qubit,
    concurrence_bloch,
    concurrence_spin_flip,
    r_pure,
    r_qubit_analytic,
)
from .rng import (
    ExtractionReport,
    OutcomeStream,
    PipelineComparison,
    empirical_entropy,
    min_entropy,
    monobit_z,
    pipeline_compare,
    sample_measurement,
    toeplitz_extract,
)
from .roof import (
    Decomposition,
    RoofConfig,
    RoofResult,
    brute_force_roof_qubit,
    decomposition_from_isometry,
    optimize_roof,
    roof_objective,
)
from .states import (
    DensityMatrix,
    PureState,
    basis_state,
    bloch_to_density,
    dephase,
    density_to_bloch,
    haar_random_pure,
    maximally_coherent_state,
    pure_state,
    random_density,
    shannon_entropy,
    tensor,
    validate_density,
    von_neumann_entropy,
)
from .verify import run_property_suite

__all__ = [name for name in dir() if not name.startswith("_")]
