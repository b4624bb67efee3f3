"""Two-photon Bell-state generation on a lossless non-symmetric beam splitter."""

from .beamsplitter import (
    MIRROR,
    SYMMETRIC,
    BeamSplitterParams,
    Mode,
    from_reflectance,
    make_beam_splitter,
    mode_transform,
    verify_unitarity,
)
from .bell import (
    BellCoefficients,
    DegenerateArrangementWarning,
    DetectionStats,
    FidelityReport,
    bell_coefficients_closed_form,
    bell_decompose,
    case_config,
    classify_coincidence,
    coincidence_probabilities,
    fidelity_direct,
    fidelity_ratio,
    postselected_fidelity,
)
from .circuit import (
    PartialDistinguishabilityOutput,
    PolarizationRotation,
    ScenarioConfig,
    apply_beam_splitter,
    apply_polarization_rotation,
    distinguishable_propagate,
    simulate_scenario,
)
from .oracle import oracle_equivalence_suite, oracle_propagate
from .states import (
    BELL_STATES,
    DistinguishableTwoPhotonState,
    JonesVector,
    TwoPhotonState,
    norm,
    overlap,
    product_input_state,
)

__version__ = "0.1.0"
