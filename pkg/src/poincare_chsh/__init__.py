"""CHSH Bell tests with measurement bases anywhere on the Poincare-Bloch sphere."""

__version__ = "0.1.0"

from .bases import (  # noqa: E402
    DR,
    HD,
    HR,
    GreatCircle,
    MeasurementDirection,
    ProjectorPair,
    bloch_vector,
    circle_point,
    ellipticity,
    projector_pair,
    rotated_x,
    rotated_z,
    rotation_matrix,
)
from .chsh import (  # noqa: E402
    PATH_ROWS,
    TSIRELSON,
    ChshSetting,
    PathSpec,
    circle_pair_scan,
    circle_pair_smax,
    horodecki_smax,
    landscape,
    max_s_over_angles,
    path_scan,
    s_value,
)
from .correlations import (  # noqa: E402
    closed_form_expectation,
    correlation_matrix,
    expectation_operator,
    expectation_probs,
    expectation_tensor,
    joint_probabilities,
)
from .states import (  # noqa: E402
    CHI,
    PHI_PLUS,
    PHI_PRIME_PLUS,
    PSI_PRIME_PLUS,
    DensityMatrix,
    NamedState,
    TwoQubitState,
    apply_single_qubit,
    density_matrix,
    fidelity,
    make_named_state,
    mix_with_white_noise,
    phi_delta,
)
