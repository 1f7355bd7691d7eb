"""Relativistic kinematics and Poincare-covariant quantum mechanics in the
Chang-Tangherlini clock synchronization.

The package covers the full chain from classical frame kinematics to the
quantum operator algebra: CT frame transforms, intertwiners and metrics;
the free-particle canonical formalism with its covariant Poisson bracket;
momentum eigenstates, Wigner rotations and the unitary Lorentz orbit;
covariant spin tensors with an invariant spin square; and the momentum-space
position operators with their localized states, checked against the
Newton-Wigner operator in the preferred frame.
"""

__version__ = "0.1.0"

from .errors import (
    ConsistencyError,
    CTQMError,
    DomainError,
    FrameMismatchError,
    MeasureMismatchError,
    NormalizationMismatchError,
    SingularBracketError,
    VarianceError,
)
from .kinematics import (
    CONTRAVARIANT,
    COVARIANT,
    PREFERRED,
    FourVector,
    FourVelocity,
    FrameTransform,
    MetricTensor,
    boost_from_velocity,
    boost_to_frame,
    boost_transform,
    closed_path_average_speed,
    ct_from_ep,
    ep_from_ct,
    four_velocity_from_space,
    intertwiner,
    light_speed,
    light_speed_from_null_roots,
    lorentz_boost,
    lorentz_rotation,
    metric,
    pairing,
    preferred_boost_matrix,
    relative_four_velocity,
    rotation_transform,
    transform_from_lorentz,
    transform_vector,
    velocity_shell_residual,
)
from .classical import (
    Observable,
    PhaseSpacePoint,
    canonical_momenta,
    covariant_momentum,
    evolve_observable,
    hamiltonian,
    integrate_trajectory,
    lagrangian,
    observable_product,
    poisson_bracket,
    velocity_from_momentum,
)
from .representation import (
    INVARIANT,
    STANDARD,
    MomentumBasisState,
    StateVector,
    apply_spin,
    basis_from_rest,
    dispersion_energy,
    four_momentum,
    inner_product,
    lorentz_action,
    measure_weight,
    q0_shift,
    rescale_normalization,
    translate_state,
    uk_scalar,
    wigner_rotation,
)
from .spin import (
    SpinRepresentation,
    SpinTensor,
    angular_momentum_matrices,
    axis_angle,
    gamma_spatial,
    rest_spin_tensor,
    rotation_from_axis_angle,
    rotation_rep,
    spin_dimension,
    spin_square,
    spin_tensor,
)
from .wavepacket import (
    MomentumGrid,
    WavePacket,
    commutator_residual,
    gaussian_packet,
    localized_wavefunction,
    mass_squared_apply,
    momentum_apply,
    newton_wigner_apply,
    position_apply,
    position_apply_invariant,
    rescale_measure,
    scalar_product,
    translate_packet,
)
from .verification import VerificationReport, run_suite
