"""
Optimal input states for interaction-free measurement (IFM).

A photon passes N times through a rotation followed by the object's
absorption channel. The package computes how well one can tell "object
present" from "object absent" while keeping the photon's absorption
probability low, for opaque and semitransparent objects alike.
"""

from .asymptotics import (
    AsymptoticEstimate,
    angles,
    fit_order,
    geometric_ladder,
    leading_term,
    ploss_min_asym,
    ploss_plus_asym,
    ploss_plus_exact,
)
from .bloch import BlochVector, polar_state, state_from_bloch
from .channels import (
    IfmParams,
    KrausChannel,
    absorption_channel,
    apply_channel,
    detector_model_channel,
    generalized_trace_distance,
    ifm_absent,
    ifm_present,
    optimal_projectors,
    restrict_to_12v,
    rotation_channel,
)
from .errors import (
    DegenerateTransparencyError,
    DimensionMismatchError,
    InvalidSpecError,
    NoConvergenceError,
    NotHermitianError,
    NoZeroErrorStateError,
)
from .metrics import (
    BipartitePureState,
    DiscriminationResult,
    discriminate,
    inner_pp,
    p_error,
    p_error_density,
    p_fail,
    p_loss,
    pure_trace_norm,
)
from .optimal import (
    Objective,
    Optimum,
    best_zero_error,
    brute_force_min,
    entangled_family_check,
    entangled_family_state,
    min_ploss,
    opaque_specials,
    zero_error_states,
)
from .smallmat import hermitian_eigen, kron, partial_trace, trace_norm
from .transfer import (
    Regime,
    TransferCoeffs,
    basis_change,
    closed_form_C,
    coeffs,
    k_values,
    transfer_absent,
    transfer_present,
)
from .verify import run_verify

__version__ = "0.1.0"
