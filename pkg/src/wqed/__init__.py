"""Scattering of single photons and weak pulses on waveguide-coupled emitters.

The package models chains of multi-level emitters coupled to a 1D waveguide:
it assembles and inverts the single-excitation non-Hermitian Hamiltonian,
evaluates elastic transmission/reflection spectra and closed-form references,
reduces driven lambda emitters to per-photon rates with ground-state
dynamics, and scores heralded superposition preparation.  Scenario TOML
files plus the ``wqed`` command line drive batch table output.
"""

from .version import __version__
from .errors import (
    AsymmetricCoupling,
    BasisMismatch,
    DivisionByZero,
    EmptyManifold,
    IoError,
    MultiGroundElastic,
    NonfiniteEntry,
    NumericalError,
    OutOfRange,
    ParseError,
    SchemaError,
    SingularMatrix,
    StepTooLarge,
    UnknownLevel,
    ValidationError,
    WqedError,
)
from .emitters import (
    CoherentCoupling,
    CombinedBasis,
    DipoleDipoleCoupling,
    Emitter,
    JointExcited,
    JointGround,
    Level,
    SystemSpec,
    Transition,
    build_single_excitation_basis,
    total_decay_rate,
    validate_system,
)
from .hamiltonian import (
    EffectiveParams3,
    EffectiveParamsV,
    NhInverse,
    NhMatrix,
    assemble_nh,
    effective_params_two_emitter,
    effective_params_v,
    invert_nh,
)
from .scattering import (
    AmplitudePair,
    ScatteringKernel,
    Spectrum,
    SweepWarning,
    amplitudes_at,
    closed_form_dipole_pair,
    closed_form_two_emitters,
    closed_form_two_level,
    closed_form_two_plus_v,
    closed_form_v_system,
    coupling_tensor,
    output_amplitudes,
    require_symmetric,
    scattering_kernel,
    sweep_spectrum,
)
from .dynamics import (
    EffectiveElements,
    GroundDensity,
    LambdaParams,
    PulseSpec,
    Rates,
    compute_rates,
    effective_hamiltonian_elements,
    evolve_ground_state,
)
from .protocols import (
    ClickProbs,
    DetectionConfig,
    FidelityParams,
    FilteredProbs,
    average_fidelity,
    average_fidelity_numeric,
    click_probabilities,
    conditional_fidelity,
    filtered_photon_probs,
    output_intensity,
)
from .table import ResultTable, emit_table, format_cell
from .scenario import (
    CurveSpec,
    GridSpec,
    RunSpec,
    Scenario,
    apply_curve,
    lambda_params_from_system,
    load_preset,
    parse_scenario,
    preset_names,
    preset_text,
    serialize_scenario,
)
from .runner import run_scenario, spectrum_sweeps

__all__ = [name for name in dir() if not name.startswith("_")]
