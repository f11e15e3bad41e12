"""Collective radiative properties of a finite 1-D chain of two-level emitters."""

from .scales import (
    AtomicScales,
    ChainConfig,
    ConfigError,
    config_from_dict,
    config_from_json,
    derive_scales,
    dimensionless_separation,
)
from .coupling import (
    CouplingMatrix,
    coupling_matrix,
    coupling_sweep,
    transfer_electrostatic,
    transfer_exact,
)
from .states import (
    CorrelationMatrix,
    SignState,
    alternating_state,
    enumerate_sign_states,
    pair_correlations,
    symmetric_state,
)
from .damping import (
    DampingResult,
    QuadratureAccuracyError,
    angle_sweep,
    damping_general,
    damping_quadrature_oracle,
    damping_symmetric,
    f_kernel,
    n_scaling_sweep,
)
from .emission import (
    CausalityError,
    EmissionGeometry,
    IntensityTrace,
    build_geometry,
    emission_sweep,
    total_intensity,
    two_atom_asymptotic,
    two_atom_intensity,
)
from .sweeps import SweepTable

__version__ = "0.1.0"

__all__ = [
    "AtomicScales",
    "CausalityError",
    "ChainConfig",
    "ConfigError",
    "CorrelationMatrix",
    "CouplingMatrix",
    "DampingResult",
    "EmissionGeometry",
    "IntensityTrace",
    "QuadratureAccuracyError",
    "SignState",
    "SweepTable",
    "alternating_state",
    "angle_sweep",
    "build_geometry",
    "config_from_dict",
    "config_from_json",
    "coupling_matrix",
    "coupling_sweep",
    "damping_general",
    "damping_quadrature_oracle",
    "damping_symmetric",
    "derive_scales",
    "dimensionless_separation",
    "emission_sweep",
    "enumerate_sign_states",
    "f_kernel",
    "n_scaling_sweep",
    "pair_correlations",
    "symmetric_state",
    "total_intensity",
    "transfer_electrostatic",
    "transfer_exact",
    "two_atom_asymptotic",
    "two_atom_intensity",
]
