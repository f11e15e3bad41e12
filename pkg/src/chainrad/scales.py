"""Chain configuration and derived single-atom scales.

Internally everything is SI. The boundary formats (JSON config, CLI,
CSV metadata) speak the units the quantum-optics literature uses:
eV for transition energies, Angstrom for lengths, e*Angstrom for
transition dipoles, degrees for the polarization angle.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

from scipy import constants as const

ANGSTROM = 1e-10  # m

#: CODATA constants frozen into every CSV metadata header.
CODATA = {
    "hbar_J_s": const.hbar,
    "c_m_s": const.c,
    "epsilon_0_F_m": const.epsilon_0,
    "elementary_charge_C": const.e,
}


class ConfigError(ValueError):
    """A chain configuration failed validation or could not be parsed."""


@dataclass(frozen=True)
class ChainConfig:
    """Physical description of the emitter chain.

    Parameters
    ----------
    n_atoms : int
        Number of atoms N on the chain.
    lattice_const : float
        Lattice constant a in meters.
    transition_energy : float
        Two-level transition energy E_A in eV.
    dipole_moment : float
        Transition dipole magnitude in e*Angstrom.
    polarization_angle : float
        Angle between the transition dipole and the chain axis, radians.
        Only cos^2 of the angle ever enters, so values outside
        [0, pi/2] are folded back into that interval.
    gamma_override : float or None
        Single-atom damping rate in 1/s that replaces the derived
        value when given.
    """

    n_atoms: int
    lattice_const: float
    transition_energy: float
    dipole_moment: float
    polarization_angle: float = 0.0
    gamma_override: float | None = None

    def __post_init__(self):
        if self.n_atoms < 1:
            raise ConfigError(f"n_atoms must be >= 1, got {self.n_atoms}")
        if not self.lattice_const > 0:
            raise ConfigError(f"lattice_const must be > 0, got {self.lattice_const}")
        if not self.transition_energy > 0:
            raise ConfigError(
                f"transition_energy must be > 0, got {self.transition_energy}"
            )
        if not self.dipole_moment > 0:
            raise ConfigError(f"dipole_moment must be > 0, got {self.dipole_moment}")
        if self.gamma_override is not None and not self.gamma_override > 0:
            raise ConfigError(f"gamma_override must be > 0, got {self.gamma_override}")
        phi = math.fmod(self.polarization_angle, math.pi)
        if phi < 0:
            phi += math.pi
        if phi > math.pi / 2:
            phi = math.pi - phi
        object.__setattr__(self, "polarization_angle", phi)

    def with_overrides(self, **kwargs) -> "ChainConfig":
        return replace(self, **kwargs)


@dataclass(frozen=True)
class AtomicScales:
    """Single-atom scales derived from a :class:`ChainConfig`.

    All fields are SI: omega_a in rad/s, q_a in 1/m, lambda_a in m,
    gamma_a in 1/s. ``gamma_overridden`` records whether gamma_a came
    from the config override instead of the radiative formula.
    """

    omega_a: float
    q_a: float
    lambda_a: float
    gamma_a: float
    gamma_overridden: bool = False


def derive_scales(config: ChainConfig) -> AtomicScales:
    """Derive frequency, wavenumber, wavelength and damping rate.

    The damping rate is the free-space spontaneous emission rate of a
    single excited two-level atom,

        gamma_a = omega_a^3 mu^2 / (3 pi epsilon_0 hbar c^3),

    unless the config carries a ``gamma_override``.
    """
    energy_j = config.transition_energy * const.e
    omega_a = energy_j / const.hbar
    q_a = energy_j / (const.hbar * const.c)
    lambda_a = 2.0 * math.pi / q_a
    if config.gamma_override is not None:
        gamma_a = config.gamma_override
        overridden = True
    else:
        mu_si = config.dipole_moment * const.e * ANGSTROM
        gamma_a = omega_a**3 * mu_si**2 / (
            3.0 * math.pi * const.epsilon_0 * const.hbar * const.c**3
        )
        overridden = False
    return AtomicScales(
        omega_a=omega_a,
        q_a=q_a,
        lambda_a=lambda_a,
        gamma_a=gamma_a,
        gamma_overridden=overridden,
    )


def dimensionless_separation(config: ChainConfig) -> float:
    """Lattice constant in units of the inverse transition wavenumber, q_a * a."""
    return derive_scales(config).q_a * config.lattice_const


# JSON config keys, all at the external-unit boundary.
_JSON_KEYS = {
    "n_atoms",
    "lattice_const_angstrom",
    "transition_energy_ev",
    "dipole_e_angstrom",
    "polarization_deg",
    "gamma_override_hz",
}


def config_from_dict(data: dict) -> ChainConfig:
    """Build a ChainConfig from the external JSON key set."""
    unknown = set(data) - _JSON_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    missing = {
        "n_atoms",
        "lattice_const_angstrom",
        "transition_energy_ev",
        "dipole_e_angstrom",
    } - set(data)
    if missing:
        raise ConfigError(f"missing config keys: {sorted(missing)}")
    try:
        return ChainConfig(
            n_atoms=int(data["n_atoms"]),
            lattice_const=float(data["lattice_const_angstrom"]) * ANGSTROM,
            transition_energy=float(data["transition_energy_ev"]),
            dipole_moment=float(data["dipole_e_angstrom"]),
            polarization_angle=math.radians(float(data.get("polarization_deg", 0.0))),
            gamma_override=(
                float(data["gamma_override_hz"])
                if data.get("gamma_override_hz") is not None
                else None
            ),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad config value: {exc}") from exc


def config_from_json(path) -> ChainConfig:
    """Load a ChainConfig from a JSON file."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    return config_from_dict(data)


def config_to_dict(config: ChainConfig) -> dict:
    """Inverse of :func:`config_from_dict` (external units)."""
    out = {
        "n_atoms": config.n_atoms,
        "lattice_const_angstrom": config.lattice_const / ANGSTROM,
        "transition_energy_ev": config.transition_energy,
        "dipole_e_angstrom": config.dipole_moment,
        "polarization_deg": math.degrees(config.polarization_angle),
    }
    if config.gamma_override is not None:
        out["gamma_override_hz"] = config.gamma_override
    return out
