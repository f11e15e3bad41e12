"""Retarded far-field emission intensity of the chain.

The observation point sits on the x axis at (x, 0, 0); the atoms sit on
the z axis at R_n = (n-1) a. Each atom radiates a far-zone dipole field
with its own retardation t_n = |r - R_n|/c and dipole angle
phi_n = pi - phi - alpha_n, tan(alpha_n) = x/R_n. Every correlator
decays at the single-atom rate (independent-atom regime, q_a a > 1);
intensities are reported relative to

    I_0(x) = mu^2 omega_a^4 / (16 pi^2 epsilon_0 c^3 x^2).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import constants as const

from .scales import ANGSTROM, AtomicScales, ChainConfig, derive_scales
from .states import SignState, pair_correlations
from .sweeps import SweepTable


class CausalityError(ValueError):
    """Intensity requested before the light from some atom can arrive."""


@dataclass(frozen=True)
class EmissionGeometry:
    """Per-atom observation geometry for a chain observed at (obs_x, 0, 0).

    All lengths in meters, times in seconds, angles in radians.
    """

    obs_x: float
    polarization_angle: float
    atom_z: np.ndarray    # R_n
    phi_n: np.ndarray     # dipole angle seen from atom n
    dist_n: np.ndarray    # |r - R_n|
    retard_n: np.ndarray  # dist_n / c
    unit_n: np.ndarray    # N x 3 unit vectors (r - R_n)/|r - R_n|


def _geometry(n: int, a: float, phi: float, obs_x: float) -> EmissionGeometry:
    """Geometry arrays for n atoms at spacing a >= 0 (coincident allowed)."""
    if not obs_x > 0:
        raise ValueError(f"obs_x must be > 0, got {obs_x}")
    if a < 0:
        raise ValueError(f"lattice constant must be >= 0, got {a}")
    atom_z = a * np.arange(n, dtype=float)
    dist = np.hypot(obs_x, atom_z)
    # alpha = arctan(obs_x / R); atan2 gives pi/2 at R = 0
    alpha = np.arctan2(obs_x, atom_z)
    phi_n = math.pi - phi - alpha
    unit = np.column_stack(
        [np.full(n, obs_x), np.zeros(n), -atom_z]
    ) / dist[:, None]
    return EmissionGeometry(
        obs_x=obs_x,
        polarization_angle=phi,
        atom_z=atom_z,
        phi_n=phi_n,
        dist_n=dist,
        retard_n=dist / const.c,
        unit_n=unit,
    )


def build_geometry(config: ChainConfig, obs_x: float) -> EmissionGeometry:
    """Derive the per-atom angles, distances and retardation times.

    Warns when the observation point is not comfortably in the far zone
    (obs_x < 10 lambda_a), where the pure 1/r field is not justified.
    """
    if not obs_x > 0:
        raise ValueError(f"obs_x must be > 0, got {obs_x}")
    scales = derive_scales(config)
    if obs_x < 10.0 * scales.lambda_a:
        warnings.warn(
            f"observation distance {obs_x:.3e} m is inside 10 lambda_a "
            f"({10 * scales.lambda_a:.3e} m); far-zone fields assumed anyway",
            stacklevel=2,
        )
    return _geometry(
        config.n_atoms, config.lattice_const, config.polarization_angle, obs_x
    )


def reference_intensity(scales: AtomicScales, mu_e_angstrom: float, obs_x: float) -> float:
    """I_0(x) in W/m^2."""
    mu = mu_e_angstrom * const.e * ANGSTROM
    return mu**2 * scales.omega_a**4 / (
        16.0 * math.pi**2 * const.epsilon_0 * const.c**3 * obs_x**2
    )


def total_intensity(
    state: SignState, geom: EmissionGeometry, scales: AtomicScales, t: float
) -> float:
    """Scaled intensity I(r, t)/I_0(x) for an arbitrary sign state.

    Sums the per-atom intensities and the pairwise correlation terms,
    each with its own retardation in both the exponential decay and the
    interference phase.
    """
    n = len(geom.atom_z)
    if state.n != n:
        raise ValueError(f"state has {state.n} atoms, geometry has {n}")
    t_max = float(np.max(geom.retard_n))
    if t < t_max:
        raise CausalityError(
            f"t={t!r} s precedes the latest retardation time {t_max!r} s"
        )
    if n >= 2:
        qa_a = scales.q_a * (geom.atom_z[1] - geom.atom_z[0])
        if qa_a < 1.0:
            warnings.warn(
                f"q_a*a = {qa_a:.3g} < 1: the independent-atom decay model "
                "is outside its validity regime",
                stacklevel=2,
            )
    corr = pair_correlations(state).entries
    gamma = scales.gamma_a
    omega = scales.omega_a
    x = geom.obs_x
    sin_phi = np.sin(geom.phi_n)
    tn = geom.retard_n
    # per-atom terms; the 1/2 turns the 32 pi^2 field prefactor into I_0/2
    total = 0.0
    for i in range(n):
        total += (
            0.5 * x**2 * sin_phi[i] ** 2 / geom.dist_n[i] ** 2
            * corr[i, i] * math.exp(-gamma * (t - tn[i]))
        )
    for i in range(n):
        for j in range(i + 1, n):
            total += (
                0.5 * x**2 * sin_phi[i] * sin_phi[j]
                / (geom.dist_n[i] * geom.dist_n[j])
                * float(np.dot(geom.unit_n[i], geom.unit_n[j]))
                * corr[i, j]
                * math.exp(-gamma * (t - 0.5 * (tn[i] + tn[j])))
                * 2.0 * math.cos(omega * (tn[i] - tn[j]))
            )
    return total


def two_atom_intensity(
    symmetric: bool, a: float, phi: float, obs_x: float, t: float,
    scales: AtomicScales,
) -> float:
    """Closed two-atom form of the scaled intensity.

    I/I_0 = (1/4) { sin^2 phi_1 e^{-gamma (t - x/c)}
                    + (x^2 sin^2 phi_2/(x^2+a^2)) e^{-gamma (t - d2/c)}
                    +/- (x^2 sin phi_1 sin phi_2/(x^2+a^2))
                        2 cos[omega (x - d2)/c]
                        e^{-gamma (t - (x + d2)/(2c))} }.
    """
    if not obs_x > 0:
        raise ValueError(f"obs_x must be > 0, got {obs_x}")
    if a < 0:
        raise ValueError(f"lattice constant must be >= 0, got {a}")
    d2 = math.hypot(obs_x, a)
    t1 = obs_x / const.c
    t2 = d2 / const.c
    if t < t2:
        raise CausalityError(f"t={t!r} s precedes retardation time {t2!r} s")
    phi1 = math.pi / 2.0 - phi
    alpha = math.atan2(obs_x, a)
    phi2 = math.pi - phi - alpha
    gamma = scales.gamma_a
    sign = 1.0 if symmetric else -1.0
    weight = obs_x**2 / (obs_x**2 + a**2)
    return 0.25 * (
        math.sin(phi1) ** 2 * math.exp(-gamma * (t - t1))
        + weight * math.sin(phi2) ** 2 * math.exp(-gamma * (t - t2))
        + sign * weight * math.sin(phi1) * math.sin(phi2)
        * 2.0 * math.cos(scales.omega_a * (t1 - t2))
        * math.exp(-gamma * (t - 0.5 * (t1 + t2)))
    )


def two_atom_asymptotic(
    symmetric: bool, a: float, phi: float, obs_x: float, t: float,
    scales: AtomicScales,
) -> float:
    """x >> a limit of the two-atom intensity.

    I/I_0 = (cos^2 phi / 4) e^{-gamma (t - x/c)}
            { 1 + e^{gamma a^2/(2 c x)}
              +/- 2 cos(omega a^2/(2 c x)) e^{gamma a^2/(4 c x)} }.

    The amplitude replacement sin phi_2 -> cos phi drops O(a/x * tan phi)
    corrections, so accuracy degrades away from phi = 0.
    """
    if not obs_x > 0:
        raise ValueError(f"obs_x must be > 0, got {obs_x}")
    gamma = scales.gamma_a
    u = a * a / (2.0 * const.c * obs_x)
    sign = 1.0 if symmetric else -1.0
    brace = (
        1.0
        + math.exp(gamma * u)
        + sign * 2.0 * math.cos(scales.omega_a * u) * math.exp(gamma * u / 2.0)
    )
    return 0.25 * math.cos(phi) ** 2 * math.exp(-gamma * (t - obs_x / const.c)) * brace


@dataclass
class IntensityTrace:
    """Scaled-intensity trace over a lattice-constant (or time) grid."""

    table: SweepTable
    reference_intensity: float  # I_0(x) in W/m^2


def emission_sweep(
    state: SignState,
    a_grid,
    phi: float,
    obs_x: float,
    t: float,
    scales: AtomicScales,
    mu_e_angstrom: float,
) -> IntensityTrace:
    """Intensity-vs-lattice-constant trace for a fixed state.

    Every grid point is checked for causality up front; the first
    violating point is named in the error.
    """
    a_grid = np.asarray(a_grid, dtype=float)
    if a_grid.size == 0:
        raise ValueError("empty lattice-constant grid")
    n = state.n
    for a in a_grid:
        t_last = math.hypot(obs_x, (n - 1) * a) / const.c
        if t < t_last:
            raise CausalityError(
                f"grid point a={a / ANGSTROM:.6g} A violates causality: "
                f"t={t!r} s < retardation {t_last!r} s"
            )
    rows = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for a in a_grid:
            geom = _geometry(n, float(a), phi, obs_x)
            rows.append((a / ANGSTROM, total_intensity(state, geom, scales, t)))
    table = SweepTable(
        columns=["a_angstrom", "intensity_ratio"],
        rows=rows,
        metadata={
            "state": str(state),
            "phi_deg": format(math.degrees(phi), ".12g"),
            "obs_x_angstrom": format(obs_x / ANGSTROM, ".12g"),
            "t_s": format(t, ".12g"),
        },
    )
    return IntensityTrace(
        table=table,
        reference_intensity=reference_intensity(scales, mu_e_angstrom, obs_x),
    )
