"""Radiative energy-transfer coupling between two emitters.

The exact retarded coupling between two identical two-level atoms a
dimensionless distance x = q_a * R apart, with transition dipoles tilted
by phi from the interatomic axis, is

    J(x, phi)/gamma_a = (3/4) { [sin x/x^2 + cos x/x^3] (1 - 3 cos^2 phi)
                                - (cos x/x) (1 - cos^2 phi) }.

Dropping the radiative terms (x << 1) leaves the electrostatic resonance
dipole-dipole interaction (3/4)(1 - 3 cos^2 phi)/x^3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scales import ChainConfig, derive_scales
from .sweeps import SweepTable

#: Below this x the sin/cos bracket is evaluated by its Laurent series.
BRACKET_SERIES_THRESHOLD = 1e-3


def _bracket(x: float) -> float:
    """sin x/x^2 + cos x/x^3, series-evaluated near zero."""
    if x < BRACKET_SERIES_THRESHOLD:
        # 1/x^3 + 1/(2x) - x/8 + x^3/144 - x^5/5760 + O(x^7)
        return 1.0 / x**3 + 0.5 / x - x / 8.0 + x**3 / 144.0 - x**5 / 5760.0
    return math.sin(x) / x**2 + math.cos(x) / x**3


def transfer_exact(x: float, phi: float) -> float:
    """Exact radiative coupling J/gamma_a at dimensionless separation x."""
    if not x > 0:
        raise ValueError(f"separation must be > 0, got x={x}")
    c2 = math.cos(phi) ** 2
    return 0.75 * (
        _bracket(x) * (1.0 - 3.0 * c2) - (math.cos(x) / x) * (1.0 - c2)
    )


def transfer_electrostatic(x: float, phi: float) -> float:
    """Electrostatic resonance dipole-dipole limit of J/gamma_a."""
    if not x > 0:
        raise ValueError(f"separation must be > 0, got x={x}")
    c2 = math.cos(phi) ** 2
    return 0.75 * (1.0 - 3.0 * c2) / x**3


@dataclass(frozen=True)
class CouplingMatrix:
    """Excitation-hopping matrix of the chain.

    ``diagonal`` is the common transition frequency omega_a (rad/s);
    ``off_diag`` holds the pair couplings J_nm in 1/s with zero diagonal.
    """

    dim: int
    diagonal: float
    off_diag: np.ndarray

    def __post_init__(self):
        if self.off_diag.shape != (self.dim, self.dim):
            raise ValueError("off_diag shape does not match dim")


def coupling_matrix(config: ChainConfig) -> CouplingMatrix:
    """Full N x N coupling matrix with J_nm = gamma_a * J(q_a a |n-m|, phi).

    No nearest-neighbor truncation is applied here; entries depend on
    |n - m| only.
    """
    scales = derive_scales(config)
    n = config.n_atoms
    x0 = scales.q_a * config.lattice_const
    by_bond = [0.0] + [
        scales.gamma_a * transfer_exact(k * x0, config.polarization_angle)
        for k in range(1, n)
    ]
    off = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            off[i, j] = by_bond[abs(i - j)]
    return CouplingMatrix(dim=n, diagonal=scales.omega_a, off_diag=off)


def coupling_sweep(
    x_min: float, x_max: float, n_points: int, phi_list
) -> SweepTable:
    """Uniform x-grid sweep of the exact and electrostatic couplings.

    One exact and one electrostatic column per polarization angle.
    """
    if not 0 < x_min < x_max:
        raise ValueError(f"need 0 < x_min < x_max, got [{x_min}, {x_max}]")
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    phi_list = list(phi_list)
    columns = ["x"]
    columns += [f"J_exact_phi{round(math.degrees(p))}" for p in phi_list]
    columns += [f"J_approx_phi{round(math.degrees(p))}" for p in phi_list]
    grid = np.linspace(x_min, x_max, n_points)
    rows = []
    for x in grid:
        x = float(x)
        row = [x]
        row += [transfer_exact(x, p) for p in phi_list]
        row += [transfer_electrostatic(x, p) for p in phi_list]
        rows.append(tuple(row))
    return SweepTable(columns=columns, rows=rows)
