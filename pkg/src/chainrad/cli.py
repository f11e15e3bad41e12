"""Command-line front end: sweeps, reference-figure CSVs, oracle verification.

Exit codes: 0 success, 2 usage, 3 config, 4 numerical accuracy,
5 causality.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np
from scipy import constants as const

from . import __version__
from .scales import (
    ANGSTROM,
    CODATA,
    ChainConfig,
    ConfigError,
    config_from_dict,
    config_from_json,
    config_to_dict,
    derive_scales,
    dimensionless_separation,
)
from .coupling import coupling_sweep
from .damping import (
    QuadratureAccuracyError,
    angle_sweep,
    damping_general,
    damping_quadrature_oracle,
    f_kernel,
    n_scaling_sweep,
    x_sweep,
)
from .emission import CausalityError, emission_sweep
from .states import SignState, alternating_state, enumerate_sign_states, symmetric_state
from .sweeps import SweepTable, format_value

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_ACCURACY = 4
EXIT_CAUSALITY = 5

#: Figures 1 and 15 are schematics; everything else is a CSV target.
SUPPORTED_FIGURES = (2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 16, 17, 18, 19, 20)

DEFAULT_CONFIG = {
    "n_atoms": 2,
    "lattice_const_angstrom": 1000.0,
    "transition_energy_ev": 1.0,
    "dipole_e_angstrom": 1.0,
    "polarization_deg": 0.0,
}

#: Figures 16-20 use the reference emission parameter set, including
#: the damping-rate override that is inconsistent with the radiative
#: formula for the quoted dipole (reproduced as printed).
EMISSION_CONFIG = dict(DEFAULT_CONFIG, gamma_override_hz=1e8)
EMISSION_OBS_X_ANGSTROM = 1e6


class UsageError(ValueError):
    pass


def parse_state(token: str, n: int) -> SignState:
    """Parse a CLI state token: ``sym``, ``alt`` or a +/- pattern of length n."""
    if token == "sym":
        return symmetric_state(n)
    if token == "alt":
        return alternating_state(n)
    if not token or set(token) - {"+", "-"}:
        raise UsageError(
            f"state must be 'sym', 'alt' or a +/- pattern, got {token!r}"
        )
    if len(token) != n:
        raise UsageError(
            f"state pattern {token!r} has length {len(token)}, chain has {n} atoms"
        )
    return SignState(coeffs=tuple(1 if ch == "+" else -1 for ch in token))


def _parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError as exc:
        raise UsageError(f"range must be 'lo:hi', got {text!r}") from exc


def _apply_sets(data: dict, sets: list[str]) -> dict:
    out = dict(data)
    for item in sets:
        if "=" not in item:
            raise UsageError(f"--set needs key=value, got {item!r}")
        key, value = item.split("=", 1)
        out[key] = value
    return out


def _load_config(args) -> ChainConfig:
    if args.config:
        data = config_to_dict(config_from_json(args.config))
    else:
        data = dict(DEFAULT_CONFIG)
    return config_from_dict(_apply_sets(data, args.set or []))


def _base_metadata(config: ChainConfig, command: str) -> dict:
    meta = {"tool": f"chainrad {__version__}", "command": command}
    for key, value in config_to_dict(config).items():
        meta[f"config.{key}"] = format_value(value) if isinstance(
            value, float
        ) else value
    for key, value in CODATA.items():
        meta[f"const.{key}"] = format(value, ".12g")
    scales = derive_scales(config)
    meta["derived.gamma_a_hz"] = format(scales.gamma_a, ".12g")
    meta["derived.qa_a"] = format(
        scales.q_a * config.lattice_const, ".12g"
    )
    if scales.gamma_overridden:
        meta["derived.gamma_source"] = "override"
    else:
        meta["derived.gamma_source"] = "radiative_formula"
    return meta


def _emit(table: SweepTable, args) -> None:
    if args.out:
        with open(args.out, "w", newline="") as fh:
            table.write_csv(fh)
    else:
        table.write_csv(sys.stdout)


def _f_kernel_sweep(x_min, x_max, n_points, phi_list) -> SweepTable:
    columns = ["x"] + [f"F_phi{round(math.degrees(p))}" for p in phi_list]
    rows = [
        (float(x), *(f_kernel(float(x), p) for p in phi_list))
        for x in np.linspace(x_min, x_max, n_points)
    ]
    return SweepTable(columns=columns, rows=rows)


def cmd_scales(args) -> int:
    config = _load_config(args)
    scales = derive_scales(config)
    table = SweepTable(
        columns=[
            "omega_a_rad_s", "q_a_per_m", "lambda_a_angstrom",
            "gamma_a_hz", "qa_a",
        ],
        rows=[(
            scales.omega_a, scales.q_a, scales.lambda_a / ANGSTROM,
            scales.gamma_a, scales.q_a * config.lattice_const,
        )],
        metadata=_base_metadata(config, "scales"),
    )
    _emit(table, args)
    return EXIT_OK


def cmd_coupling(args) -> int:
    config = _load_config(args)
    lo, hi = _parse_range(args.range) if args.range else (0.01, 20.0)
    table = coupling_sweep(lo, hi, args.points or 1000, [config.polarization_angle])
    table.metadata = _base_metadata(config, "coupling")
    _emit(table, args)
    return EXIT_OK


def cmd_damping(args) -> int:
    config = _load_config(args)
    state = parse_state(args.state or "sym", config.n_atoms)
    lo, hi = _parse_range(args.range) if args.range else (0.01, 20.0)
    table = x_sweep(
        state, lo, hi, args.points or 1000,
        [config.polarization_angle], oracle=args.oracle,
    )
    table.metadata = _base_metadata(config, "damping")
    table.metadata["state"] = str(state)
    _emit(table, args)
    return EXIT_OK


def cmd_nscaling(args) -> int:
    config = _load_config(args)
    if args.range:
        lo, hi = _parse_range(args.range)
        n_max = int(hi)
    else:
        n_max = 200
    table = n_scaling_sweep(
        n_max, dimensionless_separation(config), [config.polarization_angle]
    )
    table.metadata = _base_metadata(config, "nscaling")
    _emit(table, args)
    return EXIT_OK


def cmd_angles(args) -> int:
    config = _load_config(args)
    n_points = args.points or 181
    grid = np.radians(np.linspace(0.0, 90.0, n_points))
    table = angle_sweep(config.n_atoms, dimensionless_separation(config), grid)
    table.metadata = _base_metadata(config, "angles")
    _emit(table, args)
    return EXIT_OK


def cmd_emission(args) -> int:
    config = _load_config(args)
    state = parse_state(args.state or "sym", config.n_atoms)
    scales = derive_scales(config)
    obs_x = (args.obs_x if args.obs_x else EMISSION_OBS_X_ANGSTROM) * ANGSTROM
    lo, hi = _parse_range(args.range) if args.range else (1e3, 1e7)
    a_grid = np.logspace(
        math.log10(lo), math.log10(hi), args.points or 2000
    ) * ANGSTROM
    if args.time:
        t = args.time
    else:
        # latest retardation over the grid, so the default is always causal
        t = math.hypot(obs_x, (config.n_atoms - 1) * float(a_grid[-1])) / const.c
    trace = emission_sweep(
        state, a_grid, config.polarization_angle, obs_x, t, scales,
        config.dipole_moment,
    )
    trace.table.metadata.update(_base_metadata(config, "emission"))
    trace.table.metadata["reference_intensity_w_m2"] = format(
        trace.reference_intensity, ".12g"
    )
    _emit(trace.table, args)
    return EXIT_OK


def _figure_table(number: int) -> SweepTable:
    deg = math.radians
    if number in (2, 3, 4):
        phi = {2: [0.0, deg(90)], 3: [0.0], 4: [deg(90)]}[number]
        return coupling_sweep(0.01, 20.0, 1000, phi)
    if number == 5:
        return _f_kernel_sweep(0.01, 20.0, 1000, [0.0, deg(90)])
    if number == 6:
        return x_sweep(symmetric_state(5), 0.01, 20.0, 1000, [0.0, deg(90)])
    if number in (7, 8, 9):
        x = {7: 0.001, 8: 0.1, 9: 1.0}[number]
        return n_scaling_sweep(200, x, [0.0, deg(90)])
    if number == 10:
        grid = np.radians(np.linspace(0.0, 90.0, 181))
        return angle_sweep(100, 0.1, grid)
    if number in (11, 12, 13, 14):
        state = {
            11: symmetric_state(2), 12: alternating_state(2),
            13: symmetric_state(3), 14: alternating_state(3),
        }[number]
        return x_sweep(state, 0.01, 20.0, 1000, [0.0, deg(90)])
    # 16-20: two-atom emission traces at the reference parameter set
    config = config_from_dict(EMISSION_CONFIG)
    scales = derive_scales(config)
    obs_x = EMISSION_OBS_X_ANGSTROM * ANGSTROM
    t = 2.0 * obs_x / const.c
    state, phi = {
        16: (symmetric_state(2), 0.0),
        17: (symmetric_state(2), deg(45)),
        18: (symmetric_state(2), deg(90)),
        19: (alternating_state(2), 0.0),
        20: (alternating_state(2), deg(45)),
    }[number]
    # the reference traces use t = 2x/c; the grid is capped at the lattice
    # constant whose light reaches the observer exactly then (sqrt(3) x)
    a_max = math.sqrt((const.c * t) ** 2 - obs_x**2) * (1.0 - 1e-12)
    a_grid = np.logspace(
        math.log10(1e3 * ANGSTROM), math.log10(a_max), 2000
    )
    trace = emission_sweep(
        state, a_grid, phi, obs_x, t, scales, config.dipole_moment
    )
    return trace.table


def cmd_figure(args) -> int:
    if args.number not in SUPPORTED_FIGURES:
        raise UsageError(
            f"unsupported figure {args.number}; choose from {SUPPORTED_FIGURES}"
        )
    table = _figure_table(args.number)
    table.metadata["tool"] = f"chainrad {__version__}"
    table.metadata["command"] = f"figure {args.number}"
    _emit(table, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    """Closed form vs quadrature over all sign states, N <= n_max."""
    n_max = args.nmax or 8
    x_grid = (0.1, 0.5, 1.0, 3.0, 10.0)
    phi_grid = (0.0, math.pi / 4, math.pi / 2)
    rows = []
    worst = 0.0
    for n in range(1, n_max + 1):
        max_err = 0.0
        for state in enumerate_sign_states(n):
            for x in x_grid:
                for phi in phi_grid:
                    cf = damping_general(state, x, phi).rate_ratio
                    qd = damping_quadrature_oracle(state, x, phi).rate_ratio
                    rel = abs(cf - qd) / max(abs(cf), abs(qd), 1e-300)
                    max_err = max(max_err, rel)
        rows.append((n, 2**n, max_err))
        worst = max(worst, max_err)
    table = SweepTable(
        columns=["N", "n_states", "max_rel_err"],
        rows=rows,
        metadata={
            "tool": f"chainrad {__version__}",
            "command": "verify",
            "x_grid": " ".join(format_value(x) for x in x_grid),
            "phi_deg_grid": "0 45 90",
        },
        footer=[f"max_rel_err={worst:.3e}", "tolerance=1e-08"],
    )
    _emit(table, args)
    if worst > 1e-8:
        print(
            f"verify FAILED: max relative error {worst:.3e} > 1e-08",
            file=sys.stderr,
        )
        return EXIT_ACCURACY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainrad",
        description="Collective radiative properties of a finite emitter chain",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, state=False, oracle=False, emission=False):
        p.add_argument("--config", help="JSON chain configuration file")
        p.add_argument(
            "--set", action="append", metavar="KEY=VALUE",
            help="override a config key (repeatable)",
        )
        p.add_argument("--points", type=int, help="grid point count")
        p.add_argument("--range", metavar="LO:HI", help="grid range")
        p.add_argument("--out", help="CSV output path (default stdout)")
        if state:
            p.add_argument(
                "--state", help="collective state: sym, alt or +/- pattern"
            )
        if oracle:
            p.add_argument(
                "--oracle", action="store_true",
                help="add quadrature cross-check columns",
            )
        if emission:
            p.add_argument(
                "--obs-x", dest="obs_x", type=float,
                help="observation distance in Angstrom (default 1e6)",
            )
            p.add_argument(
                "--time", type=float,
                help="observation time in seconds (default 2x/c)",
            )

    p = sub.add_parser("scales", help="derived single-atom scales")
    common(p)
    p.set_defaults(func=cmd_scales)

    p = sub.add_parser("coupling", help="J/gamma_a vs q_a*a sweep")
    common(p)
    p.set_defaults(func=cmd_coupling)

    p = sub.add_parser("damping", help="collective rate vs q_a*a sweep")
    common(p, state=True, oracle=True)
    p.set_defaults(func=cmd_damping)

    p = sub.add_parser("nscaling", help="symmetric rate vs chain length")
    common(p)
    p.set_defaults(func=cmd_nscaling)

    p = sub.add_parser("angles", help="symmetric rate vs polarization angle")
    common(p)
    p.set_defaults(func=cmd_angles)

    p = sub.add_parser("emission", help="far-field intensity vs lattice constant")
    common(p, state=True, emission=True)
    p.set_defaults(func=cmd_emission)

    p = sub.add_parser("figure", help="reproduce a numbered reference figure as CSV")
    p.add_argument("number", type=int)
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="closed form vs quadrature oracle suite")
    p.add_argument("--nmax", type=int, help="largest chain length (default 8)")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"chainrad: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"chainrad: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except QuadratureAccuracyError as exc:
        print(f"chainrad: accuracy error: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    except CausalityError as exc:
        print(f"chainrad: causality error: {exc}", file=sys.stderr)
        return EXIT_CAUSALITY
    except ValueError as exc:
        print(f"chainrad: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
