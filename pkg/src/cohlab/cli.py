"""Command-line front end: figure-data generation and check-suite runs.

Subcommands: ``fig1`` (first-order coherence grids of ordered multimode
states), ``fig2`` (two-particle coincidence grid), ``chaotic-g2``
(normalized second-order coherence of a chaotic field), ``props`` (the
standard check suite), ``eps-scan`` (eigenvalue-fit residual versus
displacement amplitude).

Runs are deterministic: fixed seeds, no timestamps, 17-significant-digit
decimal CSV floats, so identical configs produce byte-identical artifacts.
A sidecar ``<out>.meta.json`` records the resolved config, its hash, the
tolerances in force and package versions.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .chaotic import ChaoticModeSpec
from .checks import run_standard_suite
from .coherent import PermutationSpec, epsilon_residual, fermion_displaced
from .correlators import (
    ModeBasis,
    PermutationOrderedSource,
    coherence_grid,
    first_order_from_matrix,
    pair_coincidence_grid,
)
from .coherent import permutation_ordered_state
from .fock import DEFAULT_SERIES_TOL

EXPERIMENT_KINDS = ("fig1", "fig2", "chaotic-g2", "props", "eps-scan")
FORMATS = ("csv", "json")
STATISTICS_NAMES = ("boson", "fermion")

TOLERANCES = {
    "series_tol": DEFAULT_SERIES_TOL,
    "norm_tol": 1e-12,
    "coincidence_zero_tol": 1e-12,
    "factorization_threshold": 0.01,
    "boson_factorization_tol": 1e-6,
}

_CONFIG_KEYS = {
    "kind",
    "modes",
    "alpha",
    "phase",
    "perm",
    "grid",
    "length",
    "offset",
    "spacing",
    "cutoff",
    "mean_occupation",
    "statistics",
    "out",
    "format",
}

_DEFAULT_MODES = {"fig1": 40, "fig2": 10, "chaotic-g2": 4, "eps-scan": 1, "props": 1}


class ConfigError(ValueError):
    """Invalid experiment configuration; reported machine-readably on exit 1."""


@dataclass
class ExperimentConfig:
    kind: str
    modes: int
    alpha: float
    phase: float
    perm: str
    grid: int
    length: float
    offset: float
    spacing: int
    cutoff: int
    mean_occupation: float
    statistics: str
    out: str
    format: str

    def validate(self) -> None:
        if self.kind not in EXPERIMENT_KINDS:
            raise ConfigError(f"unknown experiment kind: {self.kind}")
        if self.modes < 1:
            raise ConfigError("modes must be >= 1")
        if self.grid < 2:
            raise ConfigError("grid must be >= 2")
        if self.length <= 0:
            raise ConfigError("length must be positive")
        if self.spacing < 1:
            raise ConfigError("spacing must be a positive integer")
        if self.cutoff < 2:
            raise ConfigError("cutoff must be >= 2")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if self.statistics not in STATISTICS_NAMES:
            raise ConfigError(f"statistics must be one of {STATISTICS_NAMES}")
        if self.mean_occupation < 0:
            raise ConfigError("mean_occupation must be nonnegative")
        if self.statistics == "fermion" and self.kind == "chaotic-g2":
            if self.mean_occupation >= 1.0:
                raise ConfigError("fermion mean occupation must be < 1")
        parse_permutation(self.perm, self.modes)

    def resolved(self) -> dict:
        return asdict(self)

    def config_hash(self) -> str:
        canonical = json.dumps(self.resolved(), sort_keys=True)
        return hashlib.sha256(canonical.encode()).hexdigest()


def parse_permutation(spec: str, n: int) -> PermutationSpec:
    if spec == "identity":
        return PermutationSpec.identity(n)
    if spec.startswith("seed:"):
        try:
            seed = int(spec[5:], 0)
        except ValueError as exc:
            raise ConfigError(f"bad permutation seed: {spec!r}") from exc
        if not 0 <= seed < 2**64:
            raise ConfigError("permutation seed must fit in 64 bits")
        return PermutationSpec.from_seed(n, seed)
    if spec.startswith("list:"):
        try:
            order = [int(tok) for tok in spec[5:].split(",")]
        except ValueError as exc:
            raise ConfigError(f"bad permutation list: {spec!r}") from exc
        if sorted(order) != list(range(n)):
            raise ConfigError(f"permutation list must be a bijection on 0..{n - 1}")
        return PermutationSpec.from_list(order)
    raise ConfigError(
        f"bad permutation {spec!r}: expected identity, seed:<u64> or list:<csv>"
    )


def load_config_file(path: str, kind: str) -> dict:
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib

    try:
        with open(path, "rb") as handle:
            data = tomllib.load(handle)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config file is not valid TOML: {exc}") from exc
    schema = data.pop("schema_version", 1)
    if schema != 1:
        raise ConfigError(f"unsupported config schema_version: {schema}")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "kind" in data and data["kind"] != kind:
        raise ConfigError(
            f"config kind {data['kind']!r} does not match subcommand {kind!r}"
        )
    return data


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    kind = args.kind
    values = {
        "kind": kind,
        "modes": _DEFAULT_MODES[kind],
        "alpha": math.pi / 4 if kind == "eps-scan" else 0.166,
        "phase": 0.0,
        "perm": "identity",
        "grid": 128,
        "length": 1.0,
        "offset": 0.0,
        "spacing": 1,
        "cutoff": 30,
        "mean_occupation": 0.1,
        "statistics": "fermion",
        "out": "",
        "format": "csv",
    }
    if args.config:
        file_values = load_config_file(args.config, kind)
        file_values.pop("kind", None)
        values.update(file_values)
    for key in _CONFIG_KEYS - {"kind"}:
        flag = getattr(args, key.replace("-", "_"), None)
        if flag is not None:
            values[key] = flag
    if not values["out"]:
        extension = "json" if kind == "props" else values["format"]
        values["out"] = f"{kind}.{extension}"
    try:
        config = ExperimentConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
    config.validate()
    return config


def format_float(value: float) -> str:
    return format(float(value), ".17g")


def write_grid_artifact(
    config: ExperimentConfig, xs: np.ndarray, ys: np.ndarray, grid: np.ndarray, notes: list[str]
) -> None:
    rows = (
        (xs[i], ys[j], grid[i, j]) for i in range(len(xs)) for j in range(len(ys))
    )
    if config.format == "csv":
        with open(config.out, "w") as handle:
            handle.write(f"# cohlab {config.kind}\n")
            for note in notes:
                handle.write(f"# {note}\n")
            handle.write("# columns: x, y, value\n")
            for x, y, v in rows:
                handle.write(
                    f"{format_float(x)},{format_float(y)},{format_float(v)}\n"
                )
    else:
        payload = {
            "experiment": config.kind,
            "notes": notes,
            "columns": ["x", "y", "value"],
            "rows": [[x, y, v] for x, y, v in rows],
        }
        with open(config.out, "w") as handle:
            json.dump(payload, handle, indent=1, sort_keys=True)
            handle.write("\n")


def write_metadata(config: ExperimentConfig, extra: dict) -> None:
    meta = {
        "config": config.resolved(),
        "config_hash": config.config_hash(),
        "tolerances": TOLERANCES,
        "versions": {
            "cohlab": __version__,
            "numpy": np.__version__,
            "python": ".".join(str(v) for v in sys.version_info[:3]),
        },
    }
    meta.update(extra)
    with open(config.out + ".meta.json", "w") as handle:
        json.dump(meta, handle, indent=1, sort_keys=True)
        handle.write("\n")


def _mode_basis(config: ExperimentConfig) -> ModeBasis:
    return ModeBasis(config.modes, config.length, config.offset, config.spacing)


def run_fig1(config: ExperimentConfig) -> int:
    """|gamma(x, y)|^2 grid of a permutation-ordered multimode state."""
    mode_basis = _mode_basis(config)
    alphas = tuple(
        config.alpha * np.exp(1j * config.phase) for _ in range(config.modes)
    )
    perm = parse_permutation(config.perm, config.modes)
    grid = coherence_grid(
        PermutationOrderedSource(alphas, perm), mode_basis, config.grid
    )
    xs = mode_basis.grid_points(config.grid)
    notes = [
        "squared degree of first-order coherence |gamma(x,y)|^2",
        f"modes={config.modes} alpha={config.alpha} phase={config.phase} "
        f"perm={config.perm}",
        "identical amplitudes on every mode; ordering chosen by perm",
    ]
    write_grid_artifact(config, xs, xs, grid, notes)
    extra: dict = {"perm_order": list(perm.order)}
    if perm.seed is not None:
        extra["seed"] = perm.seed
    if config.perm != "identity":
        reference = coherence_grid(
            PermutationOrderedSource(alphas, PermutationSpec.identity(config.modes)),
            mode_basis,
            config.grid,
        )
        extra["max_abs_diff_vs_identity"] = float(np.max(np.abs(grid - reference)))
    write_metadata(config, extra)
    return 0


def run_fig2(config: ExperimentConfig) -> int:
    """|Gamma^(2)(x, y, y, x)|^2 grid of the ordered state, brute force."""
    mode_basis = _mode_basis(config)
    alphas = [config.alpha * np.exp(1j * config.phase)] * config.modes
    perm = parse_permutation(config.perm, config.modes)
    state = permutation_ordered_state(alphas, perm)
    grid = pair_coincidence_grid(state, mode_basis, config.grid)
    xs = mode_basis.grid_points(config.grid)
    notes = [
        "squared two-particle coincidence |Gamma2(x,y,y,x)|^2",
        f"modes={config.modes} alpha={config.alpha} phase={config.phase} "
        f"perm={config.perm}",
        "zero along the diagonal x=y: no two fermions at one point",
    ]
    write_grid_artifact(config, xs, xs, grid, notes)
    extra: dict = {"perm_order": list(perm.order), "diagonal_max": float(np.max(np.diag(grid)))}
    if perm.seed is not None:
        extra["seed"] = perm.seed
    write_metadata(config, extra)
    return 0


def run_chaotic_g2(config: ExperimentConfig) -> int:
    """Normalized second-order coherence g2(x, y) of a chaotic field."""
    mode_basis = _mode_basis(config)
    spec = ChaoticModeSpec.uniform(config.modes, config.mean_occupation)
    kernel = np.diag(np.asarray(spec.mean_occupations, dtype=np.complex128))
    xs = mode_basis.grid_points(config.grid)
    g1 = first_order_from_matrix(kernel, mode_basis, xs, xs)
    intensity = np.real(np.diag(g1))
    gamma_sq = np.abs(g1) ** 2 / np.outer(intensity, intensity)
    sign = 1.0 if config.statistics == "boson" else -1.0
    grid = 1.0 + sign * gamma_sq
    notes = [
        "normalized second-order coherence g2(x,y) from the pairing formula",
        f"modes={config.modes} mean_occupation={config.mean_occupation} "
        f"statistics={config.statistics}",
        "bosons bunch (g2 > 1), fermions antibunch (g2 < 1, zero at x=y)",
    ]
    write_grid_artifact(config, xs, xs, grid, notes)
    write_metadata(
        config,
        {
            "diagonal_value": float(grid[0, 0]),
            "mean_occupations": list(spec.mean_occupations),
        },
    )
    return 0


def run_eps_scan(config: ExperimentConfig) -> int:
    """Eigenvalue-fit residual of displaced fermions over a range of |alpha|."""
    amplitudes = np.linspace(config.alpha / config.grid, config.alpha, config.grid)
    rows = []
    for mod in amplitudes:
        alpha = mod * np.exp(1j * config.phase)
        report = epsilon_residual(fermion_displaced(alpha))
        rows.append((mod, config.phase, report.residual))
    if config.format == "csv":
        with open(config.out, "w") as handle:
            handle.write("# cohlab eps-scan\n")
            handle.write(
                "# minimal eigenvalue-fit residual of a displaced fermion mode\n"
            )
            handle.write("# columns: x=|alpha|, y=phase, value=residual\n")
            for x, y, v in rows:
                handle.write(
                    f"{format_float(x)},{format_float(y)},{format_float(v)}\n"
                )
    else:
        payload = {
            "experiment": "eps-scan",
            "columns": ["abs_alpha", "phase", "residual"],
            "rows": [[x, y, v] for x, y, v in rows],
        }
        with open(config.out, "w") as handle:
            json.dump(payload, handle, indent=1, sort_keys=True)
            handle.write("\n")
    write_metadata(config, {"max_residual": rows[-1][2]})
    return 0


def run_props(config: ExperimentConfig) -> int:
    """Standard fixture suite; exit code 2 when any check misses expectation."""
    entries = run_standard_suite()
    all_ok = all(e.ok for e in entries)
    payload = {
        "all_ok": all_ok,
        "entries": [e.as_dict() for e in entries],
    }
    with open(config.out, "w") as handle:
        json.dump(payload, handle, indent=1, sort_keys=True)
        handle.write("\n")
    write_metadata(config, {"all_ok": all_ok, "checks": len(entries)})
    for entry in entries:
        marker = "ok      " if entry.ok else "MISMATCH"
        print(
            f"{marker} [{entry.fixture}] {entry.report.name}: "
            f"{entry.report.status} (expected {entry.expected})"
        )
    return 0 if all_ok else 2


def emit_plot_script(artifact: str) -> str | None:
    """Write a gnuplot heatmap script next to a grid artifact.

    Check-suite reports have no heatmap; a message explains that instead.
    """
    import os

    if not os.path.exists(artifact):
        raise FileNotFoundError(f"artifact not found: {artifact}")
    if artifact.endswith(".json"):
        with open(artifact) as handle:
            try:
                payload = json.load(handle)
            except json.JSONDecodeError:
                payload = {}
        if "entries" in payload:
            print(
                "props reports are pass/fail tables, not grids; nothing to plot"
            )
            return None
    script = artifact + ".gp"
    with open(script, "w") as handle:
        handle.write(
            "\n".join(
                [
                    f"# render: gnuplot {script}",
                    "set datafile separator ','",
                    "set view map",
                    "set size ratio -1",
                    "set xlabel 'x'",
                    "set ylabel 'y'",
                    "set cblabel 'value'",
                    f"set title '{artifact}'",
                    "set terminal pngcairo size 900,800",
                    f"set output '{artifact}.png'",
                    f"plot '{artifact}' using 1:2:3 with image notitle",
                    "",
                ]
            )
        )
    return script


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohlab",
        description="boson/fermion coherence laboratory: figure data and checks",
    )
    sub = parser.add_subparsers(dest="kind", required=True)
    for kind in EXPERIMENT_KINDS:
        p = sub.add_parser(kind, help=f"run the {kind} experiment")
        p.add_argument("--config", help="TOML config file (flags override it)")
        p.add_argument("--modes", type=int, help="number of modes")
        p.add_argument("--alpha", type=float, help="displacement modulus")
        p.add_argument("--phase", type=float, help="displacement phase (radians)")
        p.add_argument(
            "--perm", help="mode ordering: identity | seed:<u64> | list:<csv>"
        )
        p.add_argument("--grid", type=int, help="grid points per axis")
        p.add_argument("--length", type=float, help="domain length")
        p.add_argument("--offset", type=float, help="wavenumber comb offset")
        p.add_argument("--spacing", type=int, help="wavenumber comb spacing")
        p.add_argument("--cutoff", type=int, help="boson occupation cutoff")
        p.add_argument(
            "--mean-occupation",
            dest="mean_occupation",
            type=float,
            help="chaotic mean occupation per mode",
        )
        p.add_argument(
            "--statistics", choices=STATISTICS_NAMES, help="particle statistics"
        )
        p.add_argument("--out", help="output artifact path")
        p.add_argument("--format", choices=FORMATS, help="output format")
        p.add_argument(
            "--plot-script",
            action="store_true",
            help="also emit a gnuplot heatmap script for the artifact",
        )
    return parser


_RUNNERS = {
    "fig1": run_fig1,
    "fig2": run_fig2,
    "chaotic-g2": run_chaotic_g2,
    "eps-scan": run_eps_scan,
    "props": run_props,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
        code = _RUNNERS[config.kind](config)
    except ConfigError as exc:
        json.dump({"error": "config", "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 1
    except (ValueError, FileNotFoundError) as exc:
        json.dump(
            {"error": type(exc).__name__, "message": str(exc)}, sys.stderr
        )
        sys.stderr.write("\n")
        return 1
    if args.plot_script:
        emit_plot_script(config.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
