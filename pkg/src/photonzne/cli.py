"""Command-line interface for the photonic eigensolver laboratory.

Subcommands mirror the harness operations: ``diag``, ``hom-scan``,
``vqe``, ``sweep-m``, ``sweep-noise`` and ``deferred``.  Every
invocation writes one JSON summary (config echo, seed, headline
numbers) plus a CSV table where the operation produces one, all into
the ``--out`` directory.  Files are written atomically: a temporary
file in the target directory is renamed over the destination, so a
crash never leaves a half-written table.

Configuration values come from an optional flat key=value file
(``--config``), overridden by command-line flags.  Keys match the
ExperimentConfig field names.  Sweep commands require an explicit
``--seed`` so that published tables are always reproducible.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from collections.abc import Iterable, Sequence

import numpy as np

from .harness import (
    ExperimentConfig,
    deferred_heatmap,
    diag,
    feasible_k1,
    hom_scan,
    run_vqe,
    sweep_m,
    sweep_noise,
)

SWEEP_COMMANDS = ("sweep-m", "sweep-noise", "deferred")


def _fmt(value: float) -> str:
    """CSV number format: decimal, 12 significant digits."""
    return format(float(value), ".12g")


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    _write_atomic(path, "\n".join(lines) + "\n")


def _config_echo(config: ExperimentConfig) -> dict:
    return {
        "m": list(config.m_values) if len(config.m_values) > 1 else config.m_values[0],
        "epsilon_levels": list(config.epsilon_grid),
        "ratio": config.ratio,
        "shot_scale": config.shot_scale,
        "schedule": list(config.schedule),
        "runs": config.runs,
        "master_seed": config.master_seed,
    }


def _write_summary(outdir: str, command: str, config: ExperimentConfig | None, headline: dict) -> str:
    payload: dict = {"command": command, "headline": headline}
    if config is not None:
        payload["config"] = _config_echo(config)
        payload["seed"] = config.master_seed
    path = os.path.join(outdir, f"{command}_summary.json")
    _write_atomic(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise ValueError(f"expected comma-separated numbers, got {text!r}") from exc


def _parse_schedule(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"schedule must be k0,k1 - got {text!r}")
    return int(parts[0]), int(parts[1])


def read_config_file(path: str) -> dict:
    """Parse a flat key=value config file into ExperimentConfig kwargs.

    Blank lines and lines starting with # are skipped.  Unknown keys are
    rejected so a typo cannot silently fall back to a default.
    """
    fields = {
        "m": _parse_floats,
        "epsilon_levels": _parse_floats,
        "ratio": float,
        "shot_scale": lambda v: v if v == "exact" else float(v),
        "schedule": _parse_schedule,
        "runs": int,
        "master_seed": int,
        "output": str,
    }
    values: dict = {}
    with open(path) as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, text = line.partition("=")
            key, text = key.strip(), text.strip()
            if key not in fields:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            values[key] = fields[key](text)
    if "m" in values and len(values["m"]) == 1:
        values["m"] = values["m"][0]
    return values


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    """Merge config file values with command-line overrides."""
    values: dict = {}
    if args.config:
        values = read_config_file(args.config)
    if getattr(args, "m", None) is not None:
        grid = _parse_floats(args.m)
        values["m"] = grid[0] if len(grid) == 1 else grid
    if getattr(args, "eps", None) is not None:
        values["epsilon_levels"] = _parse_floats(args.eps)
    if getattr(args, "ratio", None) is not None:
        values["ratio"] = args.ratio
    if getattr(args, "schedule", None) is not None:
        values["schedule"] = _parse_schedule(args.schedule)
    if args.shots is not None:
        values["shot_scale"] = args.shots
    if args.exact:
        values["shot_scale"] = "exact"
    if args.runs is not None:
        values["runs"] = args.runs
    if args.seed is not None:
        values["master_seed"] = args.seed
    if args.out is not None:
        values["output"] = args.out
    return ExperimentConfig(**values)


def _outdir(args: argparse.Namespace) -> str:
    out = args.out or "."
    os.makedirs(out, exist_ok=True)
    return out


def _cmd_diag(args: argparse.Namespace) -> int:
    result = diag(float(args.m) if args.m is not None else -10.0)
    print(f"E0({_fmt(result.m)}) = {_fmt(result.energy)}")
    print(f"dense check   {_fmt(result.energy_dense)}")
    amps = ", ".join(f"{a.real:+.6f}" for a in result.amplitudes)
    print(f"ground state  [{amps}] over |00>,|01>,|10>,|11>")
    outdir = _outdir(args)
    _write_summary(
        outdir,
        "diag",
        None,
        {
            "m": result.m,
            "E0": result.energy,
            "E0_dense": result.energy_dense,
            "amplitudes": [[a.real, a.imag] for a in result.amplitudes],
        },
    )
    return 0


def _cmd_hom_scan(args: argparse.Namespace) -> int:
    thetas = (
        _parse_floats(args.thetas)
        if args.thetas
        else tuple(i * (math.pi / 4) / (args.points - 1) for i in range(args.points))
    )
    rows = hom_scan(thetas)
    outdir = _outdir(args)
    path = os.path.join(outdir, "hom_scan.csv")
    _write_csv(
        path,
        ("theta", "epsilon", "V", "p_coincidence"),
        (
            (_fmt(r.theta), _fmt(r.epsilon), _fmt(r.visibility), _fmt(r.p_coincidence))
            for r in rows
        ),
    )
    _write_summary(
        outdir,
        "hom-scan",
        None,
        {"points": len(rows), "theta_max": rows[-1].theta, "epsilon_max": rows[-1].epsilon},
    )
    print(f"wrote {len(rows)} rows to {path}")
    return 0


def _cmd_vqe(args: argparse.Namespace) -> int:
    config = build_config(args)
    result = run_vqe(config)
    outdir = _outdir(args)
    path = os.path.join(outdir, "vqe_trace.csv")
    eps_levels = sorted(result.traces)
    header = ["iteration", "measurements"]
    header += [f"E_eps{idx + 1}" for idx in range(len(eps_levels))]
    header.append("E_mitigated")
    k0 = result.schedule.k0
    total = k0 + result.schedule.k1
    rows = []
    for it in range(total):
        row = [str(it), str(result.budget[it])]
        for eps in eps_levels:
            trace = result.traces[eps]
            if eps == result.eps1:
                row.append(_fmt(trace[it]))
            else:
                row.append(_fmt(trace[it - k0]) if it >= k0 else "")
        row.append(_fmt(result.mitigated_trace[it - k0]) if it >= k0 else "")
        rows.append(row)
    _write_csv(path, header, rows)
    headline = {
        "final": result.final.value,
        "final_std": result.final.std,
        "last": result.last.value,
        "measurements": result.measurements,
        "calibrated_gain": result.calibrated_gain,
        "phases": list(result.phases),
    }
    if result.mitigated is not None:
        headline["mitigated_slope"] = result.mitigated.c2
    _write_summary(outdir, "vqe", config, headline)
    print(f"final energy {_fmt(result.final.value)} (std {_fmt(result.final.std)}) " f"after {result.measurements} measurements")
    return 0


def _cmd_sweep_m(args: argparse.Namespace) -> int:
    config = build_config(args)
    rows = sweep_m(config)
    outdir = _outdir(args)
    path = os.path.join(outdir, "sweep_m.csv")
    _write_csv(
        path,
        ("m", "E_unmitigated", "E_mitigated", "E0"),
        (
            (_fmt(r.m), _fmt(r.e_unmitigated), _fmt(r.e_mitigated), _fmt(r.e0))
            for r in rows
        ),
    )
    worst = max(abs(r.e_mitigated - r.e0) for r in rows)
    _write_summary(outdir, "sweep-m", config, {"rows": len(rows), "max_mitigated_error": worst})
    print(f"wrote {len(rows)} rows to {path}; max |E_mitigated - E0| = {_fmt(worst)}")
    return 0


def _cmd_sweep_noise(args: argparse.Namespace) -> int:
    config = build_config(args)
    rows = sweep_noise(config)
    outdir = _outdir(args)
    path = os.path.join(outdir, "sweep_noise.csv")
    _write_csv(
        path,
        ("eps1", "E_unmitigated", "E_mitigated", "std_unmitigated", "std_mitigated"),
        (
            (
                _fmt(r.eps1),
                _fmt(r.e_unmitigated),
                _fmt(r.e_mitigated),
                _fmt(r.std_unmitigated),
                _fmt(r.std_mitigated),
            )
            for r in rows
        ),
    )
    _write_summary(outdir, "sweep-noise", config, {"rows": len(rows)})
    print(f"wrote {len(rows)} rows to {path}")
    return 0


def _cmd_deferred(args: argparse.Namespace) -> int:
    config = build_config(args)
    budgets = tuple(int(b) for b in _parse_floats(args.budgets)) if args.budgets else None
    k0_values = tuple(int(k) for k in _parse_floats(args.k0)) if args.k0 else None
    grid = deferred_heatmap(config, budgets=budgets, k0_values=k0_values)
    outdir = _outdir(args)
    path = os.path.join(outdir, "deferred.csv")
    rows = []
    for i, budget in enumerate(grid.budgets):
        for j, k0 in enumerate(grid.k0_values):
            if grid.feasible[i, j]:
                rows.append(
                    (
                        str(budget),
                        str(k0),
                        str(feasible_k1(budget, k0)),
                        "true",
                        _fmt(grid.r[i, j]),
                        _fmt(grid.delta_e[i, j]),
                        _fmt(grid.mean_energy[i, j]),
                    )
                )
            else:
                rows.append((str(budget), str(k0), "", "false", "", "", ""))
    _write_csv(path, ("N", "k0", "k1", "feasible", "R", "delta_E", "mean_energy"), rows)
    feasible_r = grid.r[grid.feasible & (np.array(grid.k0_values)[None, :] > 0)]
    headline = {
        "feasible_cells": int(grid.feasible.sum()),
        "max_R_k0_positive": float(np.max(feasible_r)) if feasible_r.size else None,
    }
    _write_summary(outdir, "deferred", config, headline)
    print(f"wrote {int(grid.feasible.sum())} feasible cells to {path}")
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--seed", type=int, help="master seed (mandatory for sweep commands)")
    parser.add_argument("--out", help="output directory (default: current)")
    parser.add_argument("--exact", action="store_true", help="analytic probabilities, no sampling")
    parser.add_argument("--shots", type=float, help="emitted-pair scale S per basis setting")
    parser.add_argument("--runs", type=int, help="independent runs per grid point")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photonzne",
        description="Photonic two-qubit eigensolver laboratory with zero-noise extrapolation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diag", help="exact ground level of H(m)")
    p.add_argument("-m", "--m", help="Hamiltonian mass (default -10)")
    _add_common(p)
    p.set_defaults(func=_cmd_diag)

    p = sub.add_parser("hom-scan", help="two-photon interference scan over coupler angles")
    p.add_argument("--points", type=int, default=100, help="grid size over [0, pi/4]")
    p.add_argument("--thetas", help="explicit comma-separated angles (radians)")
    _add_common(p)
    p.set_defaults(func=_cmd_hom_scan)

    p = sub.add_parser("vqe", help="single variational run")
    p.add_argument("-m", "--m", help="Hamiltonian mass")
    p.add_argument("--eps", help="noise levels eps1,eps2")
    p.add_argument("--schedule", help="iterations k0,k1")
    _add_common(p)
    p.set_defaults(func=_cmd_vqe)

    p = sub.add_parser("sweep-m", help="converged energy against the mass")
    p.add_argument("-m", "--m", help="comma-separated mass grid")
    p.add_argument("--eps", help="noise levels eps1,eps2")
    p.add_argument("--schedule", help="iterations k0,k1")
    _add_common(p)
    p.set_defaults(func=_cmd_sweep_m)

    p = sub.add_parser("sweep-noise", help="both strategies against the first noise level")
    p.add_argument("--eps", help="comma-separated eps1 grid")
    p.add_argument("--ratio", type=float, help="second level ratio t (eps2 = t eps1)")
    p.add_argument("-m", "--m", help="Hamiltonian mass")
    p.add_argument("--schedule", help="iterations k0,k1")
    _add_common(p)
    p.set_defaults(func=_cmd_sweep_noise)

    p = sub.add_parser("deferred", help="relative error grid of deferred mitigation")
    p.add_argument("--budgets", help="comma-separated total budgets N")
    p.add_argument("--k0", help="comma-separated k0 values (must include 0)")
    p.add_argument("-m", "--m", help="Hamiltonian mass")
    p.add_argument("--eps", help="noise levels eps1,eps2")
    _add_common(p)
    p.set_defaults(func=_cmd_deferred)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in SWEEP_COMMANDS and args.seed is None:
        print(f"photonzne {args.command}: --seed is required for sweep commands", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"photonzne {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
