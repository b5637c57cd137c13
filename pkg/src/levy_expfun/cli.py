"""Command-line front end: simulate, estimate, invert, experiment.

Exit codes: 0 success, 2 configuration / input error, 3 I/O error,
4 degenerate denominator during estimation. Human-readable summaries go
to stdout, machine-readable results to files. The environment variable
``LEVY_EXPFUN_SEED`` overrides any configured master seed.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from .core import (
    DEFAULT_EPSILON,
    DEFAULT_GRID_POINTS,
    SampleSet,
    WeightFunction,
    build_grid,
)
from .errors import DegenerateDenominatorError, LevyExpFunError
from .harness import (
    ExperimentConfig,
    model_from_dict,
    run_levy_recovery,
    run_parameter_experiment,
    run_psi_curve,
)
from .mellin import estimate_laplace_exponent
from .triplet import (
    KernelSpec,
    estimate_tilted_fourier,
    estimate_triplet,
    invert_levy_density,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_DEGENERATE = 4

SAMPLES_HEADER = "a_infinity"


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _seed_override(seed: int | None) -> int | None:
    env = os.environ.get("LEVY_EXPFUN_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _CliError(f"LEVY_EXPFUN_SEED must be an integer, got {env!r}",
                            EXIT_CONFIG)
    return seed


def _model_from_args(args) -> dict:
    if args.model == "exp-jump":
        return {"kind": "exp_jump", "c": args.c, "a": args.a, "b": args.b}
    return {"kind": "geom_cpp", "q": args.q, "lam": args.lam, "alpha": args.alpha}


def _read_samples(path: str) -> SampleSet:
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc}", EXIT_IO)
    if rows and rows[0] and rows[0][0].strip() == SAMPLES_HEADER:
        rows = rows[1:]
    try:
        values = np.array([float(r[0]) for r in rows if r])
    except (ValueError, IndexError):
        raise _CliError(f"{path}: expected one numeric value per line", EXIT_CONFIG)
    if values.size < 2:
        raise _CliError("need at least 2 samples", EXIT_CONFIG)
    if np.any(values <= 0) or not np.all(np.isfinite(values)):
        raise _CliError("samples must be positive", EXIT_CONFIG)
    return SampleSet(values=values, label=path)


def _write_samples(path: str, samples: SampleSet) -> None:
    try:
        with open(path, "w", newline="") as fh:
            fh.write(SAMPLES_HEADER + "\n")
            for v in samples.values:
                fh.write(f"{float(v)!r}\n")
    except OSError as exc:
        raise _CliError(f"cannot write {path}: {exc}", EXIT_IO)


def cmd_simulate(args) -> int:
    if args.n < 1:
        raise _CliError("--n must be positive", EXIT_CONFIG)
    try:
        model = model_from_dict(_model_from_args(args))
    except (ValueError, KeyError) as exc:
        raise _CliError(str(exc), EXIT_CONFIG)
    seed = _seed_override(args.seed)
    if args.model == "geom-cpp":
        samples = model.sample(args.n, seed=seed, tol=args.tol)
    else:
        samples = model.sample(args.n, seed=seed)
    _write_samples(args.out, samples)
    print(f"wrote {args.n} samples to {args.out} (seed={seed})")
    return EXIT_OK


def _grid_from_args(args, n: int, mode: str):
    m = args.grid_points if mode == "one_sided" else 2 * args.grid_points - 1
    return build_grid(args.u, args.epsilon, args.v_max, m, mode)


def cmd_estimate(args) -> int:
    samples = _read_samples(getattr(args, "in"))
    try:
        grid = _grid_from_args(args, samples.n, "one_sided")
    except ValueError as exc:
        raise _CliError(str(exc), EXIT_CONFIG)
    weights = WeightFunction(kind="uniform", support=(args.epsilon, 1.0))
    try:
        table = estimate_laplace_exponent(samples, grid)
        est = estimate_triplet(table, weights)
    except DegenerateDenominatorError as exc:
        raise _CliError(f"estimation failed: {exc}", EXIT_DEGENERATE)
    result = {
        "c_hat": est.c_hat,
        "a_hat": est.a_hat,
        "grid": grid.to_dict(),
        "diagnostics": {"n": samples.n},
    }
    print(f"c_hat = {est.c_hat:.6g}")
    print(f"a_hat = {est.a_hat:.6g}")
    if args.out:
        try:
            Path(args.out).write_text(json.dumps(result, indent=2) + "\n")
        except OSError as exc:
            raise _CliError(f"cannot write {args.out}: {exc}", EXIT_IO)
    return EXIT_OK


def cmd_invert(args) -> int:
    samples = _read_samples(getattr(args, "in"))
    try:
        one_sided = _grid_from_args(args, samples.n, "one_sided")
        symmetric = _grid_from_args(args, samples.n, "symmetric")
    except ValueError as exc:
        raise _CliError(str(exc), EXIT_CONFIG)
    weights = WeightFunction(kind="uniform", support=(args.epsilon, 1.0))
    try:
        est = estimate_triplet(estimate_laplace_exponent(samples, one_sided), weights)
        fourier = estimate_tilted_fourier(
            estimate_laplace_exponent(samples, symmetric), est
        )
    except DegenerateDenominatorError as exc:
        raise _CliError(f"estimation failed: {exc}", EXIT_DEGENERATE)
    h = args.h if args.h is not None else 1.0 / args.v_max
    x_grid = np.linspace(args.x_min, args.x_max, args.x_points)
    density = invert_levy_density(fourier, KernelSpec(), h, x_grid)
    values = density.clipped() if args.clip_negative else density.values_real
    try:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "nu_hat_real", "nu_hat_imag"])
            for x, re, im in zip(x_grid, values, density.values_imag):
                writer.writerow([x, re, im])
    except OSError as exc:
        raise _CliError(f"cannot write {args.out}: {exc}", EXIT_IO)
    print(f"c_hat = {est.c_hat:.6g}, a_hat = {est.a_hat:.6g}; "
          f"wrote density on [{args.x_min}, {args.x_max}] to {args.out}")
    return EXIT_OK


def cmd_experiment(args) -> int:
    try:
        raw = json.loads(Path(args.config).read_text())
    except OSError as exc:
        raise _CliError(f"cannot read {args.config}: {exc}", EXIT_IO)
    except json.JSONDecodeError as exc:
        raise _CliError(f"invalid JSON in {args.config}: {exc}", EXIT_CONFIG)
    if args.out_dir:
        raw["output_dir"] = args.out_dir
    if args.threads:
        raw["threads"] = args.threads
    seed = _seed_override(None)
    if seed is not None:
        raw["master_seed"] = seed
    kind = raw.pop("experiment", "parameters")
    try:
        config = ExperimentConfig.from_dict(raw)
    except (ValueError, TypeError, KeyError) as exc:
        raise _CliError(f"bad config: {exc}", EXIT_CONFIG)
    runner = {
        "parameters": run_parameter_experiment,
        "psi_curve": run_psi_curve,
        "levy_recovery": run_levy_recovery,
    }.get(kind)
    if runner is None:
        raise _CliError(f"unknown experiment kind {kind!r}", EXIT_CONFIG)
    try:
        report = runner(config)
    except LevyExpFunError as exc:
        raise _CliError(f"experiment failed: {exc}", EXIT_DEGENERATE)
    for row in report.summaries:
        print(row)
    if report.diagnostics:
        print(report.diagnostics)
    if config.output_dir:
        print(f"outputs in {config.output_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levy-expfun",
        description="Inference on subordinator characteristics from "
                    "exponential-functional samples",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="draw exponential-functional samples")
    sim.add_argument("--model", choices=["exp-jump", "geom-cpp"], required=True)
    sim.add_argument("--c", type=float, default=1.8)
    sim.add_argument("--a", type=float, default=0.7)
    sim.add_argument("--b", type=float, default=0.2)
    sim.add_argument("--q", type=float, default=0.5)
    sim.add_argument("--lam", type=float, default=1.0)
    sim.add_argument("--alpha", type=float, default=0.1)
    sim.add_argument("--tol", type=float, default=1e-10)
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--seed", type=int, default=None)
    sim.add_argument("--out", required=True)
    sim.set_defaults(func=cmd_simulate)

    def grid_flags(p):
        p.add_argument("--u", type=float, default=30.0)
        p.add_argument("--epsilon", "--w-epsilon", type=float,
                       default=DEFAULT_EPSILON, dest="epsilon")
        p.add_argument("--v-max", type=float, default=30.0)
        p.add_argument("--grid-points", type=int, default=DEFAULT_GRID_POINTS)

    est = sub.add_parser("estimate", help="estimate drift and jump mass")
    est.add_argument("--in", required=True)
    grid_flags(est)
    est.add_argument("--out", default=None, help="JSON result path")
    est.set_defaults(func=cmd_estimate)

    inv = sub.add_parser("invert", help="recover the jump density")
    inv.add_argument("--in", required=True)
    grid_flags(inv)
    inv.add_argument("--h", type=float, default=None,
                     help="bandwidth (default 1/v_max)")
    inv.add_argument("--x-min", type=float, default=0.05)
    inv.add_argument("--x-max", type=float, default=3.0)
    inv.add_argument("--x-points", type=int, default=200)
    inv.add_argument("--clip-negative", action="store_true")
    inv.add_argument("--out", required=True)
    inv.set_defaults(func=cmd_invert)

    exp = sub.add_parser("experiment", help="run a configured experiment")
    exp.add_argument("--config", required=True)
    exp.add_argument("--out-dir", default=None)
    exp.add_argument("--threads", type=int, default=None)
    exp.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, which matches our config-error code
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except LevyExpFunError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
