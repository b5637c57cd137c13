"""Monte Carlo experiment runner and diagnostics.

Reproduces the simulation-study figures as data: boxplot tables for the
drift / jump-mass estimates over replicated runs, Laplace-exponent curve
sweeps (estimated vs analytic), and the full density-recovery pipeline.
All outputs are plain CSV plus a JSON manifest capturing the config, so
every report is reproducible byte-for-byte from its master seed.
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import (
    DEFAULT_EPSILON,
    DEFAULT_GRID_POINTS,
    RateParameters,
    SampleSet,
    WeightFunction,
    build_grid,
    select_v_max,
)
from .errors import LevyExpFunError, NonDecayingMomentsError
from .mellin import estimate_laplace_exponent
from .models import ExpJumpSubordinator, GeometricCompoundPoisson
from .triplet import (
    KernelSpec,
    estimate_tilted_fourier,
    estimate_triplet,
    invert_levy_density,
)

__all__ = [
    "ExperimentConfig",
    "ExperimentReport",
    "model_from_dict",
    "model_to_dict",
    "derive_seeds",
    "run_parameter_experiment",
    "run_psi_curve",
    "run_levy_recovery",
    "fit_mellin_decay",
    "rate_factor",
    "rate_diagnostic",
]

_VERSION = "0.1.0"


def model_from_dict(d: dict):
    kind = d.get("kind")
    if kind == "exp_jump":
        return ExpJumpSubordinator(c=d["c"], a=d["a"], b=d["b"])
    if kind == "geom_cpp":
        return GeometricCompoundPoisson(q=d["q"], lam=d["lam"], alpha=d["alpha"])
    raise ValueError(f"unknown model kind {kind!r}")


def model_to_dict(model) -> dict:
    if isinstance(model, ExpJumpSubordinator):
        return {"kind": "exp_jump", "c": model.c, "a": model.a, "b": model.b}
    if isinstance(model, GeometricCompoundPoisson):
        return {"kind": "geom_cpp", "q": model.q, "lam": model.lam, "alpha": model.alpha}
    raise TypeError(f"not a model: {model!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of a reproducible experiment."""

    model: dict
    n_values: tuple[int, ...] = (10_000,)
    runs: int = 1
    u: float = 30.0
    epsilon: float = DEFAULT_EPSILON
    grid_points: int = DEFAULT_GRID_POINTS
    v_max: float | None = None
    rates: dict | None = None
    bandwidth: float | None = None
    x_min: float = 0.0
    x_max: float | None = None
    x_points: int = 200
    sampler_tol: float = 1e-10
    master_seed: int = 0
    output_dir: str | None = None
    threads: int = 1

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        nv = tuple(int(n) for n in self.n_values)
        if not nv or any(b <= a for a, b in zip(nv, nv[1:])):
            raise ValueError("n_values must be nonempty and increasing")
        object.__setattr__(self, "n_values", nv)
        model_from_dict(self.model)  # validate early

    def build_model(self):
        return model_from_dict(self.model)

    def window(self, n: int) -> float:
        """Frequency window: explicit v_max wins, else kappa*log(n) from
        the rate parameters."""
        if self.v_max is not None:
            return float(self.v_max)
        if self.rates is None:
            raise ValueError("config needs either v_max or rates")
        return select_v_max(n, RateParameters.from_dict(self.rates))

    def to_dict(self) -> dict:
        return {
            "model": dict(self.model),
            "n_values": list(self.n_values),
            "runs": self.runs,
            "u": self.u,
            "epsilon": self.epsilon,
            "grid_points": self.grid_points,
            "v_max": self.v_max,
            "rates": self.rates,
            "bandwidth": self.bandwidth,
            "x_min": self.x_min,
            "x_max": self.x_max,
            "x_points": self.x_points,
            "sampler_tol": self.sampler_tol,
            "master_seed": self.master_seed,
            "output_dir": self.output_dir,
            "threads": self.threads,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        d = dict(d)
        if "n_values" in d:
            d["n_values"] = tuple(d["n_values"])
        return cls(**d)


@dataclass
class ExperimentReport:
    """Per-run records plus recomputable summaries and diagnostics."""

    config: ExperimentConfig
    records: list[dict] = field(default_factory=list)
    summaries: list[dict] = field(default_factory=list)
    psi_curve: list[dict] = field(default_factory=list)
    levy_curve: list[dict] = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)


def derive_seeds(master_seed: int, count: int) -> list[int]:
    """Disjoint per-task seeds: children of SeedSequence(master_seed), one
    32-bit state word each. This is the documented splitting rule."""
    children = np.random.SeedSequence(master_seed).spawn(count)
    return [int(child.generate_state(1)[0]) for child in children]


def _sample(model, n: int, seed: int, tol: float) -> SampleSet:
    if isinstance(model, GeometricCompoundPoisson):
        return model.sample(n, seed=seed, tol=tol)
    return model.sample(n, seed=seed)


def _summary(values: np.ndarray, truth: float) -> dict:
    q1, med, q3 = np.percentile(values, [25, 50, 75])
    return {
        "median": float(med),
        "q1": float(q1),
        "q3": float(q3),
        "mae": float(np.mean(np.abs(values - truth))),
    }


def run_parameter_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Replicated drift / jump-mass estimation over the configured sample
    sizes. Failed runs are recorded with their reason, never dropped."""
    model = config.build_model()
    truth = _true_triplet(model)
    weights = WeightFunction(kind="uniform", support=(config.epsilon, 1.0))
    report = ExperimentReport(config=config)

    seeds = derive_seeds(config.master_seed, len(config.n_values) * config.runs)
    tasks = [
        (n, run, seeds[i * config.runs + run])
        for i, n in enumerate(config.n_values)
        for run in range(config.runs)
    ]

    def one(task):
        n, run, seed = task
        rec = {"n": n, "run": run, "seed": seed}
        try:
            samples = _sample(model, n, seed, config.sampler_tol)
            grid = build_grid(config.u, config.epsilon, config.window(n),
                              config.grid_points, "one_sided")
            table = estimate_laplace_exponent(samples, grid)
            est = estimate_triplet(table, weights)
            rec.update(c_hat=est.c_hat, a_hat=est.a_hat, error="")
        except LevyExpFunError as exc:
            rec.update(c_hat=math.nan, a_hat=math.nan, error=str(exc))
        return rec

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            records = list(pool.map(one, tasks))
    else:
        records = [one(t) for t in tasks]
    records.sort(key=lambda r: (r["n"], r["run"]))
    report.records = records

    for n in config.n_values:
        ok = [r for r in records if r["n"] == n and not r["error"]]
        if not ok:
            report.summaries.append({"n": n, "failed_runs": config.runs})
            continue
        c_vals = np.array([r["c_hat"] for r in ok])
        a_vals = np.array([r["a_hat"] for r in ok])
        row = {"n": n, "failed_runs": config.runs - len(ok)}
        row.update({f"c_{k}": v for k, v in _summary(c_vals, truth[0]).items()})
        row.update({f"a_{k}": v for k, v in _summary(a_vals, truth[1]).items()})
        report.summaries.append(row)

    if config.rates is not None:
        report.diagnostics["rate_factor"] = rate_diagnostic(
            config.n_values, RateParameters.from_dict(config.rates)
        )
    if config.output_dir:
        _write_parameter_outputs(report)
    return report


def _true_triplet(model) -> tuple[float, float]:
    if isinstance(model, ExpJumpSubordinator):
        return model.c, model.a
    return 0.0, model.lam


def run_psi_curve(config: ExperimentConfig) -> ExperimentReport:
    """Single sample set, symmetric frequency sweep: estimated vs analytic
    Laplace exponent, one row per grid point."""
    model = config.build_model()
    n = config.n_values[-1]
    seed = derive_seeds(config.master_seed, 1)[0]
    samples = _sample(model, n, seed, config.sampler_tol)
    grid = build_grid(config.u, config.epsilon, config.window(n),
                      config.grid_points, "symmetric")
    hat = estimate_laplace_exponent(samples, grid).values
    true = model.laplace_exponent(grid.points)
    report = ExperimentReport(config=config)
    for v, ph, pt in zip(grid.frequencies, hat, true):
        report.psi_curve.append(
            {
                "v": float(v),
                "re_hat": float(ph.real), "im_hat": float(ph.imag),
                "abs_hat": float(abs(ph)),
                "re_true": float(pt.real), "im_true": float(pt.imag),
                "abs_true": float(abs(pt)),
            }
        )
    report.diagnostics["sup_error"] = float(np.max(np.abs(hat - true)))
    if config.output_dir:
        _write_rows(
            _out_path(config, "psi_curve", n), report.psi_curve,
            ["v", "re_hat", "im_hat", "abs_hat", "re_true", "im_true", "abs_true"],
        )
        _write_manifest(config)
    return report


def run_levy_recovery(config: ExperimentConfig) -> ExperimentReport:
    """Full density-recovery pipeline: estimate the Laplace exponent, the
    triplet and the tilted Fourier transform, then invert with the
    flat-top kernel.

    For the geometric compound Poisson model the inversion runs in the
    process scale and the output is mapped to the eta scale
    (x -> x / jump_scale, values * jump_scale) so it is directly
    comparable with the model's ``levy_density``.
    """
    model = config.build_model()
    n = config.n_values[-1]
    seed = derive_seeds(config.master_seed, 1)[0]
    samples = _sample(model, n, seed, config.sampler_tol)
    v_max = config.window(n)
    h = config.bandwidth if config.bandwidth is not None else 1.0 / v_max

    one_sided = build_grid(config.u, config.epsilon, v_max,
                           config.grid_points, "one_sided")
    weights = WeightFunction(kind="uniform", support=(config.epsilon, 1.0))
    est = estimate_triplet(estimate_laplace_exponent(samples, one_sided), weights)

    symmetric = build_grid(config.u, config.epsilon, v_max,
                           2 * config.grid_points - 1, "symmetric")
    fourier = estimate_tilted_fourier(
        estimate_laplace_exponent(samples, symmetric), est
    )

    x_eta = _x_grid(config, model)
    scale = model.jump_scale if isinstance(model, GeometricCompoundPoisson) else 1.0
    density = invert_levy_density(fourier, KernelSpec(), h, scale * x_eta)

    true = model.levy_density(x_eta)
    report = ExperimentReport(config=config)
    for x, re, im, tr in zip(x_eta, scale * density.values_real,
                             scale * density.values_imag, np.atleast_1d(true)):
        report.levy_curve.append(
            {"x": float(x), "nu_hat_real": float(re),
             "nu_hat_imag": float(im), "nu_true": float(tr)}
        )
    report.diagnostics.update(
        c_hat=est.c_hat, a_hat=est.a_hat, bandwidth=h, v_max=v_max,
        jump_scale=scale,
    )
    if config.output_dir:
        _write_rows(
            _out_path(config, "levy_recovery", n), report.levy_curve,
            ["x", "nu_hat_real", "nu_hat_imag", "nu_true"],
        )
        _write_manifest(config)
    return report


def _x_grid(config: ExperimentConfig, model) -> np.ndarray:
    if config.x_max is not None:
        x_max = config.x_max
    elif isinstance(model, ExpJumpSubordinator):
        x_max = 3.0 / model.b
    else:
        x_max = 3.0
    lo = config.x_min if config.x_min > 0 else x_max / config.x_points
    return np.linspace(lo, x_max, config.x_points)


def fit_mellin_decay(samples: SampleSet, u: float, v_probe,
                     min_slope: float = 0.0) -> float:
    """Least-squares slope of -log |empirical moment at u + i v| against
    |v| over the probe frequencies: a data-driven stand-in for the
    exponential decay rate of the Mellin transform.

    Raises :class:`NonDecayingMomentsError` when the fitted slope does not
    exceed ``min_slope``. The default only rejects nonpositive slopes
    (flat or growing moments); pass a positive ``min_slope`` to also flag
    polynomially decaying moments, whose slope tends to zero over
    high-frequency probes.
    """
    v_probe = np.asarray(v_probe, dtype=float)
    if v_probe.size < 2 or np.any(np.diff(v_probe) <= 0) or v_probe[0] <= 0:
        raise ValueError("v_probe must be increasing and positive")
    from . import backends

    log_a = np.log(samples.values)
    stabilized = backends.moment_table(log_a, u, v_probe)
    mags = np.abs(stabilized)
    if np.any(mags == 0):
        raise NonDecayingMomentsError("moment magnitude underflowed to zero")
    # the exp(u L*) stabilization factor is v-independent: slope unaffected
    slope = np.polyfit(v_probe, -np.log(mags), 1)[0]
    if slope <= min_slope:
        raise NonDecayingMomentsError(
            f"fitted Mellin decay slope {slope:.3g} <= {min_slope}: "
            "moments do not decay fast enough"
        )
    return float(slope)


def rate_factor(n: int, rates: RateParameters) -> float:
    """V_n * exp(gamma V_n) * sqrt(log V_n) with V_n = kappa log n."""
    v_n = select_v_max(n, rates)
    return v_n * math.exp(rates.gamma * v_n) * math.sqrt(math.log(v_n))


def rate_diagnostic(n_values, rates: RateParameters) -> list[dict]:
    """rate_factor(n) * sqrt(log n / n) along n_values; must decrease to 0
    under the window rule for consistency to kick in."""
    out = []
    for n in n_values:
        val = rate_factor(n, rates) * math.sqrt(math.log(n) / n)
        out.append({"n": int(n), "rate_term": float(val)})
    return out


# ---------------------------------------------------------------------------
# File output

def _model_tag(config: ExperimentConfig) -> str:
    return config.model["kind"]


def _out_path(config: ExperimentConfig, experiment: str, n: int) -> Path:
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out / f"{experiment}_{_model_tag(config)}_{n}.csv"


def _write_rows(path: Path, rows: list[dict], header: list[str]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=header)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row.get(k, "") for k in header})


def _write_manifest(config: ExperimentConfig) -> None:
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {"version": _VERSION, "config": config.to_dict()}
    with open(out / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_parameter_outputs(report: ExperimentReport) -> None:
    config = report.config
    for n in config.n_values:
        rows = [r for r in report.records if r["n"] == n]
        _write_rows(
            _out_path(config, "parameters", n), rows,
            ["n", "run", "seed", "c_hat", "a_hat", "error"],
        )
    if report.summaries:
        header = list(report.summaries[0].keys())
        _write_rows(
            Path(config.output_dir) / f"parameters_{_model_tag(config)}_summary.csv",
            report.summaries, header,
        )
    _write_manifest(config)
