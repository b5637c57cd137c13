"""Domain types, frequency grids, weight functions and configuration.

All types are immutable after construction and JSON-serializable via
``to_dict`` / ``from_dict``, so they can be shared freely between threads
and persisted by the CLI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SampleSet",
    "FrequencyGrid",
    "WeightFunction",
    "RateParameters",
    "LaplaceExponentTable",
    "build_grid",
    "select_v_max",
]

#: Default number of grid points; reproduces smooth curves at plotting
#: resolution without noticeable discretization error.
DEFAULT_GRID_POINTS = 201

#: Default lower end of the one-sided frequency window (relative units).
DEFAULT_EPSILON = 0.1


def _freeze(values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SampleSet:
    """Positive observations of the exponential functional.

    Parameters
    ----------
    values : array_like
        Strictly positive, finite observations; at least two.
    label : str
        Free-text provenance tag.
    seed : int, optional
        Seed used to generate the samples, if any.
    """

    values: np.ndarray
    label: str = ""
    seed: int | None = None

    def __post_init__(self):
        arr = _freeze(self.values)
        if arr.ndim != 1 or arr.size < 2:
            raise ValueError("need at least 2 observations in a flat array")
        if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
            raise ValueError("samples must be strictly positive and finite")
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def to_dict(self) -> dict:
        return {"values": self.values.tolist(), "label": self.label, "seed": self.seed}

    @classmethod
    def from_dict(cls, d: dict) -> "SampleSet":
        return cls(values=d["values"], label=d.get("label", ""), seed=d.get("seed"))


@dataclass(frozen=True)
class FrequencyGrid:
    """Evaluation abscissae ``u + i * alpha_m * v_max``.

    ``alphas`` are equidistant on ``[epsilon, 1]`` (mode ``one_sided``,
    parameter estimation) or ``[-1, 1]`` (mode ``symmetric``, Fourier
    inversion). ``step`` is the spacing of the frequencies
    ``v_m = alpha_m * v_max``.
    """

    u: float
    epsilon: float
    v_max: float
    step: float
    alphas: np.ndarray
    mode: str = "one_sided"

    def __post_init__(self):
        al = _freeze(self.alphas)
        if al.size < 2:
            raise ValueError("grid needs at least 2 points")
        diffs = np.diff(al)
        if np.any(diffs <= 0):
            raise ValueError("alphas must be strictly increasing")
        if not np.allclose(diffs, diffs[0], rtol=1e-9, atol=1e-12):
            raise ValueError("alphas must be equidistant")
        lo = self.epsilon if self.mode == "one_sided" else -1.0
        if al[0] < lo - 1e-12 or al[-1] > 1.0 + 1e-12:
            raise ValueError(f"alphas outside [{lo}, 1] for mode {self.mode!r}")
        object.__setattr__(self, "alphas", al)

    @property
    def frequencies(self) -> np.ndarray:
        """Imaginary parts ``v_m = alpha_m * v_max``."""
        return self.alphas * self.v_max

    @property
    def points(self) -> np.ndarray:
        """Complex abscissae ``u + i v_m``."""
        return self.u + 1j * self.frequencies

    def to_dict(self) -> dict:
        return {
            "u": self.u,
            "epsilon": self.epsilon,
            "v_max": self.v_max,
            "step": self.step,
            "alphas": self.alphas.tolist(),
            "mode": self.mode,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FrequencyGrid":
        return cls(
            u=d["u"],
            epsilon=d["epsilon"],
            v_max=d["v_max"],
            step=d["step"],
            alphas=np.asarray(d["alphas"], dtype=float),
            mode=d.get("mode", "one_sided"),
        )


@dataclass(frozen=True)
class WeightFunction:
    """Nonnegative weights on the one-sided grid, zero outside [epsilon, 1].

    ``kind`` is either ``"uniform"`` (all ones on the support) or
    ``"user_table"`` (explicit values aligned with the grid alphas).
    """

    kind: str = "uniform"
    support: tuple[float, float] = (DEFAULT_EPSILON, 1.0)
    table: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("uniform", "user_table"):
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == "user_table":
            if self.table is None:
                raise ValueError("user_table weights need explicit values")
            tab = _freeze(self.table)
            if np.any(tab < 0):
                raise ValueError("weights must be nonnegative")
            if not np.any(tab > 0):
                raise ValueError("weights must not be identically zero")
            object.__setattr__(self, "table", tab)

    def on_grid(self, grid: FrequencyGrid) -> np.ndarray:
        """Evaluate w(alpha_m) on the grid, zero outside the support."""
        lo, hi = self.support
        inside = (grid.alphas >= lo - 1e-12) & (grid.alphas <= hi + 1e-12)
        if self.kind == "uniform":
            return inside.astype(float)
        if self.table.size != grid.alphas.size:
            raise ValueError("user_table length does not match the grid")
        return np.where(inside, self.table, 0.0)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "support": list(self.support),
            "table": None if self.table is None else self.table.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "WeightFunction":
        tab = d.get("table")
        return cls(
            kind=d.get("kind", "uniform"),
            support=tuple(d.get("support", (DEFAULT_EPSILON, 1.0))),
            table=None if tab is None else np.asarray(tab, dtype=float),
        )


@dataclass(frozen=True)
class RateParameters:
    """Decay and smoothness rates driving the frequency-window rule.

    ``gamma`` is the exponential decay rate of the Mellin transform,
    ``r`` the smoothness order of the tilted jump density, and ``kappa``
    the window constant, constrained by ``kappa < 1 / (2 * gamma)``.
    """

    gamma: float
    r: float = 1.0
    kappa: float = field(default=0.0)

    def __post_init__(self):
        if self.gamma <= 0 or self.r <= 0:
            raise ValueError("gamma and r must be positive")
        kap = self.kappa if self.kappa > 0 else 0.4 / (2.0 * self.gamma)
        if kap * 2.0 * self.gamma >= 1.0:
            raise ValueError("kappa must satisfy kappa < 1/(2*gamma)")
        object.__setattr__(self, "kappa", kap)

    def to_dict(self) -> dict:
        return {"gamma": self.gamma, "r": self.r, "kappa": self.kappa}

    @classmethod
    def from_dict(cls, d: dict) -> "RateParameters":
        return cls(gamma=d["gamma"], r=d.get("r", 1.0), kappa=d.get("kappa", 0.0))


@dataclass(frozen=True)
class LaplaceExponentTable:
    """Values of the Laplace exponent (estimated or analytic) on a grid."""

    grid: FrequencyGrid
    values: np.ndarray
    source: str = "empirical"

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        vals.setflags(write=False)
        if vals.size != self.grid.alphas.size:
            raise ValueError("one value per grid point required")
        if self.source not in ("empirical", "analytic"):
            raise ValueError(f"unknown source {self.source!r}")
        object.__setattr__(self, "values", vals)

    def to_dict(self) -> dict:
        return {
            "grid": self.grid.to_dict(),
            "values_re": self.values.real.tolist(),
            "values_im": self.values.imag.tolist(),
            "source": self.source,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LaplaceExponentTable":
        vals = np.asarray(d["values_re"], dtype=float) + 1j * np.asarray(
            d["values_im"], dtype=float
        )
        return cls(grid=FrequencyGrid.from_dict(d["grid"]), values=vals, source=d["source"])


def build_grid(
    u: float,
    epsilon: float,
    v_max: float,
    m_count: int,
    mode: str = "one_sided",
) -> FrequencyGrid:
    """Build an equidistant frequency grid.

    ``one_sided`` spans [epsilon, 1], ``symmetric`` spans [-1, 1]; the
    frequency step is ``span * v_max / (m_count - 1)``. Construction is
    deterministic: identical inputs give bit-identical grids.
    """
    if mode not in ("one_sided", "symmetric"):
        raise ValueError(f"unknown grid mode {mode!r}")
    if not (0.0 < epsilon < 1.0):
        raise ValueError("epsilon must lie in (0, 1)")
    if v_max <= 0:
        raise ValueError("v_max must be positive")
    if m_count < 2:
        raise ValueError("need at least 2 grid points")
    lo = epsilon if mode == "one_sided" else -1.0
    alphas = np.linspace(lo, 1.0, m_count)
    if mode == "symmetric":
        # antisymmetrize bitwise so alphas[i] == -alphas[-1 - i] exactly;
        # conjugate symmetry of downstream estimates then holds to the bit
        alphas = (alphas - alphas[::-1]) / 2.0
    step = (1.0 - lo) * v_max / (m_count - 1)
    return FrequencyGrid(
        u=float(u), epsilon=float(epsilon), v_max=float(v_max), step=step,
        alphas=alphas, mode=mode,
    )


def select_v_max(n: int, rates: RateParameters) -> float:
    """Frequency window ``kappa * log(n)`` for sample size ``n``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return rates.kappa * math.log(n)
