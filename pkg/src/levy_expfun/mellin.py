"""Empirical complex moments and the ratio estimator of the Laplace exponent.

The core identity is the moment recursion

    E[A^(s-1)] = (psi(s) / s) * E[A^s],

valid on the right half-plane when the driving process is a subordinator.
Solving for psi at s = u + i v and replacing expectations by empirical
means gives the estimator produced by :func:`estimate_laplace_exponent`.

Moments at large real parts are computed in log scale: with
L* = max_k ln A_k factored out of numerator and denominator, every term
has modulus at most 1 and the ratio is unchanged.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from . import backends
from .core import FrequencyGrid, LaplaceExponentTable, SampleSet
from .errors import DegenerateDenominatorError, MomentOverflowError

__all__ = [
    "empirical_complex_moment",
    "estimate_laplace_exponent",
    "moment_identity_residual",
]

# Stabilized denominator moments below this are treated as numerically zero.
DEGENERACY_THRESHOLD = 1e-14

_MAX_EXP = math.log(np.finfo(float).max)  # ~709.78


def empirical_complex_moment(samples: SampleSet, s: complex) -> complex:
    """Empirical mean of A^s, i.e. (1/n) sum_k exp(s * ln A_k).

    Uses the principal real logarithm (valid since A_k > 0). Raises
    :class:`MomentOverflowError` when the rescaled result exceeds the
    floating-point range.
    """
    s = complex(s)
    log_a = np.log(samples.values)
    lstar = float(log_a.max())
    stabilized = backends.moment_table(log_a, s.real, np.array([s.imag]))[0]
    # undo the stabilization: true moment = stabilized * exp(Re(s) * L*)
    scale_exp = s.real * lstar
    if stabilized != 0 and scale_exp + math.log(abs(stabilized)) > _MAX_EXP:
        raise MomentOverflowError(
            f"moment at s={s} overflows: Re(s)*max(ln A) = {scale_exp:.1f}"
        )
    return complex(stabilized * math.exp(scale_exp))


def _stabilized_pair(samples: SampleSet, grid: FrequencyGrid):
    """Stabilized moment tables at real parts u-1 and u over the grid
    frequencies, plus the shared log-scale anchor L*."""
    log_a = np.log(samples.values)
    lstar = float(log_a.max())
    v = grid.frequencies
    num = backends.moment_table(log_a, grid.u - 1.0, v)
    den = backends.moment_table(log_a, grid.u, v)
    return num, den, lstar


def estimate_laplace_exponent(
    samples: SampleSet, grid: FrequencyGrid
) -> LaplaceExponentTable:
    """Ratio estimator of the Laplace exponent on a frequency grid.

    For each grid point, psi_hat(u + i v) = (u + i v) * M(u-1+iv) / M(u+iv)
    where M is the empirical complex moment; both moment tables come from
    the same samples. Stabilization by L* = max ln A cancels in the ratio
    up to the exact factor exp(-L*).
    """
    num, den, lstar = _stabilized_pair(samples, grid)
    bad = np.abs(den) < DEGENERACY_THRESHOLD
    if np.any(bad):
        v_bad = grid.frequencies[bad][0]
        raise DegenerateDenominatorError(
            f"denominator moment vanishes at v={v_bad:.4g}; "
            "n too small or v_max too large for the moment decay"
        )
    values = grid.points * (num / den) * math.exp(-lstar)
    return LaplaceExponentTable(grid=grid, values=values, source="empirical")


def moment_identity_residual(
    mellin: Callable[[complex], complex],
    psi: Callable[[complex], complex],
    s: complex,
) -> float:
    """|m(s) - (psi(s)/s) m(s+1)| for analytic m and psi; zero in exact
    arithmetic whenever m is the Mellin transform of the exponential
    functional driven by psi. Used as an oracle self-check."""
    s = complex(s)
    if s.real <= 0:
        raise ValueError("s must lie in the right half-plane")
    return abs(mellin(s) - (psi(s) / s) * mellin(s + 1))
