"""Backend selection for the hot kernels.

At import time the compiled Cython extension is preferred; if it is
missing (no compiler at install time) or ``LEVY_EXPFUN_BACKEND=python``
is set, a vectorized numpy fallback with identical semantics is used.
Both backends agree to floating-point roundoff (not bitwise, since numpy
uses pairwise summation); the parity test pins the tolerance.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["moment_table", "fourier_inversion", "BACKEND"]


def _np_moment_table(log_a: np.ndarray, u: float, v: np.ndarray) -> np.ndarray:
    """Stabilized empirical moments: mean over k of exp((u+iv) ln A_k - u L*),
    with L* = max ln A. The true moment is the result times exp(u L*)."""
    log_a = np.asarray(log_a, dtype=float)
    v = np.asarray(v, dtype=float)
    lstar = log_a.max()
    # (n, m) matrix of exp((u + i v_m)(ln A_k) - u L*); bounded by 1 in modulus
    z = np.exp(u * (log_a[:, None] - lstar) + 1j * (log_a[:, None] * v[None, :]))
    return z.mean(axis=0)


def _np_fourier_inversion(
    x: np.ndarray,
    v: np.ndarray,
    f: np.ndarray,
    taper: np.ndarray,
    u: float,
    step: float,
) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    weighted = np.asarray(f, dtype=complex) * np.asarray(taper, dtype=float)
    core = np.exp(1j * np.outer(x, v)) @ weighted
    return np.exp(u * x) * (step / (2.0 * np.pi)) * core


_forced = os.environ.get("LEVY_EXPFUN_BACKEND", "").lower()
_impl = None
if _forced != "python":
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = None
if _forced == "compiled" and _impl is None:
    raise ImportError("LEVY_EXPFUN_BACKEND=compiled but the extension is not built")

if _impl is not None:
    BACKEND = "compiled"

    def moment_table(log_a, u, v):
        return _impl.moment_table(
            np.ascontiguousarray(log_a, dtype=float),
            float(u),
            np.ascontiguousarray(v, dtype=float),
        )

    def fourier_inversion(x, v, f, taper, u, step):
        return _impl.fourier_inversion(
            np.ascontiguousarray(x, dtype=float),
            np.ascontiguousarray(v, dtype=float),
            np.ascontiguousarray(f, dtype=complex),
            np.ascontiguousarray(taper, dtype=float),
            float(u),
            float(step),
        )

else:
    BACKEND = "python"
    moment_table = _np_moment_table
    fourier_inversion = _np_fourier_inversion

moment_table.__doc__ = _np_moment_table.__doc__

# Always-available references for benchmarking and parity tests.
python_moment_table = _np_moment_table
python_fourier_inversion = _np_fourier_inversion
