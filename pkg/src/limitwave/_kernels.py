"""Grid-evaluation kernels with a numba fast path.

Everything exact lives elsewhere; this module only evaluates
trigonometric polynomials and truncated scaling products on large real
grids, which is the one genuinely hot loop in the package.  The numba
path is selected by default when the import works; set
``LIMITWAVE_BACKEND=numpy`` to force the portable implementation.
Both paths compute identical sums in identical order, point by point,
so results are deterministic and backend-independent to rounding.
"""
from __future__ import annotations

import math
import os

import numpy as np

_TWO_PI = 2.0 * math.pi


def _numpy_trig_eval(ks: np.ndarray, cs: np.ndarray, X: np.ndarray) -> np.ndarray:
    """sum_k c_k e^{2 pi i k.x} for each row x of X (shape (P, n))."""
    phase = X @ ks.T.astype(np.float64)  # (P, M)
    return np.exp(2j * np.pi * phase) @ cs


def _numpy_cascade_eval(ks, cs, X, inv_at, sqrt_n, depth):
    """prod_{j=1..depth} N^{-1/2} m(e^{2 pi i (A^T)^{-j} x}) per row.

    Dividing by sqrt(N) instead of multiplying by its inverse keeps the
    product exactly 1 at x = 0 whenever m(1) lands on sqrt(N) bit for bit.
    """
    out = np.ones(X.shape[0], dtype=np.complex128)
    Y = X.astype(np.float64)
    for _ in range(depth):
        Y = Y @ inv_at.T
        out *= _numpy_trig_eval(ks, cs, Y) / sqrt_n
    return out


def _build_numba():
    from numba import njit

    @njit(cache=True)
    def trig_eval(ks, cs, X):
        P, n = X.shape
        M = ks.shape[0]
        out = np.empty(P, dtype=np.complex128)
        for p in range(P):
            acc = 0.0 + 0.0j
            for m in range(M):
                ph = 0.0
                for d in range(n):
                    ph += ks[m, d] * X[p, d]
                t = _TWO_PI * ph
                acc += cs[m] * complex(math.cos(t), math.sin(t))
            out[p] = acc
        return out

    @njit(cache=True)
    def cascade_eval(ks, cs, X, inv_at, sqrt_n, depth):
        P, n = X.shape
        M = ks.shape[0]
        out = np.empty(P, dtype=np.complex128)
        y = np.empty(n, dtype=np.float64)
        z = np.empty(n, dtype=np.float64)
        for p in range(P):
            for d in range(n):
                y[d] = X[p, d]
            acc = 1.0 + 0.0j
            for _ in range(depth):
                for i in range(n):
                    s = 0.0
                    for j in range(n):
                        s += inv_at[i, j] * y[j]
                    z[i] = s
                for d in range(n):
                    y[d] = z[d]
                f = 0.0 + 0.0j
                for m in range(M):
                    ph = 0.0
                    for d in range(n):
                        ph += ks[m, d] * y[d]
                    t = _TWO_PI * ph
                    f += cs[m] * complex(math.cos(t), math.sin(t))
                acc *= f / sqrt_n
            out[p] = acc
        return out

    return trig_eval, cascade_eval


def _select_backend():
    choice = os.environ.get("LIMITWAVE_BACKEND", "numba").strip().lower()
    if choice not in ("numba", "numpy"):
        raise ValueError(f"LIMITWAVE_BACKEND must be numba or numpy, got {choice!r}")
    if choice == "numba":
        try:
            return "numba", _build_numba()
        except ImportError:
            pass  # no numba available: quiet fallback, same results
    return "numpy", (_numpy_trig_eval, _numpy_cascade_eval)


_BACKEND_NAME, (_trig, _cascade) = _select_backend()


def backend() -> str:
    """Name of the active kernel backend ('numba' or 'numpy')."""
    return _BACKEND_NAME


def _prep(ks, cs, X):
    ks = np.ascontiguousarray(ks, dtype=np.int64)
    cs = np.ascontiguousarray(cs, dtype=np.complex128)
    X = np.ascontiguousarray(X, dtype=np.float64)
    if X.ndim != 2 or ks.ndim != 2 or X.shape[1] != ks.shape[1]:
        raise ValueError("X must be (P, n) and ks (M, n)")
    return ks, cs, X


def trig_eval(ks, cs, X) -> np.ndarray:
    """Evaluate a Laurent polynomial at the points e^{2 pi i x}, x rows of X."""
    ks, cs, X = _prep(ks, cs, X)
    if _BACKEND_NAME == "numba":
        # numba specializes int64 phases as float math; identical formula
        return _trig(ks.astype(np.float64), cs, X)
    return _trig(ks, cs, X)


def cascade_eval(ks, cs, X, inv_at, sqrt_n: float, depth: int) -> np.ndarray:
    """Truncated infinite product of normalized filter samples."""
    ks, cs, X = _prep(ks, cs, X)
    inv_at = np.ascontiguousarray(inv_at, dtype=np.float64)
    if _BACKEND_NAME == "numba":
        return _cascade(ks.astype(np.float64), cs, X, inv_at,
                        float(sqrt_n), int(depth))
    return _cascade(ks, cs, X, inv_at, float(sqrt_n), int(depth))
