"""Classical wavelets on R^n from low-pass filters.

The scaling function is evaluated through the truncated infinite
product phi_P(x) = prod_{j=1..P} N^{-1/2} m(e^{2 pi i (A^T)^{-j} x})
on a uniform grid over a box [-T, T]^n.  Identities are then checked
against fresh re-evaluation of the product, never against grid
interpolation, so the only error terms are truncation depth and
quadrature.  Sampled functions carry their evaluator with them, which
is what lets wavelet_system_sample dilate and modulate exactly.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import reduce
from typing import Callable

import numpy as np

from . import _kernels
from .dilation import DilationSpec
from .errors import BoxTooSmall, Diverged, RepresentationMismatch
from .filters import FilterBank, is_low_pass
from .torus import LaurentPoly

#: default truncation depth of the scaling product
DEFAULT_DEPTH = 20

#: default half-width of the sampling box
DEFAULT_BOX = 32.0

#: default grid step
DEFAULT_STEP = 1.0 / 64.0

#: default translation radius for the partition-of-unity check
DEFAULT_POU_RADIUS = 40

#: |phi|^2 on the outermost unit shell above this means no decay
DIVERGENCE_TAIL = 0.1


@dataclass
class SampledFn:
    """Function sampled on a tensor grid, with its pointwise evaluator.

    ``values[i1, ..., in]`` is the value at (axes[0][i1], ...);
    ``evaluate`` accepts an (P, n) array of points and recomputes values
    from scratch.
    """

    axes: tuple[np.ndarray, ...]
    values: np.ndarray
    box: float
    step: float
    depth: int | None = None
    evaluate: Callable[[np.ndarray], np.ndarray] | None = None
    name: str | None = None

    @property
    def dim(self) -> int:
        return len(self.axes)

    def grid_points(self) -> np.ndarray:
        return _grid_points(self.axes)


def _axis(box: float, step: float) -> np.ndarray:
    n = round(box / step)
    if abs(n * step - box) > 1e-9 or n < 1:
        raise BoxTooSmall(f"box {box} is not a positive multiple of step {step}")
    return np.arange(-n, n + 1) * step


def _grid_points(axes) -> np.ndarray:
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def _coeff_arrays(m: LaurentPoly):
    ks = np.array(list(m.coeffs.keys()), dtype=np.int64).reshape(len(m.coeffs), m.dim)
    cs = np.array(list(m.coeffs.values()), dtype=np.complex128)
    return ks, cs


def _inv_AT(spec: DilationSpec) -> np.ndarray:
    AT = np.array(spec.A, dtype=float).T
    return np.linalg.inv(AT)


def eval_trig_grid(m: LaurentPoly, X: np.ndarray) -> np.ndarray:
    """m(e^{2 pi i x}) for each row x of X, through the kernel backend."""
    ks, cs = _coeff_arrays(m)
    return _kernels.trig_eval(ks, cs, X)


def scaling_function(m: LaurentPoly, spec: DilationSpec,
                     depth: int = DEFAULT_DEPTH, box: float = DEFAULT_BOX,
                     step: float = DEFAULT_STEP) -> SampledFn:
    """Sample the truncated scaling product on [-box, box]^n.

    Warns (but proceeds) when m(1) != sqrt(N): without the low-pass
    normalization the product has no useful limit, but sampling it can
    still be instructive.
    """
    if not isinstance(m, LaurentPoly):
        raise RepresentationMismatch("cascade evaluation needs a Laurent filter")
    if not is_low_pass(m, spec):
        warnings.warn("filter is not low-pass; the scaling product need not converge",
                      RuntimeWarning, stacklevel=2)
    ks, cs = _coeff_arrays(m)
    inv_at = _inv_AT(spec)
    sqrt_n = math.sqrt(spec.N)

    def evaluate(X: np.ndarray) -> np.ndarray:
        return _kernels.cascade_eval(ks, cs, X, inv_at, sqrt_n, depth)

    axes = tuple(_axis(box, step) for _ in range(spec.dim))
    vals = evaluate(_grid_points(axes)).reshape([len(a) for a in axes])
    return SampledFn(axes=axes, values=vals, box=float(box), step=float(step),
                     depth=depth, evaluate=evaluate, name="phi")


def check_scaling_identity(phi: SampledFn, m: LaurentPoly, spec: DilationSpec) -> float:
    """max |sqrt(N) phi(A^T x) - m(e^{2 pi i x}) phi(x)| over the grid.

    phi(A^T x) is recomputed through the product evaluator, so the
    residual measures truncation depth, not interpolation error.
    """
    if phi.evaluate is None:
        raise RepresentationMismatch("sampled function has no evaluator")
    X = phi.grid_points()
    Y = X @ np.array(spec.A, dtype=float)  # rows (A^T x)^T = x^T A
    lhs = math.sqrt(spec.N) * phi.evaluate(Y)
    rhs = eval_trig_grid(m, X) * phi.values.ravel()
    return float(np.max(np.abs(lhs - rhs)))


def check_partition_of_unity(phi: SampledFn, K: int = DEFAULT_POU_RADIUS) -> float:
    """max over the unit cell of |sum_{|k|_inf <= K} |phi(x+k)|^2 - 1|.

    Raises BoxTooSmall when the box cannot hold the translates and
    Diverged when |phi| shows no decay at the box edge (e.g. the
    constant filter, whose product is identically 1 and not square
    summable).
    """
    if K < 0:
        raise BoxTooSmall("translation radius must be nonnegative")
    if K + 1 > phi.box:
        raise BoxTooSmall(f"need box >= K+1 = {K + 1}, have {phi.box}")
    tail = 0.0
    for d in range(phi.dim):
        edge = np.abs(phi.axes[d]) >= phi.box - 1.0
        sl = [slice(None)] * phi.dim
        sl[d] = edge
        tail = max(tail, float(np.max(np.abs(phi.values[tuple(sl)]) ** 2)))
    if tail > DIVERGENCE_TAIL:
        raise Diverged(f"|phi|^2 = {tail:g} on the outer shell; no decay")

    pu = round(1.0 / phi.step)
    if abs(pu * phi.step - 1.0) > 1e-9:
        raise BoxTooSmall("step must divide 1 for translate alignment")
    i0 = round(phi.box / phi.step)
    cell = np.zeros((pu,) * phi.dim)
    from .operators import _index_box

    for k in _index_box(phi.dim, K):
        sl = tuple(slice(i0 + ki * pu, i0 + ki * pu + pu) for ki in k)
        cell += np.abs(phi.values[sl]) ** 2
    return float(np.max(np.abs(cell - 1.0)))


def cohen_probe(m: LaurentPoly, spec: DilationSpec, radius: float = 0.25,
                samples: int = 257) -> float:
    """min |m(e^{2 pi i x})| over the sampled cube |x|_inf <= radius.

    A strictly positive probe on a neighborhood of the identity is the
    sampled stand-in for Cohen's condition; a zero (like the Cantor
    filter's at x = 1/4) flags that L^2(R) translates cannot be
    orthonormal.  The probe never proves the condition, it only
    reports the sampled minimum.
    """
    axes = [np.linspace(-radius, radius, samples) for _ in range(spec.dim)]
    vals = eval_trig_grid(m, _grid_points(axes))
    return float(np.min(np.abs(vals)))


def classical_wavelets(bank: FilterBank, phi: SampledFn) -> list[SampledFn]:
    """psi_w(x) = N^{-1/2} m_w(e^{2 pi i (A^T)^{-1} x}) phi((A^T)^{-1} x)
    for every high-pass member, sampled on phi's grid."""
    if phi.evaluate is None:
        raise RepresentationMismatch("sampled function has no evaluator")
    spec = bank.spec
    inv_at = _inv_AT(spec)
    sqrt_n = math.sqrt(spec.N)
    out = []
    for idx, mw in zip(
        (i for i in range(len(bank.filters)) if i != bank.low_pass_index),
        bank.high_pass(),
    ):
        if not isinstance(mw, LaurentPoly):
            raise RepresentationMismatch("classical wavelets need Laurent banks")
        ks, cs = _coeff_arrays(mw)

        def evaluate(X, _ks=ks, _cs=cs):
            Y = X @ inv_at.T
            return _kernels.trig_eval(_ks, _cs, Y) / sqrt_n * phi.evaluate(Y)

        vals = evaluate(phi.grid_points()).reshape(phi.values.shape)
        out.append(SampledFn(axes=phi.axes, values=vals, box=phi.box,
                             step=phi.step, depth=phi.depth, evaluate=evaluate,
                             name=f"psi[{idx}]"))
    return out


def wavelet_system_sample(psi: SampledFn, spec: DilationSpec, j: int, k) -> SampledFn:
    """psi_{j,k}(x) = N^{j/2} e^{2 pi i k.(A^T)^j x} psi((A^T)^j x).

    j = 0, k = 0 reproduces psi.  Points are pushed through psi's own
    evaluator, so any (j, k) is fair game on the fixed grid.
    """
    if psi.evaluate is None:
        raise RepresentationMismatch("sampled function has no evaluator")
    if isinstance(k, int):
        k = (k,)
    kv = np.array(k, dtype=float)
    AT = np.array(spec.A, dtype=float).T
    ATj = np.linalg.matrix_power(AT, j)
    amp = spec.N ** (j / 2.0)

    def evaluate(X):
        Y = X @ ATj.T
        return amp * np.exp(2j * np.pi * (Y @ kv)) * psi.evaluate(Y)

    vals = evaluate(psi.grid_points()).reshape(psi.values.shape)
    return SampledFn(axes=psi.axes, values=vals, box=psi.box, step=psi.step,
                     depth=psi.depth, evaluate=evaluate,
                     name=f"{psi.name or 'psi'}[j={j},k={k}]")


# -- quadrature over the sampled box ----------------------------------


def quad_weights(axes, rule: str = "trapezoid") -> np.ndarray:
    """Tensor quadrature weights for the grid; 'simpson' needs an odd
    number of points per axis."""
    ws = []
    for a in axes:
        n = len(a)
        h = float(a[1] - a[0])
        if rule == "trapezoid":
            w = np.full(n, h)
            w[0] = w[-1] = h / 2.0
        elif rule == "simpson":
            if n % 2 == 0:
                raise BoxTooSmall("simpson rule needs an odd point count")
            w = np.full(n, 2.0)
            w[1::2] = 4.0
            w[0] = w[-1] = 1.0
            w *= h / 3.0
        else:
            raise ValueError(f"unknown quadrature rule {rule!r}")
        ws.append(w)
    return reduce(np.multiply.outer, ws)


def quad_inner(f: SampledFn, g: SampledFn, rule: str = "trapezoid") -> complex:
    W = quad_weights(f.axes, rule)
    return complex(np.sum(f.values * np.conj(g.values) * W))


def quad_norm(f: SampledFn, rule: str = "trapezoid") -> float:
    return math.sqrt(max(quad_inner(f, f, rule).real, 0.0))


def quad_gram(fns: list[SampledFn], rule: str = "trapezoid") -> np.ndarray:
    W = quad_weights(fns[0].axes, rule) if fns else None
    n = len(fns)
    G = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            val = complex(np.sum(fns[i].values * np.conj(fns[j].values) * W))
            G[i, j] = val
            G[j, i] = val.conjugate()
    return G
