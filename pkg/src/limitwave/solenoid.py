"""The measure tau on the solenoid, one cylinder at a time.

A cylinder function is a pair (n, g): the function g o pi_n pulled off
coordinate n of the inverse limit under beta.  The filter m induces
the measure tau with

    integral of (g o pi_n) dtau = integral of g(k) prod_{j<n} |m(beta^j k)|^2 dk,

and the right side is just the constant Fourier coefficient of g times
the weight product, so every tau-integral here is exact coefficient
arithmetic.  The same weight without absolute values conjugates
cylinder dilation/translation into S_infinity / mu_infinity via the
isometry V_infinity, and composing with R_infinity gives the transform
onto the Cantor fractal.  For low-pass filters tau is carried by the
winding line x -> (e^{2 pi i N^{-n} x})_n with density |phi|^2, which
winding_check tests by quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cascade import SampledFn, cohen_probe, eval_trig_grid, quad_weights
from .direct_limit import LimitVector
from .errors import (
    DimensionMismatch,
    LevelTooLow,
    NotLowPass,
    RepresentationMismatch,
)
from .filters import Filter, is_low_pass
from .operators import FilterOperator, apply_S_adjoint
from .torus import (
    LaurentPoly,
    lp_compose_beta,
    lp_conj,
    lp_const,
    lp_mul,
    random_laurent,
)

#: sampled Cohen probe must clear this for the winding line to apply
PROBE_FLOOR = 1e-9


def solenoid_context(filt: Filter) -> FilterOperator:
    """The filter context is all tau needs; reuse the operator wrapper."""
    return FilterOperator(filt)


@dataclass(frozen=True)
class CylinderFn:
    """g o pi_n on the solenoid: nonnegative coordinate level plus a
    Laurent function of that coordinate."""

    level: int
    g: LaurentPoly

    def __post_init__(self):
        if self.level < 0:
            raise LevelTooLow("cylinder levels are nonnegative")
        if not isinstance(self.g, LaurentPoly):
            raise RepresentationMismatch("cylinder data must be a LaurentPoly")


def _weight(ctx: FilterOperator, n: int, absolute: bool) -> LaurentPoly:
    """prod_{j<n} m(beta^j k) (times its conjugate when absolute)."""
    m = ctx.m
    if not isinstance(m, LaurentPoly):
        raise RepresentationMismatch("solenoid weights need a Laurent filter")
    out = lp_const(m.dim, 1.0)
    factor = m if not absolute else lp_mul(m, lp_conj(m))
    for _ in range(n):
        out = lp_mul(out, factor)
        factor = lp_compose_beta(factor, ctx.spec)
    return out


def tau_integral(ctx: FilterOperator, c: CylinderFn) -> complex:
    """Exact integral of the cylinder function against tau: the constant
    coefficient of g times the squared weight product."""
    if c.g.dim != ctx.spec.dim:
        raise DimensionMismatch("cylinder/context dimensions differ")
    prod = lp_mul(c.g, _weight(ctx, c.level, absolute=True))
    return prod.coeffs.get((0,) * c.g.dim, 0j)


def lift(ctx: FilterOperator, c: CylinderFn, target: int) -> CylinderFn:
    """(n, g) and (n+1, g o beta) are the same solenoid function."""
    if target < c.level:
        raise LevelTooLow(f"cannot lower level {c.level} to {target}")
    g = c.g
    for _ in range(target - c.level):
        g = lp_compose_beta(g, ctx.spec)
    return CylinderFn(target, g)


def cylinder_inner(ctx: FilterOperator, c1: CylinderFn, c2: CylinderFn) -> complex:
    """L^2(tau) inner product through a common level."""
    lvl = max(c1.level, c2.level)
    a, b = lift(ctx, c1, lvl), lift(ctx, c2, lvl)
    return tau_integral(ctx, CylinderFn(lvl, lp_mul(a.g, lp_conj(b.g))))


def check_consistency(ctx: FilterOperator, g: LaurentPoly, n: int) -> float:
    """|tau(n+1, g o beta) - tau(n, g)|: the cylinder algebra is
    consistent, so tau extends to a genuine measure."""
    up = tau_integral(ctx, CylinderFn(n + 1, lp_compose_beta(g, ctx.spec)))
    return abs(up - tau_integral(ctx, CylinderFn(n, g)))


def check_dutkay_formula(ctx: FilterOperator, g: LaurentPoly, n: int) -> float:
    """Compare the defining weight-product integral with the root-average
    form N^{-n} sum_{w^{N^n} = z} g(w) prod_j |m(w^{N^j})|^2.

    The root average is evaluated structurally differently, as n passes
    of the Ruelle transfer step h -> S_m*(m h), so agreement is a real
    cross-check and not a tautology.
    """
    lhs = tau_integral(ctx, CylinderFn(n, g))
    h = g
    for _ in range(n):
        h = apply_S_adjoint(ctx, lp_mul(ctx.m, h))
    rhs = h.coeffs.get((0,) * g.dim, 0j)
    return abs(lhs - rhs)


def V_infinity(ctx: FilterOperator, c: CylinderFn) -> LimitVector:
    """The isometry onto the direct limit: (n, g) -> class of
    g prod_{j<n} (m o beta^j) at level n."""
    rep = lp_mul(c.g, _weight(ctx, c.level, absolute=False))
    return LimitVector(c.level, rep, ctx)


def dilation_on_cylinders(ctx: FilterOperator, c: CylinderFn) -> CylinderFn:
    """(n, g) -> (n, (m o beta^n)(g o beta)); conjugate to S_infinity
    under V_infinity."""
    m_shift = ctx.m
    for _ in range(c.level):
        m_shift = lp_compose_beta(m_shift, ctx.spec)
    return CylinderFn(c.level, lp_mul(m_shift, lp_compose_beta(c.g, ctx.spec)))


def translation_on_cylinders(ctx: FilterOperator, gamma, c: CylinderFn) -> CylinderFn:
    """(n, g) -> (n, e_{A^n gamma} g); conjugate to mu_infinity(gamma)."""
    if isinstance(gamma, int):
        gamma = (gamma,)
    shifted = ctx.spec.apply_A_pow(tuple(int(x) for x in gamma), c.level)
    from .torus import lp_monomial

    return CylinderFn(c.level, lp_mul(lp_monomial(c.g.dim, shifted), c.g))


def dutkay_transform(ctx: FilterOperator, c: CylinderFn):
    """F* = R_infinity o V_infinity: cylinder functions over the Cantor
    filter to functions on the inflated Cantor set."""
    from .fractal import R_infinity

    return R_infinity(V_infinity(ctx, c))


def dutkay_transform_check(J: int = 4, K: int = 6, seed: int = 42,
                           trials: int = 12) -> float:
    """Worst residual over the transform's defining properties:

    * F* sends the unit cylinder to chi_C exactly;
    * it is isometric: nu-Gram of images equals the tau-Gram of
      cylinders (n, z^k), n <= J, |k| <= K;
    * it intertwines cylinder dilation with D and cylinder translation
      with lambda on seeded random cylinders.
    """
    from .fractal import apply_D, apply_lambda, cantor_operator, gram_matrix, tf_piece

    ctx = cantor_operator()
    worst = (dutkay_transform(ctx, CylinderFn(0, lp_const(1, 1.0))) -
             tf_piece(0, 0)).max_abs()

    cyls = [CylinderFn(n, LaurentPoly(1, {(k,): 1.0}))
            for n in range(J + 1) for k in range(-K, K + 1)]
    images = [dutkay_transform(ctx, c) for c in cyls]
    G_nu = gram_matrix(images)
    G_tau = np.empty_like(G_nu)
    for i, a in enumerate(cyls):
        for j, b in enumerate(cyls):
            G_tau[i, j] = cylinder_inner(ctx, a, b)
    worst = max(worst, float(np.max(np.abs(G_nu - G_tau))))

    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = int(rng.integers(0, 4))
        c = CylinderFn(n, random_laurent(rng, 1, n_terms=4, radius=6))
        img = dutkay_transform(ctx, c)
        d_resid = (dutkay_transform(ctx, dilation_on_cylinders(ctx, c))
                   - apply_D(img)).max_abs()
        t = int(rng.integers(-3, 4))
        t_resid = (dutkay_transform(ctx, translation_on_cylinders(ctx, t, c))
                   - apply_lambda(t, img)).max_abs()
        worst = max(worst, d_resid, t_resid)
    return worst


def winding_eval(ctx: FilterOperator, c: CylinderFn, xs: np.ndarray) -> np.ndarray:
    """Values of the cylinder function along the winding line
    w(x)_n = e^{2 pi i N^{-n} x}: evaluate g at N^{-level} x."""
    if ctx.spec.dim != 1:
        raise RepresentationMismatch("the winding line is one-dimensional")
    xs = np.asarray(xs, dtype=float)
    scaled = (xs / ctx.spec.N**c.level)[:, None]
    return eval_trig_grid(c.g, scaled)


def winding_check(ctx: FilterOperator, c: CylinderFn, phi: SampledFn,
                  rule: str = "simpson") -> dict:
    """Quadrature of winding_eval(c, x) |phi(x)|^2 dx against the exact
    tau-integral.

    Valid only in the low-pass regime where tau lives on the winding
    line with density |phi|^2; contexts failing the low-pass test or
    the sampled Cohen probe are refused rather than guessed at.
    """
    if ctx.spec.dim != 1:
        raise RepresentationMismatch("the winding line is one-dimensional")
    if not is_low_pass(ctx.m, ctx.spec):
        raise NotLowPass("winding density needs a low-pass filter")
    probe = cohen_probe(ctx.m, ctx.spec, radius=0.125)
    if probe <= PROBE_FLOOR:
        raise NotLowPass(f"sampled Cohen probe hit {probe:g}; "
                         "the winding-line density is not available")
    xs = phi.axes[0]
    w = quad_weights(phi.axes, rule)
    numeric = complex(np.sum(winding_eval(ctx, c, xs) *
                             np.abs(phi.values) ** 2 * w))
    exact = tau_integral(ctx, c)
    return {"numeric": numeric, "exact": exact,
            "deviation": abs(numeric - exact)}
