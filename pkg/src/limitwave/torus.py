"""Exact arithmetic for functions on the n-torus.

Two closed representations are enough for every identity the package
verifies:

* ``LaurentPoly`` -- trigonometric polynomials sum c_k z^k with k in Z^n,
  stored as a sparse multi-index map.  Products, coset sums and
  decimation stay inside the class, so filter and Cuntz identities can
  be checked at coefficient level instead of through sampling.
* ``StepCircleFn`` -- piecewise-constant functions on the circle with
  rational breakpoints, for the generalized (frame) examples where the
  filter is an indicator rather than a polynomial.

Coefficients and values are complex doubles; indices, breakpoints and
arc lengths are exact (Python ints and ``Fraction``), which is what
makes "equal almost everywhere" a decidable test here.
"""
from __future__ import annotations

import bisect
import cmath
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, InternalError, RepresentationMismatch

#: coefficients and values at or below this are dropped during normalization
ZERO_TOL = 1e-14

#: residual threshold for "this identity holds" decisions
CHECK_TOL = 1e-12

Index = tuple[int, ...]


def _as_index(k, dim: int) -> Index:
    if isinstance(k, int):
        if dim != 1:
            raise DimensionMismatch(f"scalar index for dim {dim}")
        return (k,)
    t = tuple(int(x) for x in k)
    if len(t) != dim:
        raise DimensionMismatch(f"index {t} for dim {dim}")
    return t


class LaurentPoly:
    """Finite Laurent series on T^n with structural equality.

    The coefficient map is normalized at construction: indices become
    int tuples, entries with |c| <= ZERO_TOL are dropped, and storage
    order is the sorted index order, so two equal polynomials are equal
    as objects regardless of how they were assembled.
    """

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs: Mapping | Iterable = ()):
        if dim < 1:
            raise DimensionMismatch("dim must be >= 1")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[Index, complex] = {}
        for k, c in items:
            key = _as_index(k, dim)
            acc[key] = acc.get(key, 0j) + complex(c)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(
            self,
            "coeffs",
            {k: acc[k] for k in sorted(acc) if abs(acc[k]) > ZERO_TOL},
        )

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and self.dim == other.dim
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.dim, tuple(self.coeffs.items())))

    def __repr__(self):
        terms = ", ".join(f"{k}: {c:.6g}" for k, c in self.coeffs.items())
        return f"LaurentPoly(dim={self.dim}, {{{terms}}})"

    def __add__(self, other):
        return lp_add(self, other)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return lp_mul(self, other)
        return lp_scale(self, other)

    __rmul__ = __mul__

    def __sub__(self, other):
        return lp_add(self, lp_scale(other, -1))

    def n_terms(self) -> int:
        return len(self.coeffs)

    def max_abs(self) -> float:
        """Largest coefficient magnitude (0 for the zero polynomial)."""
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def support_radius(self) -> int:
        return max((max(abs(x) for x in k) for k in self.coeffs), default=0)

    def is_zero(self, tol: float = CHECK_TOL) -> bool:
        return self.max_abs() <= tol


def lp_monomial(dim: int, k, c: complex = 1.0) -> LaurentPoly:
    return LaurentPoly(dim, {_as_index(k, dim): c})


def lp_const(dim: int, c: complex) -> LaurentPoly:
    return LaurentPoly(dim, {(0,) * dim: c})


def lp_zero(dim: int) -> LaurentPoly:
    return LaurentPoly(dim)


def lp1(coeffs: Mapping[int, complex]) -> LaurentPoly:
    """One-dimensional constructor, `{power: coefficient}`."""
    return LaurentPoly(1, {(k,): c for k, c in coeffs.items()})


def _same_dim(f: LaurentPoly, g: LaurentPoly):
    if f.dim != g.dim:
        raise DimensionMismatch(f"dims {f.dim} and {g.dim}")


def lp_add(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    _same_dim(f, g)
    out = dict(f.coeffs)
    for k, c in g.coeffs.items():
        out[k] = out.get(k, 0j) + c
    return LaurentPoly(f.dim, out)


def lp_scale(f: LaurentPoly, a: complex) -> LaurentPoly:
    return LaurentPoly(f.dim, {k: a * c for k, c in f.coeffs.items()})


def lp_mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Convolution of coefficient maps: (fg)_m = sum_k f_k g_{m-k}."""
    _same_dim(f, g)
    out: dict[Index, complex] = {}
    for ka, ca in f.coeffs.items():
        for kb, cb in g.coeffs.items():
            key = tuple(a + b for a, b in zip(ka, kb))
            out[key] = out.get(key, 0j) + ca * cb
    return LaurentPoly(f.dim, out)


def lp_conj(f: LaurentPoly) -> LaurentPoly:
    """Pointwise conjugate on the torus: coefficient c_k -> conj(c_{-k})."""
    return LaurentPoly(
        f.dim, {tuple(-x for x in k): c.conjugate() for k, c in f.coeffs.items()}
    )


def lp_inner(f: LaurentPoly, g: LaurentPoly) -> complex:
    """L^2(T^n) inner product; monomials are orthonormal."""
    _same_dim(f, g)
    a, b = (f, g) if len(f.coeffs) <= len(g.coeffs) else (g, f)
    acc = 0j
    for k, c in a.coeffs.items():
        d = b.coeffs.get(k)
        if d is not None:
            acc += (c * d.conjugate()) if a is f else (d * c.conjugate())
    return acc


def lp_norm(f: LaurentPoly) -> float:
    return math.sqrt(sum(abs(c) ** 2 for c in f.coeffs.values()))


def lp_eval(f: LaurentPoly, x) -> complex:
    """Value at the torus point e^{2 pi i x}, x in R^n (scalar for n=1)."""
    if isinstance(x, (int, float, Fraction)):
        xs = (float(x),)
    else:
        xs = tuple(float(v) for v in x)
    if len(xs) != f.dim:
        raise DimensionMismatch(f"point of dim {len(xs)} for dim {f.dim}")
    acc = 0j
    for k, c in f.coeffs.items():
        acc += c * cmath.exp(2j * math.pi * sum(ki * xi for ki, xi in zip(k, xs)))
    return acc


def lp_compose_beta(f: LaurentPoly, spec) -> LaurentPoly:
    """f composed with the dual endomorphism: index k moves to A k.

    (f o beta)(e^{2 pi i x}) = sum_k c_k e^{2 pi i (A k) . x}.
    """
    if f.dim != spec.dim:
        raise DimensionMismatch(f"poly dim {f.dim}, dilation dim {spec.dim}")
    return LaurentPoly(f.dim, {spec.apply_A(k): c for k, c in f.coeffs.items()})


def lp_coset_sum(f: LaurentPoly, spec) -> LaurentPoly:
    """sum over a in ker(beta) of f(a z).

    By character orthogonality the coefficient at k survives multiplied
    by N exactly when k is in A Z^n; everything else cancels.
    """
    if f.dim != spec.dim:
        raise DimensionMismatch(f"poly dim {f.dim}, dilation dim {spec.dim}")
    out = {
        k: spec.N * c for k, c in f.coeffs.items() if spec.solve_A(k) is not None
    }
    return LaurentPoly(f.dim, out)


def lp_decimate(f: LaurentPoly, spec) -> LaurentPoly:
    """Inverse reindexing of compose_beta: coefficient at A k moves to k.

    Every index must lie on the sublattice A Z^n; anything else means a
    caller's coset sum went wrong, which is an internal invariant.
    """
    out: dict[Index, complex] = {}
    for k, c in f.coeffs.items():
        kk = spec.solve_A(k)
        if kk is None:
            raise InternalError(f"index {k} not on the A-sublattice")
        out[kk] = c
    return LaurentPoly(f.dim, out)


def random_laurent(rng, dim: int, n_terms: int = 6, radius: int = 8) -> LaurentPoly:
    """Seeded random test polynomial: coefficients uniform on the unit
    disk, support inside the box |k|_inf <= radius."""
    coeffs: dict[Index, complex] = {}
    for _ in range(n_terms):
        k = tuple(int(rng.integers(-radius, radius + 1)) for _ in range(dim))
        r = math.sqrt(rng.uniform())
        th = rng.uniform(0.0, 2.0 * math.pi)
        coeffs[k] = coeffs.get(k, 0j) + r * cmath.exp(1j * th)
    return LaurentPoly(dim, coeffs)


# ---------------------------------------------------------------------------
# piecewise-constant circle functions


def _mod1(x: Fraction) -> Fraction:
    return x - (x // 1)


class StepCircleFn:
    """Step function on the circle [0, 1) with rational breakpoints.

    ``breakpoints`` is a strictly increasing tuple of Fractions starting
    at 0; ``values[i]`` is the constant on [b_i, b_{i+1}) (the last arc
    wraps to 1).  Functions are identified up to null sets, so endpoint
    conventions never matter.  Normalization merges consecutive arcs
    whose values agree within ZERO_TOL; the leading breakpoint 0 always
    stays, even when the function is continuous across the wrap.
    """

    __slots__ = ("breakpoints", "values")

    def __init__(self, breakpoints: Sequence, values: Sequence[complex]):
        bks = [Fraction(b) for b in breakpoints]
        vals = [complex(v) for v in values]
        if len(bks) != len(vals) or not bks:
            raise RepresentationMismatch("breakpoint/value length mismatch")
        if bks[0] != 0:
            raise RepresentationMismatch("first breakpoint must be 0")
        if any(not (0 <= b < 1) for b in bks):
            raise RepresentationMismatch("breakpoints must lie in [0, 1)")
        if any(b2 <= b1 for b1, b2 in zip(bks, bks[1:])):
            raise RepresentationMismatch("breakpoints must be strictly increasing")
        mb = [bks[0]]
        mv = [vals[0]]
        for b, v in zip(bks[1:], vals[1:]):
            if abs(v - mv[-1]) <= ZERO_TOL:
                continue  # merge into the running arc
            mb.append(b)
            mv.append(v)
        object.__setattr__(self, "breakpoints", tuple(mb))
        object.__setattr__(self, "values", tuple(mv))

    def __setattr__(self, name, value):
        raise AttributeError("StepCircleFn is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, StepCircleFn)
            and self.breakpoints == other.breakpoints
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.breakpoints, self.values))

    def __repr__(self):
        arcs = ", ".join(
            f"[{b}..): {v:.6g}" for b, v in zip(self.breakpoints, self.values)
        )
        return f"StepCircleFn({arcs})"

    def n_arcs(self) -> int:
        return len(self.values)

    def max_abs(self) -> float:
        return max(abs(v) for v in self.values)

    def is_zero(self, tol: float = CHECK_TOL) -> bool:
        return self.max_abs() <= tol


def sf_const(c: complex) -> StepCircleFn:
    return StepCircleFn([Fraction(0)], [c])


def step_indicator(arcs: Iterable[tuple]) -> StepCircleFn:
    """Indicator of a union of rational arcs, given as (lo, hi) pairs.

    Endpoints may be any rationals with lo < hi <= lo + 1; arcs are
    reduced mod 1 and may wrap (e.g. (-1/6, 1/6]).  Half-open handling
    is immaterial since functions are classes mod null sets.
    """
    pieces: list[tuple[Fraction, Fraction]] = []
    for lo, hi in arcs:
        lo, hi = Fraction(lo), Fraction(hi)
        if not lo < hi <= lo + 1:
            raise RepresentationMismatch(f"bad arc ({lo}, {hi})")
        a, b = _mod1(lo), _mod1(lo) + (hi - lo)
        if b <= 1:
            pieces.append((a, b))
        else:
            pieces.append((a, Fraction(1)))
            pieces.append((Fraction(0), b - 1))
    cuts = {Fraction(0)}
    for a, b in pieces:
        cuts.add(a)
        if b < 1:
            cuts.add(b)
    bks = sorted(cuts)

    def val(x: Fraction) -> complex:
        return 1.0 if any(a <= x < b for a, b in pieces) else 0.0

    return _from_breakpoints(bks, val)


def _from_breakpoints(bks: Sequence[Fraction], value_at) -> StepCircleFn:
    """Build a step function from exact breakpoints and a midpoint rule."""
    ext = list(bks) + [Fraction(1)]
    vals = [value_at((a + b) / 2) for a, b in zip(ext, ext[1:])]
    return StepCircleFn(bks, vals)


def sf_eval(f: StepCircleFn, x) -> complex:
    """Value on the arc containing x (x reduced mod 1; exact for Fraction)."""
    if isinstance(x, (int, Fraction)):
        xf = _mod1(Fraction(x))
        i = bisect.bisect_right(f.breakpoints, xf) - 1
        return f.values[i]
    xf = float(x) % 1.0
    floats = [float(b) for b in f.breakpoints]
    return f.values[bisect.bisect_right(floats, xf) - 1]


def _merged_breakpoints(*fns: StepCircleFn) -> list[Fraction]:
    cuts: set[Fraction] = set()
    for f in fns:
        cuts.update(f.breakpoints)
    return sorted(cuts)


def sf_add(f: StepCircleFn, g: StepCircleFn) -> StepCircleFn:
    bks = _merged_breakpoints(f, g)
    return _from_breakpoints(bks, lambda x: sf_eval(f, x) + sf_eval(g, x))


def sf_mul(f: StepCircleFn, g: StepCircleFn) -> StepCircleFn:
    bks = _merged_breakpoints(f, g)
    return _from_breakpoints(bks, lambda x: sf_eval(f, x) * sf_eval(g, x))


def sf_scale(f: StepCircleFn, a: complex) -> StepCircleFn:
    return StepCircleFn(f.breakpoints, [a * v for v in f.values])


def sf_sub(f: StepCircleFn, g: StepCircleFn) -> StepCircleFn:
    return sf_add(f, sf_scale(g, -1.0))


def sf_conj(f: StepCircleFn) -> StepCircleFn:
    return StepCircleFn(f.breakpoints, [v.conjugate() for v in f.values])


def sf_translate(f: StepCircleFn, t) -> StepCircleFn:
    """g(x) = f(x + t) for rational t."""
    t = Fraction(t)
    cuts = {Fraction(0)}
    cuts.update(_mod1(b - t) for b in f.breakpoints)
    return _from_breakpoints(sorted(cuts), lambda x: sf_eval(f, x + t))


def sf_compose_pow(f: StepCircleFn, n: int) -> StepCircleFn:
    """f o beta^1 for the circle with integer dilation n: x -> f(n x mod 1)."""
    if n < 1:
        raise RepresentationMismatch("dilation must be a positive integer")
    cuts = {Fraction(0)}
    for j in range(n):
        cuts.update((b + j) / n for b in f.breakpoints)
    return _from_breakpoints(sorted(cuts), lambda x: sf_eval(f, n * x))


def sf_coset_sum(f: StepCircleFn, n: int) -> StepCircleFn:
    """x -> sum_{j=0}^{n-1} f(x + j/n), the kernel-coset sum on the circle."""
    if n < 1:
        raise RepresentationMismatch("dilation must be a positive integer")
    cuts = {Fraction(0)}
    for j in range(n):
        t = Fraction(j, n)
        cuts.update(_mod1(b - t) for b in f.breakpoints)
    return _from_breakpoints(
        sorted(cuts), lambda x: sum(sf_eval(f, x + Fraction(j, n)) for j in range(n))
    )


def sf_inner(f: StepCircleFn, g: StepCircleFn) -> complex:
    """Lebesgue inner product; arc lengths stay exact until the end."""
    bks = _merged_breakpoints(f, g)
    ext = bks + [Fraction(1)]
    acc = 0j
    for a, b in zip(ext, ext[1:]):
        mid = (a + b) / 2
        acc += sf_eval(f, mid) * sf_eval(g, mid).conjugate() * float(b - a)
    return acc


def sf_norm(f: StepCircleFn) -> float:
    return math.sqrt(sf_inner(f, f).real)


def sf_integral(f: StepCircleFn) -> complex:
    return sf_inner(f, sf_const(1.0))


def sf_fourier_coeff(f: StepCircleFn, n: int) -> complex:
    """Exact n-th Fourier coefficient of a step function."""
    ext = list(f.breakpoints) + [Fraction(1)]
    if n == 0:
        return sum(v * float(b2 - b1) for v, b1, b2 in zip(f.values, ext, ext[1:]))
    acc = 0j
    w = 2j * math.pi * n
    for v, b1, b2 in zip(f.values, ext, ext[1:]):
        acc += v * (cmath.exp(-w * float(b1)) - cmath.exp(-w * float(b2))) / w
    return acc
