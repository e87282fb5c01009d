"""Exact wavelet analysis on the inflated Cantor set.

R = union over n >= 0, k in Z of 3^{-n}(C + k) carries the canonical
measure nu with nu(C) = 1 and nu(3^{-n}(C+k)) = 2^{-n}.  Finite
combinations of the pieces chi_{(n,k)} := chi_{3^{-n}(C+k)} are dense
enough for every identity in sight, and they close under dilation
(D f)(x) = 2^{-1/2} f(x/3), integer translation, and the refinement
chi_{(n,k)} = chi_{(n+1,3k)} + chi_{(n+1,3k+2)}.  The operator R sends
the standard basis e_n to chi_{C+n}, and R_infinity extends it to the
direct limit over the Cantor filter m(z) = 2^{-1/2}(1 + z^2), carrying
limit vectors to genuine nu-square-integrable functions.
"""
from __future__ import annotations

import math
from typing import Mapping

import numpy as np

from .dilation import DilationSpec, make_dilation
from .direct_limit import LimitVector, promote
from .errors import (
    ContextMismatch,
    ParameterOutOfRange,
    RepresentationMismatch,
    SupportOverflow,
)
from .filters import Filter, FilterBank
from .operators import FilterOperator
from .torus import CHECK_TOL, ZERO_TOL, LaurentPoly, lp1

#: triadic supports are capped like every other representation
SUPPORT_CAP = 1_000_000

Key = tuple[int, int]


class TriadicFn:
    """Finite combination sum c_{n,k} chi_{(n,k)}, canonicalized so all
    terms sit at one common level (the maximum level present)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, complex] | None = None):
        acc: dict[Key, complex] = {}
        for (n, k), c in (terms or {}).items():
            key = (int(n), int(k))
            acc[key] = acc.get(key, 0j) + complex(c)
        acc = {k: c for k, c in acc.items() if abs(c) > ZERO_TOL}
        if acc:
            top = max(n for n, _ in acc)
            acc = _refine_terms(acc, top)
        object.__setattr__(self, "terms", {k: acc[k] for k in sorted(acc)})

    def __setattr__(self, name, value):
        raise AttributeError("TriadicFn is immutable")

    def __repr__(self):
        inner = ", ".join(f"({n},{k}): {c:.6g}" for (n, k), c in self.terms.items())
        return f"TriadicFn({{{inner}}})"

    def __eq__(self, other):
        """Equality as functions: compare on a common refinement level."""
        if not isinstance(other, TriadicFn):
            return NotImplemented
        a, b = _common_level(self, other)
        return a == b

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __add__(self, other):
        a, b = _common_level(self, other)
        out = dict(a)
        for k, c in b.items():
            out[k] = out.get(k, 0j) + c
        return TriadicFn(out)

    def __sub__(self, other):
        return self + tf_scale(other, -1.0)

    def level(self) -> int:
        """Common level of the canonical form (0 for the zero function)."""
        return next(iter(self.terms), (0, 0))[0]

    def n_terms(self) -> int:
        return len(self.terms)

    def max_abs(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def is_zero(self, tol: float = CHECK_TOL) -> bool:
        return self.max_abs() <= tol


def _refine_terms(terms: dict[Key, complex], level: int) -> dict[Key, complex]:
    """Rewrite every term at the target level via the subdivision
    chi_{(n,k)} = chi_{(n+1,3k)} + chi_{(n+1,3k+2)}."""
    out: dict[Key, complex] = {}
    for (n, k), c in terms.items():
        if n > level:
            raise RepresentationMismatch(f"cannot coarsen level {n} to {level}")
        offsets = [k]
        for _ in range(level - n):
            offsets = [o3 for o in offsets for o3 in (3 * o, 3 * o + 2)]
            if len(out) + len(offsets) > SUPPORT_CAP:
                raise SupportOverflow("triadic refinement exceeded the support cap")
        for o in offsets:
            key = (level, o)
            out[key] = out.get(key, 0j) + c
    return {k: c for k, c in out.items() if abs(c) > ZERO_TOL}


def _common_level(f: TriadicFn, g: TriadicFn):
    lvl = max(f.level(), g.level())
    return _refine_terms(f.terms, lvl), _refine_terms(g.terms, lvl)


def tf_piece(n: int, k: int, c: complex = 1.0) -> TriadicFn:
    """c times the indicator of 3^{-n}(C + k)."""
    return TriadicFn({(n, k): c})


def tf_scale(f: TriadicFn, a: complex) -> TriadicFn:
    return TriadicFn({k: a * c for k, c in f.terms.items()})


def refine(f: TriadicFn, level: int) -> TriadicFn:
    """f rewritten with all terms at the given (deeper or equal) level."""
    if f.n_terms() == 0:
        return f
    if level < f.level():
        raise RepresentationMismatch(f"level {level} below canonical {f.level()}")
    return TriadicFn(_refine_terms(f.terms, level))


def nu_inner(f: TriadicFn, g: TriadicFn) -> complex:
    """Integral of f conj(g) dnu; pieces at level n have measure 2^{-n}."""
    a, b = _common_level(f, g)
    lvl = max((n for n, _ in a), default=0)
    w = 2.0 ** (-lvl)
    small, big, flip = (a, b, False) if len(a) <= len(b) else (b, a, True)
    acc = 0j
    for k, c in small.items():
        d = big.get(k)
        if d is not None:
            acc += (c * d.conjugate()) if not flip else (d * c.conjugate())
    return acc * w


def nu_norm(f: TriadicFn) -> float:
    return math.sqrt(max(nu_inner(f, f).real, 0.0))


def apply_D(f: TriadicFn) -> TriadicFn:
    """(D f)(x) = 2^{-1/2} f(x/3): piece (n, k) coarsens to (n-1, k)."""
    s = 1.0 / math.sqrt(2.0)
    return TriadicFn({(n - 1, k): s * c for (n, k), c in f.terms.items()})


def apply_D_inverse(f: TriadicFn) -> TriadicFn:
    s = math.sqrt(2.0)
    return TriadicFn({(n + 1, k): s * c for (n, k), c in f.terms.items()})


def apply_D_pow(f: TriadicFn, p: int) -> TriadicFn:
    for _ in range(abs(p)):
        f = apply_D(f) if p > 0 else apply_D_inverse(f)
    return f


def apply_lambda(j: int, f: TriadicFn) -> TriadicFn:
    """Translation by the integer j: f(x - j).

    Terms are first refined to a nonnegative level so the shift
    3^n j stays integral; at level n the piece offset moves by 3^n j.
    """
    if f.n_terms() == 0:
        return f
    lvl = max(f.level(), 0)
    shift = 3**lvl * j
    return TriadicFn(
        {(n, k + shift): c for (n, k), c in _refine_terms(f.terms, lvl).items()}
    )


def intertwiner_R(f: LaurentPoly) -> TriadicFn:
    """R e_n = chi_{C+n}: send Fourier coefficients to level-0 pieces.

    R is an isometry of L^2(T) onto the span of the integer translates
    of chi_C because those translates are nu-orthonormal.
    """
    if f.dim != 1:
        raise RepresentationMismatch("R is defined on the circle")
    return TriadicFn({(0, k[0]): c for k, c in f.coeffs.items()})


_CANTOR_SPEC: DilationSpec | None = None


def cantor_spec() -> DilationSpec:
    global _CANTOR_SPEC
    if _CANTOR_SPEC is None:
        _CANTOR_SPEC = make_dilation([[3]])
    return _CANTOR_SPEC


def cantor_filter() -> LaurentPoly:
    """m(z) = 2^{-1/2}(1 + z^2); a filter for N = 3 that is not low-pass
    (m(1) = 2^{1/2}), matching the Cantor set's measure-2^{-n} scaling."""
    s = 1.0 / math.sqrt(2.0)
    return lp1({0: s, 2: s})


def cantor_bank() -> FilterBank:
    """{2^{-1/2}(1+z^2), z, 2^{-1/2}(1-z^2)} for dilation by 3."""
    s = 1.0 / math.sqrt(2.0)
    return FilterBank([lp1({0: s, 2: s}), lp1({1: 1.0}), lp1({0: s, 2: -s})],
                      cantor_spec())


def cantor_operator() -> FilterOperator:
    return FilterOperator(Filter(cantor_filter(), cantor_spec()))


def R_infinity(v: LimitVector) -> TriadicFn:
    """Extend R to the direct limit: (n, f) -> D^{-n} R(f).

    Well-defined because R S_m = D R for the Cantor filter; any
    representative of the class gives the same function.
    """
    op = cantor_operator()
    if v.op != op:
        raise ContextMismatch("R_infinity is defined over the Cantor filter")
    if not isinstance(v.rep, LaurentPoly):
        raise RepresentationMismatch("R_infinity needs a Laurent representative")
    return apply_D_pow(intertwiner_R(v.rep), -v.level)


def cantor_wavelets() -> tuple[TriadicFn, TriadicFn]:
    """psi_1 = 2^{1/2} chi_{3^{-1}(C+1)}, psi_2 = chi_{3^{-1}C} - chi_{3^{-1}(C+2)}.

    Together with the translates and D-dilates of chi_C they generate an
    orthonormal basis; both have two/one pieces at level 1.
    """
    return tf_piece(1, 1, math.sqrt(2.0)), TriadicFn({(1, 0): 1.0, (1, 2): -1.0})


def r_family(r: float):
    """The one-parameter deformation of the Cantor bank, 0 <= r <= 2^{-1/2}.

    Returns (bank, psi_1r, psi_2r).  At r = 2^{-1/2} the wavelets reduce
    to the pair from cantor_wavelets; at r = 0 the middle filter loses
    its z term entirely.
    """
    r = float(r)
    if not 0.0 <= r <= 1.0 / math.sqrt(2.0) + 1e-15:
        raise ParameterOutOfRange(f"r = {r} outside [0, 2^-1/2]")
    # both clamps only absorb rounding at the endpoint r = 2^{-1/2},
    # where (1 - 2r^2, sqrt(2) r) must come out exactly (0, 1)
    s = math.sqrt(max(1.0 - 2.0 * r * r, 0.0))  # (1 - 2 r^2)^{1/2}
    t = min(math.sqrt(2.0) * r, 1.0)
    sh = s / math.sqrt(2.0)
    m0 = cantor_filter()
    m1 = lp1({0: -sh, 1: t, 2: sh})
    m2 = lp1({0: r, 1: s, 2: -r})
    bank = FilterBank([m0, m1, m2], cantor_spec(), low_pass_index=0)
    psi1 = TriadicFn({(1, 0): -s, (1, 1): 2.0 * r, (1, 2): s})
    psi2 = TriadicFn({(1, 0): t, (1, 1): math.sqrt(2.0) * s, (1, 2): -t})
    return bank, psi1, psi2


def wavelet_system(psi: TriadicFn, j: int, k: int) -> TriadicFn:
    """psi_{j,k} = D^{-j} lambda_k psi = 2^{j/2} psi(3^j x - k)."""
    return apply_D_pow(apply_lambda(k, psi), -j)


def gram_matrix(fns: list[TriadicFn]) -> np.ndarray:
    """nu-inner-product Gram matrix, over one shared refinement level."""
    if not fns:
        return np.zeros((0, 0), dtype=complex)
    lvl = max(f.level() for f in fns)
    reps = [_refine_terms(f.terms, lvl) for f in fns]
    w = 2.0 ** (-lvl)
    n = len(reps)
    G = np.empty((n, n), dtype=complex)
    for i, a in enumerate(reps):
        for j in range(i, n):
            b = reps[j]
            small, big = (a, b) if len(a) <= len(b) else (b, a)
            acc = 0j
            for key, c in small.items():
                d = big.get(key)
                if d is not None:
                    acc += c * d.conjugate()
            if small is b:
                acc = acc.conjugate()
            G[i, j] = acc * w
            G[j, i] = G[i, j].conjugate()
    return G
