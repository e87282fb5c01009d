"""Vectors in the direct limit lim (L^2(T^n), S_m).

A limit vector is a pair (level n, representative f): the class of f
viewed through n applications of the connecting isometry.  (n, f) and
(n+1, S_m f) are the same vector, which fixes all the arithmetic:
inner products promote to a common level, S_infinity acts as S_m on
representatives, and its inverse just relabels one level up -- the
unitary dilation of S_m lives here at no extra cost.  Translations
mu_infinity(gamma) act at level n as multiplication by the character
e_{A^n gamma}.
"""
from __future__ import annotations

import numpy as np

from .errors import (
    ContextMismatch,
    LevelCapExceeded,
    LevelTooLow,
    RepresentationMismatch,
    SupportOverflow,
)
from .filters import FilterBank, TorusFn
from .operators import FilterOperator, apply_S
from .torus import LaurentPoly, StepCircleFn, lp_inner, lp_monomial, lp_mul, sf_inner

#: resolution levels are capped per run; deep promotions explode supports
LEVEL_CAP = 64

#: refuse representatives with more coefficients than this
SUPPORT_CAP = 1_000_000


class LimitVector:
    """(level, representative) over a fixed filter context."""

    __slots__ = ("level", "rep", "op")

    def __init__(self, level: int, rep: TorusFn, op: FilterOperator):
        if level < 0:
            raise LevelTooLow("levels are nonnegative")
        if level > LEVEL_CAP:
            raise LevelCapExceeded(f"level {level} > cap {LEVEL_CAP}")
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "op", op)

    def __setattr__(self, name, value):
        raise AttributeError("LimitVector is immutable")

    def __repr__(self):
        return f"LimitVector(level={self.level}, rep={self.rep!r})"


def _same_context(v: LimitVector, w: LimitVector):
    if v.op != w.op:
        raise ContextMismatch("vectors built over different filters")


def _guard_support(rep: TorusFn):
    size = rep.n_terms() if isinstance(rep, LaurentPoly) else rep.n_arcs()
    if size > SUPPORT_CAP:
        raise SupportOverflow(f"{size} coefficients exceeds {SUPPORT_CAP}")


def promote(v: LimitVector, target: int) -> LimitVector:
    """Rewrite v at a deeper level; (n, f) -> (n+1, S_m f) repeatedly."""
    if target < v.level:
        raise LevelTooLow(f"cannot demote level {v.level} to {target}")
    if target > LEVEL_CAP:
        raise LevelCapExceeded(f"target {target} > cap {LEVEL_CAP}")
    rep = v.rep
    for _ in range(target - v.level):
        rep = apply_S(v.op, rep)
        _guard_support(rep)
    return LimitVector(target, rep, v.op)


def limit_inner(v: LimitVector, w: LimitVector) -> complex:
    """Inner product in the limit space: promote to a common level and
    take the base-space inner product (the connecting maps are
    isometries, so the answer does not depend on the level chosen)."""
    _same_context(v, w)
    lvl = max(v.level, w.level)
    a, b = promote(v, lvl).rep, promote(w, lvl).rep
    if isinstance(a, LaurentPoly) and isinstance(b, LaurentPoly):
        return lp_inner(a, b)
    if isinstance(a, StepCircleFn) and isinstance(b, StepCircleFn):
        return sf_inner(a, b)
    raise RepresentationMismatch("mixed representations in one context")


def apply_S_infinity(v: LimitVector) -> LimitVector:
    """S_infinity (n, f) = (n, S_m f)."""
    rep = apply_S(v.op, v.rep)
    _guard_support(rep)
    return LimitVector(v.level, rep, v.op)


def apply_S_infinity_inverse(v: LimitVector) -> LimitVector:
    """S_infinity^{-1} (n, f) = (n+1, f): pure relabeling, which is why
    the limit operator is unitary while S_m itself is only an isometry."""
    return LimitVector(v.level + 1, v.rep, v.op)


def apply_S_infinity_pow(v: LimitVector, p: int) -> LimitVector:
    for _ in range(abs(p)):
        v = apply_S_infinity(v) if p > 0 else apply_S_infinity_inverse(v)
    return v


def apply_mu_infinity(gamma, v: LimitVector) -> LimitVector:
    """Translation representation: at level n multiply by e_{A^n gamma}."""
    if not isinstance(v.rep, LaurentPoly):
        raise RepresentationMismatch("mu_infinity needs a Laurent representative")
    spec = v.op.spec
    if isinstance(gamma, int):
        gamma = (gamma,)
    gamma = tuple(int(x) for x in gamma)
    shifted = spec.apply_A_pow(gamma, v.level)
    rep = lp_mul(lp_monomial(spec.dim, shifted), v.rep)
    return LimitVector(v.level, rep, v.op)


def wavelet_generators(bank: FilterBank) -> list[LimitVector]:
    """The vectors (1, m_b) for every non-distinguished bank member.

    These are U_1 S_1 applied to the high-pass directions; their
    S_infinity / mu_infinity orbit is the wavelet basis.
    """
    op = FilterOperator(_low_pass_filter(bank))
    return [LimitVector(1, m, op) for m in bank.high_pass()]


def _low_pass_filter(bank: FilterBank):
    from .filters import Filter

    return Filter(bank.low_pass(), bank.spec)


def wavelet_family(generators: list[LimitVector], J: int, K: int) -> list[LimitVector]:
    """{S_infinity^{-j} mu_infinity(k) psi : |j| <= J, |k|_inf <= K}.

    Size (N-1)(2J+1)(2K+1)^n when called on the generators of a bank.
    """
    from .operators import _index_box

    out = []
    for psi in generators:
        dim = psi.op.spec.dim
        for j in range(-J, J + 1):
            for k in _index_box(dim, K):
                out.append(apply_S_infinity_pow(apply_mu_infinity(k, psi), -j))
    return out


def gram_matrix(vectors: list[LimitVector]) -> np.ndarray:
    """Hermitian matrix of limit inner products.

    Representatives are promoted to the common top level once, then
    paired coefficient-wise; orthonormal families come out as the
    identity to rounding.
    """
    if not vectors:
        return np.zeros((0, 0), dtype=complex)
    for w in vectors[1:]:
        _same_context(vectors[0], w)
    lvl = max(v.level for v in vectors)
    reps = [promote(v, lvl).rep for v in vectors]
    n = len(reps)
    G = np.empty((n, n), dtype=complex)
    for i, a in enumerate(reps):
        for j in range(i, n):
            if isinstance(a, LaurentPoly):
                val = lp_inner(a, reps[j])
            else:
                val = sf_inner(a, reps[j])
            G[i, j] = val
            G[j, i] = val.conjugate()
    return G
