"""The isometry S_m f = m (f o beta) and its adjoint.

On coefficients everything is exact: composing with beta reindexes by
A, the adjoint multiplies by conj(m) and then decimates back off the
A-sublattice.  A filter bank makes its N isometries into a Cuntz
family: the S_a have orthogonal ranges summing to the whole space,
which is what verify_cuntz measures on a box of monomials.
"""
from __future__ import annotations

import numpy as np

from .errors import RepresentationMismatch
from .filters import Filter, FilterBank, TorusFn
from .torus import (
    LaurentPoly,
    StepCircleFn,
    lp_add,
    lp_conj,
    lp_compose_beta,
    lp_coset_sum,
    lp_decimate,
    lp_inner,
    lp_monomial,
    lp_mul,
    lp_norm,
    lp_scale,
    random_laurent,
    sf_compose_pow,
    sf_mul,
)


class FilterOperator:
    """S_m for a fixed verified filter; the shared context for
    direct-limit vectors."""

    __slots__ = ("filt",)

    def __init__(self, filt: Filter):
        object.__setattr__(self, "filt", filt)

    def __setattr__(self, name, value):
        raise AttributeError("FilterOperator is immutable")

    def __eq__(self, other):
        return isinstance(other, FilterOperator) and self.filt == other.filt

    def __hash__(self):
        return hash(self.filt)

    def __repr__(self):
        return f"FilterOperator({self.filt!r})"

    @property
    def m(self) -> TorusFn:
        return self.filt.m

    @property
    def spec(self):
        return self.filt.spec


def apply_S(op: FilterOperator, f: TorusFn) -> TorusFn:
    """(S_m f)(k) = m(k) f(beta(k))."""
    m, spec = op.m, op.spec
    if isinstance(f, LaurentPoly):
        if not isinstance(m, LaurentPoly):
            raise RepresentationMismatch("Laurent vector under a step filter")
        return lp_mul(m, lp_compose_beta(f, spec))
    if not isinstance(m, StepCircleFn):
        raise RepresentationMismatch("step vector under a Laurent filter")
    return sf_mul(m, sf_compose_pow(f, spec.N))


def apply_S_adjoint(op: FilterOperator, f: LaurentPoly) -> LaurentPoly:
    """(S_m* f)(k) = N^{-1} sum_{beta(l) = k} conj(m(l)) f(l).

    The kernel-coset sum of conj(m) f lands on the A-sublattice by
    construction; decimation then reads the fibre average off exactly.
    """
    m, spec = op.m, op.spec
    if not isinstance(f, LaurentPoly) or not isinstance(m, LaurentPoly):
        raise RepresentationMismatch("adjoint implemented for Laurent vectors")
    summed = lp_coset_sum(lp_mul(lp_conj(m), f), spec)
    return lp_decimate(lp_scale(summed, 1.0 / spec.N), spec)


def verify_isometry(op: FilterOperator, trials: int = 50, seed: int = 42,
                    radius: int = 8) -> float:
    """max |<S f, S g> - <f, g>| over seeded random Laurent pairs."""
    rng = np.random.default_rng(seed)
    spec = op.spec
    worst = 0.0
    for _ in range(trials):
        f = random_laurent(rng, spec.dim, radius=radius)
        g = random_laurent(rng, spec.dim, radius=radius)
        dev = abs(lp_inner(apply_S(op, f), apply_S(op, g)) - lp_inner(f, g))
        worst = max(worst, dev)
    return worst


def verify_cuntz(bank: FilterBank, K: int) -> float:
    """max_k || sum_a S_a S_a* e_k - e_k || over the box |k|_inf <= K.

    Zero (to rounding) certifies the Cuntz relation sum Sa Sa* = 1 on
    the tested monomials; a single filter generally fails it, since one
    isometry only projects onto its own range.
    """
    spec = bank.spec
    ops = [FilterOperator(Filter(m, spec)) for m in bank.filters]
    worst = 0.0
    for k in _index_box(spec.dim, K):
        e = lp_monomial(spec.dim, k)
        acc = LaurentPoly(spec.dim)
        for op in ops:
            acc = lp_add(acc, apply_S(op, apply_S_adjoint(op, e)))
        worst = max(worst, lp_norm(acc - e))
    return worst


def _index_box(dim: int, K: int):
    """All integer multi-indices with |k|_inf <= K, lexicographic."""
    if dim == 1:
        for k in range(-K, K + 1):
            yield (k,)
        return
    import itertools

    yield from itertools.product(range(-K, K + 1), repeat=dim)
