"""Filters and filter banks for a fixed dilation.

m is a filter for beta when sum over the kernel coset of |m|^2 is
constantly N; a bank is N filters whose kernel-sampling matrix is
unitary almost everywhere.  Verification returns the residual as a
function (Laurent or step), not a boolean, so callers can inspect the
worst offending coefficient or arc.  Constructors build filters from
unit vectors and banks from orthonormal bases against the dual
characters z^q.
"""
from __future__ import annotations

import enum
import math
from typing import Sequence, Union

from .dilation import DilationSpec, kernel_dual_characters
from .errors import (
    DimensionMismatch,
    InvalidFilter,
    NotOrthonormal,
    NotUnitVector,
    RepresentationMismatch,
)
from .torus import (
    CHECK_TOL,
    LaurentPoly,
    StepCircleFn,
    lp_add,
    lp_conj,
    lp_const,
    lp_coset_sum,
    lp_eval,
    lp_monomial,
    lp_mul,
    lp_scale,
    sf_compose_pow,
    sf_conj,
    sf_const,
    sf_coset_sum,
    sf_eval,
    sf_mul,
    sf_scale,
    sf_sub,
)

TorusFn = Union[LaurentPoly, StepCircleFn]

#: |m(1) - sqrt(N)| threshold for the low-pass test
LOW_PASS_TOL = 1e-12


def _check_step_context(m: StepCircleFn, spec: DilationSpec):
    if spec.dim != 1:
        raise RepresentationMismatch("step-function filters are one-dimensional")


def verify_filter(m: TorusFn, spec: DilationSpec) -> TorusFn:
    """Residual of the filter equation, as a function.

    Laurent: coset_sum(m conj(m)) - N.  Step: the same identity through
    the circle coset sum.  Zero residual (within CHECK_TOL) means m is
    a filter for multiplication by N = |det A|.
    """
    if isinstance(m, LaurentPoly):
        sq = lp_mul(m, lp_conj(m))
        return lp_add(lp_coset_sum(sq, spec), lp_const(spec.dim, -float(spec.N)))
    _check_step_context(m, spec)
    sq = sf_mul(m, sf_conj(m))
    return sf_sub(sf_coset_sum(sq, spec.N), sf_const(float(spec.N)))


def verify_generalized_filter(m: StepCircleFn, B: StepCircleFn, N: int) -> StepCircleFn:
    """Residual of sum_{beta(zeta)=omega} |m(zeta)|^2 = N chi_B(omega).

    Both sides are compared as functions of zeta: the fibre sum pulled
    back through beta is exactly the circle coset sum, so the residual
    is coset_sum(|m|^2) - N (chi_B o beta).
    """
    sq = sf_mul(m, sf_conj(m))
    rhs = sf_scale(sf_compose_pow(B, N), float(N))
    return sf_sub(sf_coset_sum(sq, N), rhs)


def verify_filter_bank(ms: Sequence[TorusFn], spec: DilationSpec) -> float:
    """Worst residual of the unitarity system over all filter pairs.

    Diagonal pairs must satisfy the filter equation; off-diagonal pairs
    must have vanishing coset sum of m_a conj(m_b).
    """
    if len(ms) != spec.N:
        raise InvalidFilter(f"bank needs N = {spec.N} members, got {len(ms)}")
    worst = 0.0
    for a, ma in enumerate(ms):
        for b, mb in enumerate(ms):
            if b < a:
                continue
            if isinstance(ma, LaurentPoly) and isinstance(mb, LaurentPoly):
                cross = lp_coset_sum(lp_mul(ma, lp_conj(mb)), spec)
                if a == b:
                    cross = lp_add(cross, lp_const(spec.dim, -float(spec.N)))
                worst = max(worst, cross.max_abs())
            elif isinstance(ma, StepCircleFn) and isinstance(mb, StepCircleFn):
                _check_step_context(ma, spec)
                cross = sf_coset_sum(sf_mul(ma, sf_conj(mb)), spec.N)
                if a == b:
                    cross = sf_sub(cross, sf_const(float(spec.N)))
                worst = max(worst, cross.max_abs())
            else:
                raise RepresentationMismatch("bank mixes representations")
    return worst


def eval_at_one(m: TorusFn) -> complex:
    """m at the group identity of the torus."""
    if isinstance(m, LaurentPoly):
        return lp_eval(m, (0.0,) * m.dim)
    return sf_eval(m, 0)


def is_low_pass(m: TorusFn, spec: DilationSpec, tol: float = LOW_PASS_TOL) -> bool:
    """Whether m(1) = sqrt(N), the normalization a scaling limit needs."""
    return abs(eval_at_one(m) - math.sqrt(spec.N)) <= tol


def filter_from_unit_vector(c: Sequence[complex], spec: DilationSpec) -> LaurentPoly:
    """m = sum_j c_j z^{q_j} over the dual transversal.

    Distinct dual characters never collide on the A-sublattice, so the
    coset sum of |m|^2 collapses to N ||c||^2 and any unit vector gives
    a filter.
    """
    if len(c) != spec.N:
        raise DimensionMismatch(f"need {spec.N} coefficients, got {len(c)}")
    nrm = math.sqrt(sum(abs(x) ** 2 for x in c))
    if abs(nrm - 1.0) > CHECK_TOL:
        raise NotUnitVector(f"||c|| = {nrm!r}")
    out = LaurentPoly(spec.dim)
    for cj, gamma in zip(c, kernel_dual_characters(spec)):
        out = lp_add(out, lp_scale(gamma, cj))
    return out


def bank_from_orthonormal_basis(rows: Sequence[Sequence[complex]],
                                spec: DilationSpec) -> "FilterBank":
    """One filter per orthonormal row; unitarity of the rows is exactly
    the filter-bank identity for the resulting family."""
    if len(rows) != spec.N:
        raise DimensionMismatch(f"need {spec.N} rows, got {len(rows)}")
    for i, u in enumerate(rows):
        for j, v in enumerate(rows):
            g = sum(a * b.conjugate() for a, b in zip(u, v))
            if abs(g - (1.0 if i == j else 0.0)) > CHECK_TOL:
                raise NotOrthonormal(f"<row{i}, row{j}> = {g!r}")
    ms = [filter_from_unit_vector(u, spec) for u in rows]
    return FilterBank(ms, spec)


class Filter:
    """A verified (possibly generalized) filter.

    ``multiplicity`` is None for the full circle, or a 0/1 step
    indicator of the support set B for generalized filters.  The
    residual is checked at construction; invalid input raises
    InvalidFilter rather than producing a silently broken context.
    """

    __slots__ = ("m", "spec", "multiplicity")

    def __init__(self, m: TorusFn, spec: DilationSpec,
                 multiplicity: StepCircleFn | None = None):
        if multiplicity is None:
            residual = verify_filter(m, spec)
        else:
            if not isinstance(m, StepCircleFn):
                raise RepresentationMismatch(
                    "generalized filters use the step representation")
            _check_step_context(m, spec)
            residual = verify_generalized_filter(m, multiplicity, spec.N)
        dev = residual.max_abs()
        if dev > CHECK_TOL:
            raise InvalidFilter(f"filter equation residual {dev:g}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "multiplicity", multiplicity)

    def __setattr__(self, name, value):
        raise AttributeError("Filter is immutable")

    def __eq__(self, other):
        return isinstance(other, Filter) and self.m == other.m \
            and self.spec == other.spec and self.multiplicity == other.multiplicity

    def __hash__(self):
        return hash((self.m, self.spec.A))

    def __repr__(self):
        return f"Filter({self.m!r}, N={self.spec.N})"

    def is_low_pass(self) -> bool:
        return is_low_pass(self.m, self.spec)


class FilterBank:
    """N filters forming an a.e.-unitary kernel-sampling matrix.

    ``low_pass_index`` defaults to the member maximizing |m_a(1)|, ties
    broken by list order; it is the distinguished direction the wavelet
    construction leaves out.
    """

    __slots__ = ("filters", "spec", "low_pass_index")

    def __init__(self, ms: Sequence[TorusFn], spec: DilationSpec,
                 low_pass_index: int | None = None):
        dev = verify_filter_bank(ms, spec)
        if dev > CHECK_TOL:
            raise InvalidFilter(f"bank unitarity residual {dev:g}")
        if low_pass_index is None:
            scores = [abs(eval_at_one(m)) for m in ms]
            low_pass_index = max(range(len(ms)), key=lambda i: (scores[i], -i))
        elif not 0 <= low_pass_index < len(ms):
            raise DimensionMismatch("low_pass_index out of range")
        object.__setattr__(self, "filters", tuple(ms))
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "low_pass_index", low_pass_index)

    def __setattr__(self, name, value):
        raise AttributeError("FilterBank is immutable")

    def __eq__(self, other):
        return isinstance(other, FilterBank) and self.filters == other.filters \
            and self.spec == other.spec and self.low_pass_index == other.low_pass_index

    def __len__(self):
        return len(self.filters)

    def __repr__(self):
        return f"FilterBank(N={self.spec.N}, low_pass_index={self.low_pass_index})"

    def low_pass(self) -> TorusFn:
        return self.filters[self.low_pass_index]

    def high_pass(self) -> list[TorusFn]:
        return [m for i, m in enumerate(self.filters) if i != self.low_pass_index]


class Purity(enum.Enum):
    """Outcome of the pure-isometry test; never claims non-purity."""

    PURE_BY_COMPLEMENT = "PureByComplement"
    PURE_BY_NON_UNIMODULAR = "PureByNonUnimodular"
    INCONCLUSIVE = "Inconclusive"


def purity_check(filt: Filter) -> Purity:
    """Classify why S_m is a pure isometry (shift), if the criteria
    visible in this representation apply.

    (a) the multiplicity set misses part of the circle, or
    (b) |m| differs from 1 on a set of positive measure.
    Monomial-like filters satisfy neither and return Inconclusive:
    the test is sound, not complete.
    """
    B = filt.multiplicity
    if B is not None and any(abs(v) <= CHECK_TOL for v in B.values):
        # canonical arcs have positive length, so a zero arc is a
        # positive-measure complement
        return Purity.PURE_BY_COMPLEMENT
    m = filt.m
    if isinstance(m, LaurentPoly):
        sq = lp_add(lp_mul(m, lp_conj(m)), lp_const(m.dim, -1.0))
        if not sq.is_zero():
            return Purity.PURE_BY_NON_UNIMODULAR
    else:
        if any(abs(abs(v) ** 2 - 1.0) > CHECK_TOL for v in m.values):
            return Purity.PURE_BY_NON_UNIMODULAR
    return Purity.INCONCLUSIVE


def frame_parseval_check(fs: Sequence[StepCircleFn], phi_support: StepCircleFn,
                         n_max: int) -> float:
    """Worst deviation of sum_{|n|<=n_max} |<f, e_n chi_B>|^2 from ||f||^2.

    <f, e_n chi_B> is the n-th Fourier coefficient of f chi_B, computed
    in closed form, so the only error is the truncated tail.
    """
    from .torus import sf_fourier_coeff, sf_inner

    worst = 0.0
    for f in fs:
        g = sf_mul(f, phi_support)
        total = sum(abs(sf_fourier_coeff(g, n)) ** 2
                    for n in range(-n_max, n_max + 1))
        worst = max(worst, abs(total - sf_inner(f, g).real))
    return worst
