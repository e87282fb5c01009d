import math

import numpy as np
import pytest

from limitwave.errors import InvalidFilter, RepresentationMismatch
from limitwave.filters import Filter, FilterBank
from limitwave.fractal import cantor_bank, cantor_operator
from limitwave.operators import (
    FilterOperator,
    apply_S,
    apply_S_adjoint,
    verify_cuntz,
    verify_isometry,
)
from limitwave.presets import haar_bank
from limitwave.torus import (
    lp1,
    lp_add,
    lp_inner,
    lp_monomial,
    lp_norm,
    lp_scale,
    random_laurent,
)


def _haar_op():
    bank = haar_bank()
    return FilterOperator(Filter(bank.low_pass(), bank.spec))


def test_S_of_one_is_m():
    op = _haar_op()
    assert apply_S(op, lp1({0: 1.0})) == op.m


def test_S_is_isometric_on_random_polys():
    op = _haar_op()
    rng = np.random.default_rng(42)
    for _ in range(30):
        f = random_laurent(rng, 1, n_terms=5, radius=8)
        g = random_laurent(rng, 1, n_terms=5, radius=8)
        lhs = lp_inner(apply_S(op, f), apply_S(op, g))
        rhs = lp_inner(f, g)
        assert abs(lhs - rhs) < 1e-13


def test_verify_isometry_helper():
    assert verify_isometry(_haar_op()) <= 1e-13
    assert verify_isometry(cantor_operator()) <= 1e-13


def test_adjoint_is_adjoint():
    op = cantor_operator()
    rng = np.random.default_rng(1)
    for _ in range(20):
        f = random_laurent(rng, 1, n_terms=4, radius=9)
        g = random_laurent(rng, 1, n_terms=4, radius=9)
        assert abs(lp_inner(apply_S(op, f), g)
                   - lp_inner(f, apply_S_adjoint(op, g))) < 1e-13


def test_haar_adjoint_of_z():
    # S* z = 2^{-1/2}: only the odd tap of m pairs with z
    op = _haar_op()
    out = apply_S_adjoint(op, lp_monomial(1, 1))
    assert out == lp1({0: math.sqrt(0.5)})


def test_haar_range_defect():
    # e_1 is halfway inside ran(S): ||S S* e_1 - e_1||^2 = 1/2
    op = _haar_op()
    e1 = lp_monomial(1, 1)
    d = lp_add(apply_S(op, apply_S_adjoint(op, e1)), lp_scale(e1, -1.0))
    assert lp_norm(d) ** 2 == pytest.approx(0.5, abs=1e-15)


def test_cantor_adjoint_decimates_sublattice():
    op = cantor_operator()
    # S* z^{3n} keeps only the filter coefficient at exponent 0, and the
    # N * (1/N) round trip must not perturb its bits
    c0 = op.m.coeffs[(0,)].conjugate()
    for n in (1, 2, -3):
        out = apply_S_adjoint(op, lp_monomial(1, 3 * n))
        assert out == lp1({n: c0})
    # z^1 is orthogonal to ran(S_m) for the two-tap triadic filter
    assert apply_S_adjoint(op, lp_monomial(1, 1)).coeffs == {}


def test_cuntz_relation_cantor():
    assert verify_cuntz(cantor_bank(), K=8) == 0.0


def test_cuntz_relation_haar():
    assert verify_cuntz(haar_bank(), K=8) <= 1e-14


def test_bank_constructor_rejects_overlapping_ranges():
    bank = cantor_bank()
    # reusing the low-pass filter breaks unitarity, caught at construction
    with pytest.raises(InvalidFilter):
        FilterBank([bank.filters[0], bank.filters[0], bank.filters[2]],
                    bank.spec, low_pass_index=0)


def test_step_function_input_rejected():
    from fractions import Fraction

    from limitwave.torus import step_indicator

    op = _haar_op()
    with pytest.raises(RepresentationMismatch):
        apply_S(op, step_indicator([(0, Fraction(1, 2))]))
