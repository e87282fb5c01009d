"""Filter equation, banks, purity, and the frame checks."""
import math
from fractions import Fraction

import numpy as np
import pytest

from limitwave.dilation import make_dilation
from limitwave.errors import (
    DimensionMismatch,
    InvalidFilter,
    NotOrthonormal,
    NotUnitVector,
    RepresentationMismatch,
)
from limitwave.filters import (
    Filter,
    FilterBank,
    Purity,
    bank_from_orthonormal_basis,
    eval_at_one,
    filter_from_unit_vector,
    frame_parseval_check,
    is_low_pass,
    purity_check,
    verify_filter,
    verify_filter_bank,
    verify_generalized_filter,
)
from limitwave.fractal import cantor_bank, cantor_filter, cantor_spec
from limitwave.presets import frame_filter, haar_bank
from limitwave.torus import lp1, lp_monomial, sf_scale, step_indicator


def test_cantor_filter_equation():
    assert verify_filter(cantor_filter(), cantor_spec()).max_abs() == 0.0


def test_haar_filter_equation():
    bank = haar_bank()
    assert verify_filter(bank.low_pass(), bank.spec).max_abs() == 0.0


def test_one_plus_z_is_not_a_filter():
    # sum over the fibre gives 2|1+z|^2 whose constant term is 4, not N=2
    m = lp1({0: 1.0, 1: 1.0})
    res = verify_filter(m, make_dilation([[2]]))
    assert res.max_abs() == pytest.approx(2.0)


def test_filter_from_unit_vector_validation():
    spec = make_dilation([[3]])
    with pytest.raises(DimensionMismatch):
        filter_from_unit_vector([1.0, 0.0], spec)
    with pytest.raises(NotUnitVector):
        filter_from_unit_vector([1.0, 1.0, 0.0], spec)


def test_random_unit_vectors_give_filters():
    rng = np.random.default_rng(42)
    for n in (2, 3, 4):
        spec = make_dilation([[n]])
        for _ in range(25):
            c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            c /= np.linalg.norm(c)
            m = filter_from_unit_vector(list(c), spec)
            assert verify_filter(m, spec).max_abs() <= 1e-14


def test_filter_constructor_rejects_non_filters():
    with pytest.raises(InvalidFilter):
        Filter(lp1({0: 1.0, 1: 1.0}), make_dilation([[2]]))


def test_low_pass_detection():
    bank = haar_bank()
    assert is_low_pass(bank.low_pass(), bank.spec)
    assert not is_low_pass(cantor_filter(), cantor_spec())  # m(1) = 2^{1/2}


def test_bank_unitarity_cantor():
    bank = cantor_bank()
    assert verify_filter_bank(bank.filters, bank.spec) == 0.0


def test_bank_needs_N_members():
    spec = make_dilation([[3]])
    with pytest.raises(InvalidFilter):
        verify_filter_bank([cantor_filter()], spec)


def test_bank_from_orthonormal_basis_rejects_skewed_rows():
    spec = make_dilation([[2]])
    with pytest.raises(NotOrthonormal):
        bank_from_orthonormal_basis([[1.0, 0.0], [0.5, 0.5]], spec)


def test_bank_low_pass_selection():
    bank = cantor_bank()
    # |m(1)| is maximal for the first member, 2^{1/2} against 1 and 0
    assert bank.low_pass_index == 0
    assert bank.low_pass() is bank.filters[0]
    assert len(bank.high_pass()) == 2


def test_generalized_filter_residual():
    filt = frame_filter()
    res = verify_generalized_filter(filt.m, filt.multiplicity, filt.spec.N)
    assert res.max_abs() <= 1e-14


def test_generalized_filter_detects_wrong_support():
    filt = frame_filter()
    wrong = step_indicator([(0, Fraction(1, 2))])
    res = verify_generalized_filter(filt.m, wrong, 2)
    assert res.max_abs() >= 1.0


def test_purity_cantor_is_non_unimodular():
    assert purity_check(Filter(cantor_filter(), cantor_spec())) \
        is Purity.PURE_BY_NON_UNIMODULAR


def test_purity_frame_is_by_complement():
    assert purity_check(frame_filter()) is Purity.PURE_BY_COMPLEMENT


def test_purity_monomial_inconclusive():
    spec = make_dilation([[2]])
    for d in (0, 1, 7):
        filt = Filter(lp_monomial(1, d), spec)
        assert purity_check(filt) is Purity.INCONCLUSIVE


def test_eval_at_one():
    assert eval_at_one(lp1({0: 0.25, 2: 0.5})) == 0.75
    assert eval_at_one(sf_scale(step_indicator([(0, Fraction(1, 2))]), 2.0)) == 2.0


def test_parseval_check_small():
    filt = frame_filter()
    f = step_indicator([(Fraction(-1, 4), Fraction(1, 4))])
    dev = frame_parseval_check([f], filt.multiplicity, n_max=256)
    assert dev <= 2e-3


def test_mixed_representation_bank_rejected():
    spec = make_dilation([[2]])
    sf = sf_scale(step_indicator([(Fraction(-1, 6), Fraction(1, 6))]), math.sqrt(2.0))
    with pytest.raises(RepresentationMismatch):
        verify_filter_bank([lp1({0: 1.0}), sf], spec)
