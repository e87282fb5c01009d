"""Exact Laurent and step-function algebra on the torus."""
import math
from fractions import Fraction

import numpy as np
import pytest

from limitwave.errors import DimensionMismatch, RepresentationMismatch
from limitwave.torus import (
    LaurentPoly,
    lp1,
    lp_add,
    lp_compose_beta,
    lp_conj,
    lp_coset_sum,
    lp_decimate,
    lp_eval,
    lp_inner,
    lp_monomial,
    lp_mul,
    lp_norm,
    lp_scale,
    random_laurent,
    sf_add,
    sf_compose_pow,
    sf_conj,
    sf_coset_sum,
    sf_eval,
    sf_fourier_coeff,
    sf_integral,
    sf_mul,
    sf_scale,
    sf_translate,
    step_indicator,
)
from limitwave.dilation import make_dilation


def test_laurent_canonicalization_drops_zero_terms():
    f = lp1({0: 1.0, 3: 0.0, 5: 1e-16})
    assert set(f.coeffs) == {(0,)}


def test_laurent_mul_known_product():
    # (1 + z)(1 - z) = 1 - z^2
    f = lp1({0: 1.0, 1: 1.0})
    g = lp1({0: 1.0, 1: -1.0})
    assert lp_mul(f, g) == lp1({0: 1.0, 2: -1.0})


def test_laurent_conj_flips_indices():
    f = lp1({1: 2.0 + 1.0j, -3: 0.5})
    c = lp_conj(f)
    assert c.coeffs[(-1,)] == 2.0 - 1.0j
    assert c.coeffs[(3,)] == 0.5


def test_laurent_eval_matches_definition():
    f = lp1({-1: 0.5j, 0: 1.0, 2: -0.25})
    x = 0.3
    direct = (0.5j * np.exp(-2j * np.pi * x) + 1.0
              - 0.25 * np.exp(4j * np.pi * x))
    assert abs(lp_eval(f, (x,)) - direct) < 1e-15


def test_laurent_dim_mismatch():
    f = lp1({0: 1.0})
    g = LaurentPoly(2, {(0, 0): 1.0})
    with pytest.raises(DimensionMismatch):
        lp_mul(f, g)


def test_coset_sum_is_algebraic():
    # only indices on the A-sublattice survive, scaled by N, exactly
    spec = make_dilation([[3]])
    f = lp1({-2: 0.7, 0: 1.25, 2: 0.7, 3: 0.5, 6: -1.0})
    cs = lp_coset_sum(f, spec)
    assert cs == lp1({0: 3 * 1.25, 3: 3 * 0.5, 6: -3.0})


def test_compose_beta_then_decimate_roundtrip():
    spec = make_dilation([[2]])
    f = lp1({-1: 1.0j, 0: 2.0, 4: -0.5})
    assert lp_decimate(lp_compose_beta(f, spec), spec) == f


def test_coset_sum_after_compose_beta_scales_by_N():
    spec = make_dilation([[2]])
    rng = np.random.default_rng(42)
    for _ in range(20):
        f = random_laurent(rng, 1, n_terms=5, radius=6)
        assert lp_coset_sum(lp_compose_beta(f, spec), spec) == \
            lp_compose_beta(lp_scale(f, 2.0), spec)


def test_inner_product_is_coefficientwise():
    f = lp1({0: 1.0, 1: 2.0})
    g = lp1({1: 1.0j})
    assert lp_inner(f, g) == 2.0 * (-1.0j)
    assert lp_norm(f) == math.sqrt(5.0)


def test_eval_agrees_with_inner_norm_identity():
    rng = np.random.default_rng(7)
    for _ in range(10):
        f = random_laurent(rng, 2, n_terms=4, radius=3)
        # Parseval on a 16x16 sampling grid, exact for radius-3 support
        xs = np.arange(16) / 16.0
        X = np.array([(a, b) for a in xs for b in xs])
        vals = np.array([lp_eval(f, tuple(x)) for x in X])
        assert abs(np.mean(np.abs(vals) ** 2) - lp_norm(f) ** 2) < 1e-12


def test_step_indicator_wraps():
    f = step_indicator([(Fraction(-1, 6), Fraction(1, 6))])
    assert sf_eval(f, 0) == 1.0
    assert sf_eval(f, Fraction(11, 12)) == 1.0
    assert sf_eval(f, Fraction(1, 2)) == 0.0
    assert sf_integral(f) == pytest.approx(Fraction(1, 3), abs=1e-15)


def test_step_eval_is_exact_on_breakpoints():
    # left-closed arcs: the breakpoint itself takes the new value
    f = step_indicator([(Fraction(1, 4), Fraction(1, 2))])
    assert sf_eval(f, Fraction(1, 4)) == 1.0
    assert sf_eval(f, Fraction(1, 2)) == 0.0


def test_step_algebra():
    a = step_indicator([(0, Fraction(1, 2))])
    b = step_indicator([(Fraction(1, 4), Fraction(3, 4))])
    prod = sf_mul(a, b)
    assert sf_eval(prod, Fraction(3, 8)) == 1.0
    assert sf_eval(prod, Fraction(1, 8)) == 0.0
    s = sf_add(sf_scale(a, 2.0), sf_conj(sf_scale(b, 1.0j)))
    assert sf_eval(s, Fraction(3, 8)) == 2.0 - 1.0j


def test_step_translate_and_compose():
    f = step_indicator([(0, Fraction(1, 4))])
    g = sf_translate(f, Fraction(1, 2))
    assert sf_eval(g, Fraction(5, 8)) == 1.0
    h = sf_compose_pow(f, 2)  # h(x) = f(2x)
    assert sf_eval(h, Fraction(1, 16)) == 1.0
    assert sf_eval(h, Fraction(9, 16)) == 1.0  # second period
    assert sf_eval(h, Fraction(1, 4)) == 0.0


def test_step_coset_sum_constant_for_indicator_partition():
    # the two half-circle preimages of any point partition the circle
    f = step_indicator([(0, Fraction(1, 2))])
    cs = sf_coset_sum(f, 2)
    assert cs.values == (1.0,)


def test_fourier_coefficients_of_half_arc():
    f = step_indicator([(0, Fraction(1, 2))])
    assert sf_fourier_coeff(f, 0) == 0.5
    assert abs(sf_fourier_coeff(f, 1) - (-1j / math.pi)) < 1e-15
    assert abs(sf_fourier_coeff(f, 2)) < 1e-15


def test_step_rejects_bad_arcs():
    with pytest.raises(RepresentationMismatch):
        step_indicator([(Fraction(1, 2), Fraction(1, 4))])
    with pytest.raises(RepresentationMismatch):
        step_indicator([(0, Fraction(3, 2))])


def test_random_laurent_respects_radius():
    rng = np.random.default_rng(0)
    for _ in range(20):
        f = random_laurent(rng, 1, n_terms=6, radius=4)
        assert all(abs(k[0]) <= 4 for k in f.coeffs)
