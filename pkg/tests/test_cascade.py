"""Scaling products, sampled identities, and the quadrature helpers."""
import math
import warnings

import numpy as np
import pytest

from limitwave import _kernels
from limitwave.cascade import (
    SampledFn,
    check_partition_of_unity,
    check_scaling_identity,
    classical_wavelets,
    cohen_probe,
    eval_trig_grid,
    quad_gram,
    quad_inner,
    quad_norm,
    quad_weights,
    scaling_function,
    wavelet_system_sample,
)
from limitwave.dilation import make_dilation
from limitwave.errors import BoxTooSmall, Diverged, RepresentationMismatch
from limitwave.filters import verify_filter
from limitwave.fractal import cantor_filter, cantor_spec
from limitwave.presets import d4_bank, frame_filter, haar_bank, quincunx_bank
from limitwave.torus import lp1, lp_eval, random_laurent


def haar_phi(box=8.0, step=1.0 / 32.0, depth=20):
    bank = haar_bank()
    return bank, scaling_function(bank.low_pass(), bank.spec,
                                  depth=depth, box=box, step=step)


def test_phi_at_zero_is_exactly_one():
    # every factor at x = 0 is m(1)/sqrt(2) = 1.0 on the nose, so the
    # truncated product is the literal float 1.0, not merely close
    _, phi = haar_phi(box=2.0, step=0.25)
    val = phi.evaluate(np.zeros((1, 1)))[0]
    assert val == 1.0 + 0.0j


def test_haar_phi_matches_closed_form():
    # the product telescopes to e^{i pi x} sin(pi x)/(pi x)
    _, phi = haar_phi(box=32.0, step=1.0 / 64.0)
    x = phi.axes[0]
    with np.errstate(invalid="ignore"):
        ref = np.exp(1j * np.pi * x) * np.sin(np.pi * x) / (np.pi * x)
    ref[x == 0.0] = 1.0
    assert float(np.max(np.abs(phi.values - ref))) <= 1e-4


def test_haar_phi_at_one_half():
    # closed form gives phi(1/2) = e^{i pi/2} sin(pi/2)/(pi/2) = 2i/pi
    _, phi = haar_phi(box=2.0, step=0.25)
    val = phi.evaluate(np.array([[0.5]]))[0]
    assert abs(val - 2j / math.pi) <= 1e-5


def test_scaling_identity_haar():
    bank, phi = haar_phi()
    assert check_scaling_identity(phi, bank.low_pass(), bank.spec) <= 1e-4


def test_scaling_identity_d4():
    bank = d4_bank()
    assert verify_filter(bank.low_pass(), bank.spec).max_abs() <= 1e-12
    phi = scaling_function(bank.low_pass(), bank.spec,
                           depth=20, box=8.0, step=1.0 / 32.0)
    assert abs(phi.evaluate(np.zeros((1, 1)))[0] - 1.0) <= 1e-12
    assert check_scaling_identity(phi, bank.low_pass(), bank.spec) <= 1e-3


def test_partition_of_unity_haar():
    # |phi|^2 tails like 1/(pi x)^2, so radius K leaves about 2/(pi^2 K)
    _, phi = haar_phi(box=24.0, step=1.0 / 32.0)
    assert check_partition_of_unity(phi, K=20) <= 2e-2


def test_partition_of_unity_guards():
    _, phi = haar_phi(box=4.0, step=0.25)
    with pytest.raises(BoxTooSmall):
        check_partition_of_unity(phi, K=4)  # needs box >= 5
    with pytest.raises(BoxTooSmall):
        check_partition_of_unity(phi, K=-1)


def test_divergent_product_is_flagged():
    # m = sqrt(2) is low-pass but its product is identically 1
    spec = make_dilation([[2]])
    m = lp1({0: math.sqrt(2.0)})
    phi = scaling_function(m, spec, depth=10, box=4.0, step=0.25)
    with pytest.raises(Diverged):
        check_partition_of_unity(phi, K=2)


def test_misaligned_step_is_rejected():
    _, phi = haar_phi(box=3.0, step=3.0 / 128.0)
    with pytest.raises(BoxTooSmall):
        check_partition_of_unity(phi, K=1)


def test_non_low_pass_warns():
    # the triadic filter has m(1) = sqrt(2) but N = 3
    with pytest.warns(RuntimeWarning):
        scaling_function(cantor_filter(), cantor_spec(),
                         depth=5, box=2.0, step=0.25)


def test_step_filter_is_rejected():
    f = frame_filter()
    with pytest.raises(RepresentationMismatch):
        scaling_function(f.m, f.spec, depth=5, box=2.0, step=0.25)


def test_cohen_probe_values():
    bank = haar_bank()
    # |m| = sqrt(2)|cos(pi x)| bottoms out at exactly 1 on |x| <= 1/4
    assert abs(cohen_probe(bank.low_pass(), bank.spec) - 1.0) <= 1e-12
    # the triadic filter vanishes at x = 1/4, inside the probe window
    assert cohen_probe(cantor_filter(), cantor_spec()) <= 1e-12


def test_quincunx_phi_at_zero():
    bank = quincunx_bank()
    phi = scaling_function(bank.low_pass(), bank.spec,
                           depth=40, box=4.0, step=0.125)
    assert phi.evaluate(np.zeros((1, 2)))[0] == 1.0 + 0.0j
    assert check_scaling_identity(phi, bank.low_pass(), bank.spec) <= 1e-2


def test_classical_wavelets_norms():
    # Plancherel: the sampled product is the frequency side, so the
    # box-truncated L^2 norm of psi-hat sits just under 1
    bank, phi = haar_phi(box=24.0, step=1.0 / 32.0)
    (psi,) = classical_wavelets(bank, phi)
    assert psi.name == "psi[1]"
    assert abs(quad_norm(phi) - 1.0) <= 2e-2
    assert abs(quad_norm(psi) - 1.0) <= 2e-2


def test_wavelet_system_sample_identity():
    bank, phi = haar_phi(box=4.0, step=0.25)
    (psi,) = classical_wavelets(bank, phi)
    same = wavelet_system_sample(psi, bank.spec, 0, 0)
    assert np.array_equal(same.values, psi.values)


def test_wavelet_system_sample_point():
    bank, phi = haar_phi(box=4.0, step=0.25)
    (psi,) = classical_wavelets(bank, phi)
    moved = wavelet_system_sample(psi, bank.spec, 1, 3)
    x = np.array([[0.5]])
    want = math.sqrt(2.0) * np.exp(2j * np.pi * 3 * 1.0) * psi.evaluate(np.array([[1.0]]))[0]
    assert abs(moved.evaluate(x)[0] - want) <= 1e-12


def test_quad_weights_sum_to_length():
    axes = (np.linspace(-2.0, 2.0, 17),)
    for rule in ("trapezoid", "simpson"):
        assert np.sum(quad_weights(axes, rule)) == pytest.approx(4.0)


def test_simpson_is_exact_on_cubics():
    a = np.linspace(-2.0, 2.0, 17)
    W = quad_weights((a,), "simpson")
    assert abs(np.sum((a ** 3 - a) * W)) <= 1e-12
    assert np.sum(a ** 2 * W) == pytest.approx(16.0 / 3.0, abs=1e-12)


def test_quad_rule_validation():
    even = (np.linspace(0.0, 1.0, 4),)
    with pytest.raises(BoxTooSmall):
        quad_weights(even, "simpson")
    with pytest.raises(ValueError):
        quad_weights(even, "midpoint")


def test_quad_gram_is_hermitian():
    a = np.linspace(-1.0, 1.0, 9)
    f = SampledFn(axes=(a,), values=np.exp(1j * a), box=1.0, step=0.25)
    g = SampledFn(axes=(a,), values=a.astype(complex), box=1.0, step=0.25)
    G = quad_gram([f, g])
    assert G[0, 1] == np.conj(G[1, 0])
    assert G[0, 0].real == pytest.approx(quad_norm(f) ** 2)
    assert G[0, 1] == pytest.approx(quad_inner(f, g))


def test_eval_trig_grid_matches_lp_eval():
    rng = np.random.default_rng(11)
    m = random_laurent(rng, dim=1, radius=4)
    xs = np.linspace(-1.0, 1.0, 21).reshape(-1, 1)
    grid = eval_trig_grid(m, xs)
    direct = np.array([lp_eval(m, [x]) for x in xs[:, 0]])
    assert np.allclose(grid, direct, atol=1e-12)


def test_backends_agree():
    # whichever backend is active must reproduce the plain numpy path
    bank = haar_bank()
    m = bank.low_pass()
    ks = np.array([k for (k,) in m.coeffs], dtype=np.int64).reshape(-1, 1)
    cs = np.array(list(m.coeffs.values()), dtype=np.complex128)
    X = np.linspace(-2.0, 2.0, 33).reshape(-1, 1)
    inv_at = np.array([[0.5]])
    got_t = _kernels.trig_eval(ks, cs, X)
    ref_t = _kernels._numpy_trig_eval(ks.astype(np.float64), cs, X)
    assert np.allclose(got_t, ref_t, atol=1e-14)
    got_c = _kernels.cascade_eval(ks, cs, X, inv_at, math.sqrt(2.0), 12)
    ref_c = _kernels._numpy_cascade_eval(ks.astype(np.float64), cs, X,
                                         inv_at, math.sqrt(2.0), 12)
    assert np.allclose(got_c, ref_c, atol=1e-14)
    assert _kernels.backend() in ("numba", "numpy")


def test_box_must_be_multiple_of_step():
    bank = haar_bank()
    with pytest.raises(BoxTooSmall):
        scaling_function(bank.low_pass(), bank.spec, depth=5,
                         box=1.0, step=0.3)
