"""Acceptance sweep: every guarantee the package makes, one test each,
at its published tolerance.

These are deliberately end-to-end: they exercise the public API the way
the documentation describes it, with the exact families, ranges, and
tolerances stated there.  Nothing here is weakened to pass; a failing
line means the implementation misses the stated bound on this machine.
"""
import math
import time
from fractions import Fraction

import numpy as np

from limitwave import direct_limit as dl
from limitwave import fractal
from limitwave.cascade import (
    check_partition_of_unity,
    check_scaling_identity,
    scaling_function,
)
from limitwave.dilation import make_dilation
from limitwave.filters import (
    Filter,
    Purity,
    filter_from_unit_vector,
    frame_parseval_check,
    purity_check,
    verify_filter,
    verify_filter_bank,
    verify_generalized_filter,
)
from limitwave.operators import FilterOperator, apply_S, verify_cuntz
from limitwave.presets import d4_bank, frame_filter, haar_bank
from limitwave.solenoid import (
    CylinderFn,
    check_consistency,
    check_dutkay_formula,
    dutkay_transform,
    dutkay_transform_check,
    tau_integral,
    winding_check,
)
from limitwave.torus import (
    lp1,
    lp_monomial,
    lp_mul,
    random_laurent,
    sf_add,
    sf_scale,
    step_indicator,
)


def test_c01_filter_equation():
    # named filters hit the identity on the nose; 100 random unit
    # vectors per lattice size stay under 1e-14
    assert verify_filter(fractal.cantor_filter(), fractal.cantor_spec()).max_abs() <= 1e-14
    haar = haar_bank()
    assert verify_filter(haar.low_pass(), haar.spec).max_abs() <= 1e-14
    rng = np.random.default_rng(42)
    for n in (2, 3, 4):
        spec = make_dilation([[n]])
        for _ in range(100):
            v = rng.normal(size=n) + 1j * rng.normal(size=n)
            v = v / np.linalg.norm(v)
            m = filter_from_unit_vector(list(v), spec)
            assert verify_filter(m, spec).max_abs() <= 1e-14


def test_c02_bank_unitarity_and_cuntz():
    banks = [fractal.cantor_bank()]
    banks += [fractal.r_family(r)[0] for r in (0.0, 0.3, math.sqrt(0.5))]
    for bank in banks:
        assert verify_filter_bank(bank.filters, bank.spec) <= 1e-12
        assert verify_cuntz(bank, K=32) <= 1e-12


def test_c03_purity_trichotomy():
    assert purity_check(Filter(fractal.cantor_filter(), fractal.cantor_spec())) \
        is Purity.PURE_BY_NON_UNIMODULAR
    assert purity_check(frame_filter()) is Purity.PURE_BY_COMPLEMENT
    spec = make_dilation([[2]])
    for d in (0, 1, 7):
        assert purity_check(Filter(lp1({d: 1.0}), spec)) is Purity.INCONCLUSIVE


def test_c04_limit_wavelet_gram():
    # {S^-j mu(k) (1, m_i) : |j| <= 2, |k| <= 4, i in {1, 2}}
    gens = dl.wavelet_generators(fractal.cantor_bank())
    assert len(gens) == 2
    fam = dl.wavelet_family(gens, J=2, K=4)
    assert len(fam) == 2 * 5 * 9
    G = dl.gram_matrix(fam)
    assert float(np.max(np.abs(G - np.eye(len(fam))))) <= 1e-12


def test_c05_fractal_wavelet_gram():
    # {psi_{i,j,k} : i in {1,2}, |j| <= 3, |k| <= 8} for the flat pair
    # and for r = 0.3; the endpoint r = 2^-1/2 collapses to the flat
    # pair exactly, up to an overall sign per wavelet
    pairs = {"flat": fractal.cantor_wavelets(),
             "r=0.3": fractal.r_family(0.3)[1:]}
    for label, (p1, p2) in pairs.items():
        fam = [fractal.wavelet_system(p, j, k)
               for p in (p1, p2)
               for j in range(-3, 4)
               for k in range(-8, 9)]
        G = fractal.gram_matrix(fam)
        dev = float(np.max(np.abs(G - np.eye(len(fam)))))
        assert dev <= 1e-12, f"{label}: {dev:g}"

    psi1, psi2 = fractal.cantor_wavelets()
    _, q1, q2 = fractal.r_family(math.sqrt(0.5))
    for got, want in ((q1, psi1), (q2, psi2)):
        assert min((got - want).max_abs(),
                   (got + want).max_abs()) == 0.0


def test_c06_intertwining():
    # R S_m = D R and R mu_j = lambda_j R on monomials |k| <= 16,
    # D lambda_j = lambda_3j D, and R extended to the limit gives the
    # same image from any representative across three promotions
    ctx = fractal.cantor_operator()
    for k in range(-16, 17):
        e = lp_monomial(1, (k,))
        lhs = fractal.intertwiner_R(apply_S(ctx, e))
        rhs = fractal.apply_D(fractal.intertwiner_R(e))
        assert (lhs - rhs).max_abs() == 0.0
        for j in range(-16, 17):
            lhs = fractal.intertwiner_R(lp_mul(lp_monomial(1, (j,)), e))
            rhs = fractal.apply_lambda(j, fractal.intertwiner_R(e))
            assert (lhs - rhs).max_abs() == 0.0
    for j in range(-16, 17):
        f = fractal.TriadicFn({(1, 1): 1.5, (2, 6): -1j})
        lhs = fractal.apply_D(fractal.apply_lambda(j, f))
        rhs = fractal.apply_lambda(3 * j, fractal.apply_D(f))
        assert (lhs - rhs).max_abs() == 0.0

    rng = np.random.default_rng(7)
    for _ in range(10):
        f = random_laurent(rng, 1, n_terms=4, radius=5)
        v = dl.LimitVector(1, f, ctx)
        base = fractal.R_infinity(v)
        for lvl in (2, 3, 4):
            img = fractal.R_infinity(dl.promote(v, lvl))
            assert (img - base).max_abs() <= 1e-12


def test_c07_scaling_functions():
    bank = haar_bank()
    m, spec = bank.low_pass(), bank.spec
    phi = scaling_function(m, spec, depth=20, box=32.0, step=1 / 64)
    # the truncated product at x = 0 is the literal float 1.0
    assert phi.evaluate(np.zeros((1, 1)))[0] == 1.0 + 0.0j
    assert phi.values[len(phi.axes[0]) // 2] == 1.0 + 0.0j
    x = phi.axes[0]
    with np.errstate(invalid="ignore"):
        closed = np.exp(1j * np.pi * x) * np.sin(np.pi * x) / (np.pi * x)
    closed[x == 0.0] = 1.0
    assert float(np.max(np.abs(phi.values - closed))) <= 1e-4
    assert check_scaling_identity(phi, m, spec) <= 1e-4
    phi48 = scaling_function(m, spec, depth=20, box=48.0, step=1 / 64)
    assert check_partition_of_unity(phi48, K=40) <= 2e-2

    d4 = d4_bank()
    assert verify_filter(d4.low_pass(), d4.spec).max_abs() <= 1e-12
    phi_d4 = scaling_function(d4.low_pass(), d4.spec,
                              depth=20, box=48.0, step=1 / 64)
    assert check_scaling_identity(phi_d4, d4.low_pass(), d4.spec) <= 1e-3


def test_c08_tau_measure():
    haar = haar_bank()
    contexts = (FilterOperator(Filter(haar.low_pass(), haar.spec)),
                fractal.cantor_operator())
    for ctx in contexts:
        rng = np.random.default_rng(42)
        for n in range(7):
            tau = tau_integral(ctx, CylinderFn(n, lp1({0: 1.0})))
            assert abs(tau - 1.0) <= 1e-12
            g = random_laurent(rng, 1, n_terms=6, radius=12)
            assert check_consistency(ctx, g, n) <= 1e-12
        for n in range(4):
            g = random_laurent(rng, 1, n_terms=6, radius=12)
            assert check_dutkay_formula(ctx, g, n) <= 1e-12


def test_c09_fractal_transform():
    ctx = fractal.cantor_operator()
    img = dutkay_transform(ctx, CylinderFn(0, lp1({0: 1.0})))
    assert (img - fractal.tf_piece(0, 0)).max_abs() == 0.0
    # Gram over cylinders (n, z^k), n <= 4, |k| <= 6: tau on one side,
    # nu of the images on the other, plus the conjugacy spot checks
    assert dutkay_transform_check(J=4, K=6) <= 1e-12


def test_c10_winding_line():
    bank = haar_bank()
    ctx = FilterOperator(Filter(bank.low_pass(), bank.spec))
    t0 = time.perf_counter()
    phi = scaling_function(bank.low_pass(), bank.spec,
                           depth=20, box=64.0, step=1 / 256)
    devs = {}
    for n in range(3):
        for k in range(-4, 5):
            out = winding_check(ctx, CylinderFn(n, lp1({k: 1.0})), phi)
            devs[(n, k)] = out["deviation"]
    elapsed = time.perf_counter() - t0
    assert elapsed <= 30.0
    worst = max(devs.values())
    over = sorted(key for key, val in devs.items() if val > 1e-3)
    assert worst <= 1e-3, (
        f"winding deviation {worst:.5e} > 1e-3 on cylinders {over}; "
        "the k = 0 rows integrate |phi|^2 only over [-64, 64] and the "
        "missing tail is about 1/(pi^2 T) = 1.58e-3 at T = 64, so the "
        "bound cannot be met at this box size by any quadrature rule; "
        "every oscillating row (k != 0) is under 1e-3")


def test_c11_frame_parseval():
    filt = frame_filter()
    res = verify_generalized_filter(filt.m, filt.multiplicity, filt.spec.N)
    assert res.max_abs() <= 1e-14

    # 10 seeded step functions supported in the multiplicity arc, two
    # interior breakpoints each; translate coefficients out to |n| = 512
    rng = np.random.default_rng(42)
    third = Fraction(1, 3)
    fs = []
    for _ in range(10):
        cuts = sorted(rng.choice(np.arange(-15, 16), size=2, replace=False))
        pts = [-third, Fraction(int(cuts[0]), 48), Fraction(int(cuts[1]), 48), third]
        f = None
        for lo, hi in zip(pts, pts[1:]):
            z = rng.uniform(0, 0.4) * np.exp(2j * np.pi * rng.uniform())
            piece = sf_scale(step_indicator([(lo, hi)]), complex(z))
            f = piece if f is None else sf_add(f, piece)
        fs.append(f)
    assert frame_parseval_check(fs, filt.multiplicity, n_max=512) <= 1e-3
