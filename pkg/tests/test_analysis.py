import math
import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest
import sympy
from scipy import optimize

from sinecert import analysis as A
from sinecert.exactnum import is_nonneg_on

a_sym, Y_sym, T_sym = sympy.symbols("a Y T")


def test_sigma_against_brentq():
    s = A.sigma()
    ref = optimize.brentq(A.sigma_fn, math.pi, 1.5 * math.pi, xtol=1e-15)
    assert s.value == pytest.approx(ref, abs=1e-13)
    assert abs(A.sigma_fn(s.value)) <= 1e-11
    assert A.sigma_fn(math.pi) > 0 > A.sigma_fn(1.5 * math.pi)


def test_alpha_against_numpy_roots():
    roots = sorted(r.real for r in np.roots([54675, -2442195, 2182800, -115424, -96429]) if abs(r.imag) < 1e-9)
    assert len(roots) == 4
    assert A.alpha().value == pytest.approx(roots[-2], abs=1e-12)
    assert A.alpha().exact.width <= Fraction(1, 10 ** 12)
    assert 0.78 < A.alpha().value < 0.783


def test_p_a_matches_integer_form():
    for a in (0, 1, 2, Fraction(3, 7)):
        assert A.p_a(a) == A.p_a_integer(a)


def test_p_a_against_sympy_chebyshev():
    # sin x * p(cos x) = 2a sin x + a sin 2x + 4/3 sin 3x + sin 4x + 6/5 sin 5x, scaled by 15/2
    coeffs = [2 * a_sym, a_sym, sympy.Rational(4, 3), 1, sympy.Rational(6, 5)]
    expr = sum(c * sympy.chebyshevu(k, Y_sym) for k, c in enumerate(coeffs))
    want = sympy.Poly(sympy.expand(sympy.Rational(15, 2) * expr), Y_sym)
    for a in (0, 2, 5):
        got = [sympy.Rational(c.numerator, c.denominator) for c in reversed(A.p_a(a).coeffs)]
        assert got == [c.subs(a_sym, a) for c in want.all_coeffs()]


def test_discriminant_against_sympy():
    p = 144 * Y_sym ** 4 + 60 * Y_sym ** 3 - 68 * Y_sym ** 2 + (15 * a_sym - 30) * Y_sym + 15 * a_sym - 1
    d = sympy.Poly(sympy.discriminant(p, Y_sym), a_sym)
    _, prim = d.primitive()
    if prim.LC() < 0:
        prim = -prim
    assert prim.all_coeffs() == [54675, -2442195, 2182800, -115424, -96429]
    assert A.alpha_pipeline_check()


def test_p_a_tangency_examples():
    assert is_nonneg_on(A.p_a(2), -1, 1)
    assert not is_nonneg_on(A.p_a(0), -1, 1)
    assert not is_nonneg_on(A.p_a(Fraction(3913, 5000)), -1, 1)
    assert is_nonneg_on(A.p_a(Fraction(7827, 10000)), -1, 1)


def test_p_of_t_reconstruction_against_sympy():
    # independent route: substitute T into F1 * (1 + T^2)^4 symbolically
    sin_x = 4 * T_sym * (1 - T_sym ** 2) / (1 + T_sym ** 2) ** 2
    cos_x = ((1 - T_sym ** 2) ** 2 - 4 * T_sym ** 2) / (1 + T_sym ** 2) ** 2
    f1 = sympy.Rational(73542, 103909) - T_sym / 2 - sympy.Rational(4347, 10000) * (sin_x + sin_x * cos_x)
    num = sympy.Poly(sympy.cancel(f1 * (1 + T_sym ** 2) ** 4), T_sym)
    rec = A.p_of_t_reconstructed()
    assert [sympy.Rational(c.numerator, c.denominator) for c in reversed(rec.coeffs)] == num.all_coeffs()
    # numerically consistent with F1 itself
    for xv in np.linspace(0.1, 3.0, 7):
        t = math.tan(xv / 4)
        assert rec.eval_float(t) / (1 + t * t) ** 4 == pytest.approx(A.f1_bound(xv), abs=1e-12)


def test_p_of_t_report_structure():
    rep = A.p_of_t_report()
    assert rep.reference(0) == 91927500
    assert rep.reference_positivity.positive
    assert rep.reconstructed_positivity.positive
    # even-degree coefficients agree, odd ones do not
    assert set(rep.mismatched_degrees) <= {1, 3, 5, 7, 9}
    with pytest.raises(A.ReconstructionMismatch):
        A.p_of_t_check()


def test_f_n_examples():
    assert A.f_n(4, math.pi / 2) == pytest.approx(2 / 3, abs=1e-15)
    assert A.f_n(7, 0.0) == 0.0 and A.f_n(2.5, 0.0) == 0.0
    assert A.f_n_at_x2(20) == pytest.approx(A.F20_CLOSED, abs=1e-12)
    with pytest.raises(ValueError):
        A.f_n(4, 4.0)


def test_f_n_closed_form_vs_mpmath():
    mpmath.mp.dps = 25
    rng = random.Random(1)
    for n in list(range(2, 61, 2)) + [3, 5, 9, 21, 43]:
        x = rng.uniform(0, math.pi)
        ref = mpmath.quad(lambda s: mpmath.sin(n * s) / (2 * mpmath.sin(s)), [0, x])
        assert A.f_n(n, x) == pytest.approx(float(ref), abs=1e-10)


def test_f_n_quadrature_vs_closed_form():
    rng = random.Random(2)
    for n in range(2, 61, 2):
        for _ in range(20):
            x = rng.uniform(0, math.pi)
            assert A.f_n_quad(n, x) == pytest.approx(A.f_n(n, x), abs=1e-10)


def test_f_n_real_order_continuity():
    assert A.f_n(6.000001, 1.0) == pytest.approx(A.f_n(6, 1.0), abs=1e-5)


def test_f_n_profile():
    p = A.f_n_profile(23)
    assert p.minima_increasing
    assert min(p.minima) == pytest.approx(A.f_n_at_x2(23))
    assert all(abs(x - j * math.pi / 23) < 1e-15 for j, x in enumerate(p.points, start=1))
    chain = [A.f_n_at_x2(n) for n in range(4, 101)]
    assert all(a < b for a, b in zip(chain, chain[1:]))
    assert chain[-1] < 0.7360


def test_g_hat_reflection_vs_mpmath():
    mpmath.mp.dps = 25
    for m in (43, 45, 47):
        sign = -1 if ((m + 1) // 2) % 2 else 1
        for yv in (0.1, 0.5, 1.0, 1.5):
            ref = sign * mpmath.quad(lambda t: mpmath.cos(m * t) / (2 * mpmath.cos(t)), mpmath.linspace(0, yv, 20))
            assert A.g_hat(m, yv) == pytest.approx(float(ref), abs=1e-9)
            assert A.g_hat_quad(m, yv) == pytest.approx(float(ref), abs=1e-9)


def test_g_hat_domain():
    assert A.g_hat(43, 0.0) == 0.0
    with pytest.raises(ValueError):
        A.g_hat(44, 0.5)
    with pytest.raises(ValueError):
        A.g_hat(43, 2.0)


def test_g_differences():
    assert A.g_difference(43, 1, 2) == pytest.approx(0.21731814075, abs=1e-8)
    assert A.g_difference(43, 5, 6) == pytest.approx(0.059552923006, abs=1e-8)
    diffs = [A.g_difference(m, 1, 2) for m in range(43, 102, 2)]
    assert all(a > b for a, b in zip(diffs, diffs[1:]))


def test_tail_bounds():
    rep = A.tail_bound_checks(range(43, 80, 2))
    assert rep.passed, [r for r in rep.rows if not r.passed]
    assert math.tan(math.pi / 4) <= 0.32 * math.pi


def test_xi_forms():
    assert A.xi(4, 0.0) == 0.0
    assert A.xi_missing_t(4, 0.0) == 2.0
    # the form without the factor t dips below zero, the corrected one does not
    assert A.xi_missing_t(4, math.pi) < 0
    ts = np.linspace(0, 2 * math.pi, 2001)
    assert np.all(A.xi(4, ts) >= -1e-12)


def test_xi_sign_matches_mixed_derivative():
    # -d^2 k_n / dn dt has the sign of xi
    for n in (4, 7, 12):
        for t in (0.5, 2.0, 5.0):
            assert A.mixed_derivative_k(n, t) < 0
            assert A.xi(n, t) > 0


def test_h_monotonicity():
    rep = A.h_k_monotonicity(range(4, 30), points=4000)
    assert rep.passed
    for n in range(4, 51):
        assert A.h_n(n, 2 * math.pi) > A.h_n(n, math.pi) > A.h_n(n, math.pi / 2) > 0


def test_thresholds():
    th = A.thresholds()
    assert th.beta_star == pytest.approx(1.64393, abs=1e-4)
    assert th.beta_hypothesis_side == "below"
    assert th.beta_hypothesis_boundary == pytest.approx(th.beta_star, abs=1e-8)
    assert th.gamma_thm1 == pytest.approx(math.log(10 / 9) / math.log(1.5), abs=1e-8)
    assert th.gamma_thm2 == pytest.approx(math.log(9 / 7) / math.log(2), abs=1e-8)


def test_lambda():
    assert A.lambda_const().value == pytest.approx(0.434695735, abs=1e-8)
