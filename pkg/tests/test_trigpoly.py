import math
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from sinecert.coeffseq import gamma
from sinecert.trigpoly import (
    SinePoly,
    block_decompose,
    chebyshev_u,
    closed_form,
    eval_sine,
    from_terms,
    odd_harmonics,
    phi_theta,
    reflect,
    to_algebraic,
)

fracs = st.fractions(min_value=-10, max_value=10, max_denominator=9)
exact_polys = st.lists(fracs, min_size=1, max_size=12).map(SinePoly)
xs = st.floats(min_value=0.0, max_value=math.pi)


def test_flavor():
    assert SinePoly([1, Fraction(1, 2)]).exact
    assert SinePoly([1, 0.5]).flavor == "numeric"
    with pytest.raises(ValueError):
        SinePoly([float("nan")])


def test_chebyshev_matches_sympy():
    y = sympy.Symbol("y")
    for k in range(0, 15):
        want = sympy.Poly(sympy.chebyshevu(k, y), y).all_coeffs()[::-1]
        assert [sympy.Rational(c.numerator, c.denominator) for c in chebyshev_u(k).coeffs] == want


@given(exact_polys, xs)
def test_sine_factorisation(sp, x):
    p = to_algebraic(sp)
    lhs = eval_sine(sp, x)
    rhs = math.sin(x) * p.eval_float(math.cos(x))
    assert abs(lhs - rhs) <= 1e-9 * (1 + sum(abs(float(c)) for c in p.coeffs))


def test_to_algebraic_rejects_numeric():
    with pytest.raises(ValueError):
        to_algebraic(SinePoly([0.5]))


def test_vectorised_values_agree():
    sp = gamma().partial_sum(25)
    grid = np.linspace(0, math.pi, 101)
    assert np.allclose(sp.values(grid), [eval_sine(sp, x) for x in grid], atol=1e-12)


@given(exact_polys)
def test_reflect_involution(sp):
    assert reflect(reflect(sp)) == sp


@given(exact_polys, xs)
def test_reflect_is_substitution(sp, x):
    assert abs(eval_sine(reflect(sp), x) - eval_sine(sp, math.pi - x)) < 1e-9


def test_phi_theta():
    assert phi_theta(2, "phi") == SinePoly([1, Fraction(1, 2)])
    assert phi_theta(4, "theta") == SinePoly([0, 0, 1, Fraction(-3, 4)])
    with pytest.raises(ValueError):
        phi_theta(1, "phi")
    with pytest.raises(ValueError):
        phi_theta(3, "psi")


@pytest.mark.parametrize("n", range(1, 41))
def test_block_form_reproduces_gamma(n):
    bf = block_decompose(n)
    assert bf.expand() == gamma().partial_sum(n)
    assert (bf.trailing is not None) == (n % 2 == 1)


def test_theta_blocks_reproduce_reflection():
    for n in range(1, 20):
        assert block_decompose(n, "theta").expand() == reflect(gamma().partial_sum(n))


def test_closed_forms_random():
    rng = random.Random(3)
    for ident in ("s3", "s1", "c3", "c1"):
        for _ in range(200):
            n = rng.randint(1, 40)
            x = rng.uniform(0.05, math.pi - 0.05)
            lhs, rhs = closed_form(ident, n, x)
            assert abs(lhs - rhs) < 1e-11


def test_closed_form_singular():
    with pytest.raises(ValueError, match="singular"):
        closed_form("s3", 3, 0.0)
    with pytest.raises(ValueError, match="singular"):
        closed_form("c1", 3, math.pi)
    with pytest.raises(ValueError):
        closed_form("zz", 3, 1.0)


def test_odd_harmonics_and_from_terms():
    assert odd_harmonics(3) == SinePoly([1, 0, 1, 0, 1])
    assert from_terms([(3, Fraction(1, 3)), (1, 1)]) == SinePoly([1, 0, Fraction(1, 3)])


def test_with_term_and_arithmetic():
    sp = SinePoly([1, 2]).with_term(4, 5)
    assert sp == SinePoly([1, 2, 0, 5])
    assert sp - sp == SinePoly([0, 0, 0, 0])
    assert 2 * SinePoly([1]) == SinePoly([2])
