import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sinecert.certify import certify_ps
from sinecert.coeffseq import (
    alpha_float,
    belov_partial,
    check_condition,
    custom,
    delta,
    dominates,
    endpoint_sums,
    gamma,
    odd_comb,
    ones,
    parse_family,
    parse_rational,
    phi1_max,
    power_phi,
    odd_order_check,
    scaled,
    shifted_sqrt_phi,
    vietoris_c,
)
from sinecert.trigpoly import SinePoly


def test_closed_form_examples():
    assert gamma().terms(4) == [2, 1, Fraction(4, 3), 1]
    assert delta().terms(4) == [3, Fraction(3, 2), Fraction(7, 3), Fraction(7, 4)]
    assert vietoris_c().terms(6) == [1, Fraction(1, 2), Fraction(1, 2), Fraction(3, 8), Fraction(3, 8), Fraction(5, 16)]
    assert phi1_max(Fraction(1, 2)).terms(4) == [1, Fraction(1, 2), Fraction(4, 3), 1]


def test_power_phi_and_sqrt_families():
    s = power_phi(0.5)
    assert s.coeff(1) == 1 and s.coeff(2) == pytest.approx(0.5)
    assert s.coeff(3) == pytest.approx(2 ** -0.5) and s.coeff(4) == pytest.approx(0.75 * 2 ** -0.5)
    b = shifted_sqrt_phi(1.0)
    assert b.coeff(1) == pytest.approx(1 / math.sqrt(2)) and b.coeff(2) == pytest.approx(0.5 / math.sqrt(2))
    assert not s.exact


def test_positive_coefficients():
    for seq in (gamma(), delta(), vietoris_c(), phi1_max(Fraction(3913, 5000)), power_phi(0.3)):
        assert all(c > 0 for c in seq.terms(60))


def test_odd_comb_and_custom_padding():
    oc = odd_comb(gamma())
    assert oc.terms(5) == [2, 0, 1, 0, Fraction(4, 3)]
    assert custom([1, 2]).coeff(5) == 0


def test_parse_family():
    assert parse_family("gamma") == gamma()
    assert parse_family("phi1_max:3913/5000").coeff(1) == Fraction(3913, 2500)
    assert parse_family("custom:2,1,4/3").terms(3) == [2, 1, Fraction(4, 3)]
    with pytest.raises(KeyError):
        parse_family("nope")
    with pytest.raises(ValueError):
        parse_family("gamma:3")
    with pytest.raises(ValueError):
        parse_rational("0.5")


def test_vietoris_condition_on_delta():
    r = check_condition("V", delta(), 20)
    assert r.holds and 1 in r.equalities


def test_kv2_on_delta_equality_everywhere():
    r = check_condition("KV2", delta(), 20)
    assert r.holds and r.equalities == r.checked


def test_kv_on_gamma_and_thm1_first():
    r = check_condition("KV", gamma(), 20)
    assert r.holds and r.equalities == r.checked
    t = check_condition("THM1_FIRST", gamma(), 20)
    assert t.holds and not t.equalities


def test_thm1_first_is_exact_at_alpha():
    # with a_3 = 4/3 the condition reads a_2 >= alpha
    assert check_condition("THM1_FIRST", custom([1, Fraction(7827, 10000), Fraction(4, 3)]), 3).holds
    assert not check_condition("THM1_FIRST", custom([1, Fraction(3913, 5000), Fraction(4, 3)]), 3).holds


def test_failing_condition_reports_index():
    seq = custom([1, 1, 1, 1])
    r = check_condition("V", seq, 4)
    assert not r.holds and r.first_failure == 1


def test_belov_examples():
    assert belov_partial(gamma(), 2) == 0
    for n in range(2, 41, 2):
        assert belov_partial(vietoris_c(), n) == 0
    for n in range(1, 40, 2):
        assert belov_partial(vietoris_c(), n) > 0
    bumped_phi5 = custom([2, 1, Fraction(4, 3), 1, Fraction(6, 5), 0, 0, Fraction(6, 8)])
    assert belov_partial(bumped_phi5, 8) >= 0


def test_dominance_examples():
    x = gamma()
    assert dominates(x, x, 40)
    assert not dominates(custom([1, 0, 1]), custom([1, 1, 1]), 3)
    assert not dominates(gamma(), delta(), 40)


def _rand_positive(rng):
    return rng.choice([gamma(), delta(), vietoris_c(), ones()])


def test_dominance_reflexive_transitive():
    rng = random.Random(5)
    N = 40

    def dominated_by(a):
        f, fs = Fraction(rng.randint(1, 9), rng.randint(1, 9)), []
        for _ in range(N):
            fs.append(f)
            f *= Fraction(rng.randint(5, 10), 10)
        return scaled(a, fs)

    for _ in range(30):
        a = _rand_positive(rng)
        b = dominated_by(a)
        c = dominated_by(b)
        assert dominates(a, a, N) and dominates(b, b, N)
        assert dominates(a, b, N) and dominates(b, c, N)
        assert dominates(a, c, N)


@given(st.lists(st.fractions(min_value=Fraction(1, 50), max_value=10, max_denominator=50), min_size=3, max_size=10))
def test_dominance_matches_ratio_definition(vals):
    a = custom(vals)
    b = custom([v * v for v in vals])
    ratios = vals
    expect = all(r1 >= r2 for r1, r2 in zip(ratios, ratios[1:]))
    assert dominates(a, b, len(vals)) == expect


def test_remark8_matrix():
    r = odd_order_check(50)
    status = r.claim_status
    assert status[("phi1_odd", "c_odd")] and status[("ones", "phi1_odd")]
    assert status[("ones", "delta_odd")] and status[("delta_odd", "inv_sqrt")]
    # the ratio (1/sqrt j) / c_{2j-1} increases, so the ordering holds the other way round
    assert not status[("c_odd", "inv_sqrt")]
    assert r.matrix[("inv_sqrt", "c_odd")]


def test_endpoint_sums():
    assert endpoint_sums(SinePoly([1, -1])) == (3, -1)
    assert endpoint_sums(SinePoly([1])) == (1, 1)
    assert endpoint_sums(gamma(), 4)[1] == 12


def test_equality_counts_as_satisfied():
    assert check_condition("LEMMA2", gamma(), 40).holds
    assert check_condition("THM2", delta(), 40).holds
    assert check_condition("THM1", phi1_max(Fraction(7827, 10000)), 40).holds


def test_comparison_principle_small():
    rng = random.Random(9)
    for base in (gamma(), delta()):
        assert certify_ps(base, 12).all_pass
        for _ in range(5):
            fs, f = [], Fraction(1)
            for _ in range(12):
                fs.append(f)
                f *= Fraction(rng.randint(3, 10), 10)
            b = scaled(base, fs)
            assert dominates(base, b, 12)
            assert certify_ps(b, 12).all_pass


def test_alpha_float():
    assert alpha_float() == pytest.approx(0.78265213295, abs=1e-10)
