"""Special constants and auxiliary functions behind the positivity proofs.

Covers the tangency constant alpha and its discriminant pipeline, the zero
sigma of ``sin z - z cos z``, the odd-harmonic integral ``f_n`` and its
reflected companion ``g_m``, the tan(x/4)-substituted bound polynomial and the
exponent/shift thresholds of the power and square-root families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import integrate, optimize

from .coeffseq import (
    ALPHA_QUARTIC,
    check_condition,
    phi1_max,
    power_phi,
    shifted_sqrt_phi,
)
from .exactnum import (
    AlgebraicReal,
    UniPoly,
    count_real_roots,
    discriminant,
    interpolate,
    is_nonneg_on,
    isolate_real_roots,
)
from .trigpoly import to_algebraic

HALF_PI = math.pi / 2


@dataclass(frozen=True)
class ProofConstant:
    name: str
    value: float
    exact: object = None
    description: str = ""

    def __float__(self) -> float:
        return self.value


# --- sigma -------------------------------------------------------------------

def sigma_fn(z: float) -> float:
    return math.sin(z) - z * math.cos(z)


def sigma() -> ProofConstant:
    """First positive zero of ``sin z - z cos z`` (bracketed in [pi, 3pi/2])."""
    root = optimize.bisect(sigma_fn, math.pi, 1.5 * math.pi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    return ProofConstant("sigma", root, None, "first positive zero of sin z - z cos z")


# --- alpha ---------------------------------------------------------------------

def alpha_quartic() -> UniPoly:
    return ALPHA_QUARTIC


def alpha_real_roots() -> list[AlgebraicReal]:
    return [r.refine(Fraction(1, 10**12)) for r in isolate_real_roots(ALPHA_QUARTIC)]


def alpha() -> ProofConstant:
    """Second largest real root of the tangency quartic, isolated to width 1e-12."""
    root = alpha_real_roots()[-2]
    return ProofConstant("alpha", float(root.midpoint), root, "second largest real root of the tangency quartic")


# scaling that turns the Chebyshev image of 2a sin x + a sin 2x + gamma_3..5 into integer form
P_A_SCALE = Fraction(15, 2)


def p_a(a) -> UniPoly:
    """Integer-normalised image of ``2a sin x + a sin 2x + sum_{k=3..5} gamma_k sin kx``."""
    return to_algebraic(phi1_max(Fraction(a)).partial_sum(5)).scale(P_A_SCALE)


def p_a_integer(a) -> UniPoly:
    a = Fraction(a)
    return UniPoly([15 * a - 1, 15 * a - 30, -68, 60, 144])


def discriminant_in_a(points: Sequence[int] = tuple(range(-4, 7))) -> UniPoly:
    """Discriminant of ``p_a(Y)`` in Y as an exact polynomial in ``a``.

    The discriminant of a quartic is of degree 6 in its coefficients, each
    affine in ``a``, so exact interpolation through more than 7 points both
    recovers it and checks the degree bound.
    """
    xs = list(points)
    ys = [discriminant(p_a(x)) for x in xs]
    poly = interpolate(xs[:7], ys[:7])
    for x, y in zip(xs[7:], ys[7:]):
        if poly(x) != y:
            raise AssertionError("discriminant is not a degree <= 6 polynomial in a")
    return poly


class PipelineMismatch(AssertionError):
    pass


def alpha_pipeline_check() -> bool:
    """Recompute the tangency quartic from the discriminant and compare exactly."""
    disc = discriminant_in_a().primitive()
    if disc != ALPHA_QUARTIC:
        raise PipelineMismatch(f"discriminant {disc} != quartic {ALPHA_QUARTIC}")
    return True


def lambda_const() -> ProofConstant:
    a = alpha()
    return ProofConstant("lambda", 2 - 2 * a.value, None, "2 - 2 alpha")


# --- P(T) ----------------------------------------------------------------------

P_OF_T_REFERENCE = UniPoly.from_int_coeffs_high_first([
    -45963750, 91927500, 267837423, 367710000, -1630859769,
    551565000, 1171222269, 367710000, -497656173, 91927500,
])
F20_BOUND = Fraction(73542, 103909)
PHI2_WEIGHT = Fraction(4347, 10000)


def p_of_t_reconstructed() -> UniPoly:
    """``(1 + T^2)^4 * F1`` with ``T = tan(x/4)``, built with exact rational algebra.

    Uses sin x = 4T(1-T^2)/(1+T^2)^2 and 1 + cos x = 2(1-T^2)^2/(1+T^2)^2, so
    sin x + sin 2x / 2 = sin x (1 + cos x) = 8T(1-T^2)^3 / (1+T^2)^4.
    """
    T = UniPoly([0, 1])
    one_t2 = UniPoly([1, 0, 1])
    one_minus = UniPoly([1, 0, -1])
    w = one_t2 ** 4
    return w.scale(F20_BOUND) - (T * w).scale(Fraction(1, 2)) - (T * one_minus ** 3).scale(8 * PHI2_WEIGHT)


def f1_bound(x: float) -> float:
    """``73542/103909 - tan(x/4)/2 - 0.4347 (sin x + sin 2x / 2)``."""
    return float(F20_BOUND) - math.tan(x / 4) / 2 - float(PHI2_WEIGHT) * (math.sin(x) + math.sin(2 * x) / 2)


@dataclass(frozen=True)
class PolyPositivity:
    roots_in_open: int
    value_at_0: Fraction
    value_at_1: Fraction
    nonneg: bool

    @property
    def positive(self) -> bool:
        return self.roots_in_open == 0 and self.value_at_0 > 0 and self.value_at_1 > 0


def positivity_on_unit(p: UniPoly) -> PolyPositivity:
    return PolyPositivity(count_real_roots(p, 0, 1), p(0), p(1), bool(is_nonneg_on(p, 0, 1)))


@dataclass(frozen=True)
class PofTReport:
    reference: UniPoly
    reconstructed: UniPoly
    exact_match: bool
    mismatched_degrees: tuple[int, ...]
    reference_positivity: PolyPositivity
    reconstructed_positivity: PolyPositivity


class ReconstructionMismatch(AssertionError):
    pass


def p_of_t_report() -> PofTReport:
    rec = p_of_t_reconstructed()
    # compare the integer form whose constant term matches the reference one
    scale = P_OF_T_REFERENCE(0) / rec(0)
    rec_scaled = rec.scale(scale)
    n = max(rec_scaled.degree, P_OF_T_REFERENCE.degree) + 1
    bad = tuple(i for i in range(n) if _c(rec_scaled, i) != _c(P_OF_T_REFERENCE, i))
    return PofTReport(
        P_OF_T_REFERENCE,
        rec_scaled,
        not bad,
        bad,
        positivity_on_unit(P_OF_T_REFERENCE),
        positivity_on_unit(rec_scaled),
    )


def _c(p: UniPoly, i: int) -> Fraction:
    return p.coeffs[i] if i < len(p.coeffs) else Fraction(0)


def p_of_t_check() -> bool:
    """Rebuild P(T), compare with the reference coefficients, then certify positivity."""
    rep = p_of_t_report()
    if not rep.exact_match:
        raise ReconstructionMismatch(
            f"coefficients of T^{list(rep.mismatched_degrees)} differ: "
            f"reference {rep.reference}, rebuilt {rep.reconstructed}"
        )
    return rep.reference_positivity.positive


# --- f_n ---------------------------------------------------------------------

def _f_integrand(s: float, n: float) -> float:
    if s == 0.0:
        return n / 2
    return math.sin(n * s) / (2 * math.sin(s))


def f_n_quad(n: float, x: float) -> float:
    """``int_0^x sin(n s) / (2 sin s) ds`` by adaptive quadrature."""
    if not 0 <= x <= math.pi:
        raise ValueError("x must lie in [0, pi]")
    if x == 0:
        return 0.0
    val, _ = integrate.quad(_f_integrand, 0.0, x, args=(float(n),), epsabs=1e-13, epsrel=1e-13, limit=500)
    return val


def f_n(n: float, x: float) -> float:
    """Odd-harmonic integral ``f_n(x) = int_0^x sin(ns)/(2 sin s) ds`` on [0, pi].

    Even integer n: sum_{j=1}^{n/2} sin((2j-1)x)/(2j-1).
    Odd integer n:  x/2 + sum_{j=1}^{(n-1)/2} sin(2jx)/(2j).
    Other real n fall back to quadrature.
    """
    if not 0 <= x <= math.pi:
        raise ValueError("x must lie in [0, pi]")
    if n <= 0:
        raise ValueError("n must be positive")
    if float(n).is_integer():
        n = int(n)
        if n % 2 == 0:
            return math.fsum(math.sin((2 * j - 1) * x) / (2 * j - 1) for j in range(1, n // 2 + 1))
        return math.fsum([x / 2] + [math.sin(2 * j * x) / (2 * j) for j in range(1, (n - 1) // 2 + 1)])
    return f_n_quad(n, x)


def f_n_values(n: int, xs) -> np.ndarray:
    xs = np.asarray(xs, dtype=float)
    if n % 2 == 0:
        ks = np.arange(1, n, 2, dtype=float)
        return np.sin(np.outer(xs, ks)) @ (1 / ks)
    ks = np.arange(2, n, 2, dtype=float)
    return xs / 2 + (np.sin(np.outer(xs, ks)) @ (1 / ks) if ks.size else 0.0)


F20_CLOSED = 2 / 15 + 1580 / 4641 * math.cos(math.pi / 5) + 1820 / 1881 * math.cos(2 * math.pi / 5)


@dataclass(frozen=True)
class CriticalProfile:
    order: int
    points: tuple[float, ...]
    values: tuple[float, ...]
    labels: tuple[str, ...]

    @property
    def minima(self) -> list[float]:
        return [v for v, lab in zip(self.values, self.labels) if lab == "min"]

    @property
    def maxima(self) -> list[float]:
        return [v for v, lab in zip(self.values, self.labels) if lab == "max"]

    @property
    def minima_increasing(self) -> bool:
        m = self.minima
        return all(a < b for a, b in zip(m, m[1:]))


def f_n_profile(n: int) -> CriticalProfile:
    """Critical points j pi / n <= pi/2 of f_n; odd j are maxima, even j minima."""
    if n < 4:
        raise ValueError("n must be >= 4")
    js = [j for j in range(1, n + 1) if j * math.pi / n <= HALF_PI + 1e-15]
    pts = tuple(j * math.pi / n for j in js)
    vals = tuple(f_n(n, x) for x in pts)
    labels = tuple("max" if j % 2 else "min" for j in js)
    return CriticalProfile(n, pts, vals, labels)


def f_n_at_x2(n: int) -> float:
    return f_n(n, 2 * math.pi / n)


# --- g_m -----------------------------------------------------------------------

def _check_odd(m: int) -> None:
    if int(m) != m or m % 2 == 0 or m < 3:
        raise ValueError("order must be an odd integer >= 3")


def g_hat(m: int, y: float) -> float:
    """``(-1)^((m+1)/2) int_0^y cos(mt)/(2 cos t) dt`` via ``f_m(pi/2 - y) - f_m(pi/2)``."""
    _check_odd(m)
    if not 0 <= y <= HALF_PI + 1e-15:
        raise ValueError("y must lie in [0, pi/2]")
    if y == 0:
        return 0.0
    return f_n(m, max(0.0, HALF_PI - y)) - f_n(m, HALF_PI)


def g_hat_quad(m: int, y: float) -> float:
    _check_odd(m)
    sign = -1 if ((m + 1) // 2) % 2 else 1
    val, _ = integrate.quad(lambda t: math.cos(m * t) / (2 * math.cos(t)), 0.0, y, epsabs=1e-13, epsrel=1e-13, limit=500)
    return sign * val


def g_hat_values(m: int, ys) -> np.ndarray:
    ys = np.asarray(ys, dtype=float)
    return f_n_values(m, HALF_PI - ys) - f_n(m, HALF_PI)


def g_critical_point(m: int, i: int) -> float:
    """``y_i = (m - 2i) pi / (2m)``, numbered from the right."""
    return (m - 2 * i) * math.pi / (2 * m)


def g_difference(m: int, i: int, j: int) -> float:
    return g_hat(m, g_critical_point(m, i)) - g_hat(m, g_critical_point(m, j))


def g_profile(m: int) -> CriticalProfile:
    _check_odd(m)
    idx = list(range((m - 1) // 2, 0, -1))
    pts = tuple(g_critical_point(m, i) for i in idx)
    vals = tuple(g_hat(m, y) for y in pts)
    labels = tuple("max" if i % 2 else "min" for i in idx)
    return CriticalProfile(m, pts, vals, labels)


# --- bound checks -----------------------------------------------------------

@dataclass
class BoundRow:
    name: str
    passed: bool
    worst: float
    witness: float | None = None
    detail: str = ""


@dataclass
class BoundReport:
    rows: list[BoundRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


def _grid(lo: float, hi: float, per_unit: int = 10_000) -> np.ndarray:
    return np.linspace(lo, hi, max(2, int(math.ceil((hi - lo) * per_unit)) + 1))


def _refined_max(fn, xs: np.ndarray, vals: np.ndarray) -> tuple[float, float]:
    i = int(np.argmax(vals))
    a, b = xs[max(i - 1, 0)], xs[min(i + 1, len(xs) - 1)]
    if b > a:
        res = optimize.minimize_scalar(lambda t: -fn(t), bounds=(a, b), method="bounded", options={"xatol": 1e-13})
        if -res.fun > vals[i]:
            return float(res.x), float(-res.fun)
    return float(xs[i]), float(vals[i])


def tail_bound_checks(m_range: Sequence[int] = range(43, 202, 2)) -> BoundReport:
    """Dense-grid checks of the elementary bounds used for the large-n tails."""
    rep = BoundReport()

    xs = _grid(0.0, math.pi)
    f1 = np.array([f1_bound(x) for x in xs])
    i = int(np.argmin(f1))
    rep.rows.append(BoundRow("F1(x) >= 0 on [0, pi]", bool(f1.min() >= 0), float(f1.min()), float(xs[i])))

    slack = 0.32 * xs - np.tan(xs / 4)
    i = int(np.argmin(slack))
    rep.rows.append(BoundRow("tan(x/4) <= 0.32 x on [0, pi]", bool(slack.min() >= 0), float(slack.min()), float(xs[i])))

    ts = _grid(0.0, 1 / 3)
    sec = 1 / np.cos(ts)
    rep.rows.append(BoundRow("1/cos t <= 1.06 on [0, 1/3]", bool(sec.max() <= 1.06), float(sec.max()), float(ts[-1])))

    ys_full = _grid(0.0, HALF_PI)
    ys_short = _grid(0.0, 11 / 9)
    worst22 = (-math.inf, None, None)
    worst06 = (-math.inf, None, None)
    for m in m_range:
        v = g_hat_values(m, ys_full)
        y, mx = _refined_max(lambda t: g_hat(m, t), ys_full, v)
        mx = max(mx, max(g_hat(m, p) for p in g_profile(m).points))
        if mx > worst22[0]:
            worst22 = (mx, m, y)
        v = g_hat_values(m, ys_short)
        y, mx = _refined_max(lambda t: g_hat(m, t), ys_short, v)
        crit = [p for p in g_profile(m).points if p <= 11 / 9]
        mx = max([mx] + [g_hat(m, p) for p in crit])
        if mx > worst06[0]:
            worst06 = (mx, m, y)
    rep.rows.append(BoundRow("g_m <= 0.22 on [0, pi/2]", worst22[0] <= 0.22, worst22[0], worst22[2], f"worst m = {worst22[1]}"))
    rep.rows.append(BoundRow("g_m <= 0.06 on [0, 11/9]", worst06[0] <= 0.06, worst06[0], worst06[2], f"worst m = {worst06[1]}"))
    return rep


# --- h_n monotonicity ---------------------------------------------------------

def k_n(n: float, t):
    return 1 / (2 * n * np.sin(np.asarray(t, dtype=float) / n))


def h_n(n: float, t):
    """``1/(2n sin(t/n)) - 1/(2(n+1) sin(t/(n+1)))``."""
    return k_n(n, t) - k_n(n + 1, t)


def xi(n: float, t):
    """Numerator of the mixed derivative of k_n, ``-d^2 k_n / dn dt`` up to a positive factor.

    ``2t cos^2(t/n) + t sin^2(t/n) - 2n cos(t/n) sin(t/n)``; vanishes at t = 0.
    """
    t = np.asarray(t, dtype=float)
    u = t / n
    return 2 * t * np.cos(u) ** 2 + t * np.sin(u) ** 2 - 2 * n * np.cos(u) * np.sin(u)


def xi_missing_t(n: float, t):
    """The same numerator with the factor t missing from the first term."""
    t = np.asarray(t, dtype=float)
    u = t / n
    return 2 * np.cos(u) ** 2 + t * np.sin(u) ** 2 - 2 * n * np.cos(u) * np.sin(u)


def xi2(n: float, t):
    t = np.asarray(t, dtype=float)
    u = t / n
    return 3 * np.sin(u) - 2 * u * np.cos(u)


def mixed_derivative_k(n: float, t: float, h: float = 1e-4) -> float:
    """Central finite-difference estimate of d^2 k_n / dn dt."""
    def k(nn, tt):
        return 1 / (2 * nn * math.sin(tt / nn))
    return (k(n + h, t + h) - k(n + h, t - h) - k(n - h, t + h) + k(n - h, t - h)) / (4 * h * h)


@dataclass
class HnReport:
    n_values: tuple[int, ...]
    positive: bool
    increasing: bool
    xi_nonneg: bool
    xi2_nonneg: bool
    xi_at_zero: float
    xi_missing_t_at_zero: float
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.positive and self.increasing and self.xi_nonneg and self.xi2_nonneg


def h_k_monotonicity(ns: Sequence[int] = range(4, 51), points: int = 20_000) -> HnReport:
    """Grid check that h_n is positive and increasing on (0, 2pi], with xi, xi2 >= 0."""
    ts = np.linspace(0.0, 2 * math.pi, points + 1)[1:]
    ts0 = np.linspace(0.0, 2 * math.pi, points + 1)
    pos = inc = xin = xi2n = True
    failures = []
    for n in ns:
        if n < 4:
            raise ValueError("n must be >= 4")
        h = h_n(n, ts)
        if not np.all(h > 0):
            pos = False
            failures.append(f"h_{n} not positive")
        if not np.all(np.diff(h) > 0):
            inc = False
            failures.append(f"h_{n} not increasing")
        if not np.all(xi(n, ts0) >= -1e-12):
            xin = False
            failures.append(f"xi for n={n} negative")
        if not np.all(xi2(n, ts0) >= -1e-12):
            xi2n = False
            failures.append(f"xi2 for n={n} negative")
    n0 = list(ns)[0]
    return HnReport(tuple(ns), pos, inc, xin, xi2n, float(xi(n0, 0.0)), float(xi_missing_t(n0, 0.0)), failures)


# --- thresholds -------------------------------------------------------------

def beta_star() -> ProofConstant:
    a = alpha().value
    return ProofConstant("beta_star", (8 - 9 * a * a) / (9 * a * a - 4), None, "(8 - 9 alpha^2) / (9 alpha^2 - 4)")


def _bisect_predicate(pred, lo: float, hi: float, tol: float = 1e-10) -> float:
    """Boundary of a predicate that is False at lo and True at hi (or vice versa)."""
    p_lo = pred(lo)
    if pred(hi) == p_lo:
        raise ValueError("predicate does not change over the bracket")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if pred(mid) == p_lo:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


@dataclass(frozen=True)
class Thresholds:
    beta_star: float
    beta_hypothesis_side: str
    beta_hypothesis_boundary: float
    gamma_thm1: float
    gamma_thm2: float
    gamma_thm1_closed: float
    gamma_thm2_closed: float


def thresholds(N: int = 200) -> Thresholds:
    """Hypothesis thresholds of the power and shifted square-root families.

    The exponent thresholds come from bisecting the hypothesis predicates; the
    closed forms log(10/9)/log(3/2) and log(9/7)/log 2 are returned alongside
    as the binding single constraints.
    """
    g1 = _bisect_predicate(lambda g: check_condition("THM1", power_phi(g), N).holds, 0.0, 1.0)
    g2 = _bisect_predicate(lambda g: check_condition("THM2", power_phi(g), N).holds, 0.0, 1.0)
    b_pred = lambda b: check_condition("THM1", shifted_sqrt_phi(b), N).holds
    side = "below" if b_pred(0.0) else "above"
    b_edge = _bisect_predicate(b_pred, 0.0, 5.0)
    return Thresholds(
        beta_star().value,
        side,
        b_edge,
        g1,
        g2,
        math.log(10 / 9) / math.log(1.5),
        math.log(9 / 7) / math.log(2),
    )
