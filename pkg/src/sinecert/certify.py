"""Nonnegativity certificates for sine polynomials and partial-sum (PS) reports."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .coeffseq import CoeffSeq, delta, gamma, power_phi, shifted_sqrt_phi
from .exactnum import UniPoly, is_nonneg_on
from .trigpoly import SinePoly, eval_sine, to_algebraic

EXACT_NONNEG = "ExactNonneg"
NUMERIC_EVIDENCE = "NumericEvidence"
VIOLATION = "Violation"

NUMERIC_TOL = 1e-9
GOLDEN = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class NumericMin:
    value: float
    argmin: float
    step: float
    lipschitz: float
    lower_bound: float
    grid_points: int


@dataclass(frozen=True)
class Certificate:
    """Verdict plus the data needed to re-check it.

    ExactNonneg carries the algebraic image ``polynomial``; Violation carries a
    witness ``x`` (and the exact ``witness_y = cos x`` when Sturm produced it);
    NumericEvidence carries the grid minimum.
    """

    verdict: str
    n: int | None = None
    polynomial: UniPoly | None = None
    odd_roots_inside: int | None = None
    witness_y: Fraction | None = None
    witness_x: float | None = None
    witness_value: float | None = None
    numeric: NumericMin | None = None

    @property
    def ok(self) -> bool:
        return self.verdict != VIOLATION

    def to_dict(self) -> dict:
        d: dict = {"verdict": self.verdict}
        if self.n is not None:
            d["n"] = self.n
        if self.polynomial is not None:
            d["degree"] = self.polynomial.degree
        if self.odd_roots_inside is not None:
            d["odd_roots_inside"] = self.odd_roots_inside
        if self.witness_y is not None:
            d["witness_y"] = str(self.witness_y)
        if self.witness_x is not None:
            d["witness_x"] = _num(self.witness_x)
            d["witness_value"] = _num(self.witness_value)
        if self.numeric is not None:
            m = self.numeric
            d["numeric_min"] = {
                "value": _num(m.value),
                "argmin": _num(m.argmin),
                "grid_step": _num(m.step),
                "derivative_bound": _num(m.lipschitz),
                "lower_bound": _num(m.lower_bound),
            }
        return d


def _num(v: float) -> float:
    return float(f"{v:.12g}")


def certify_nonneg_exact(sp: SinePoly) -> Certificate:
    """Exact decision of ``sp >= 0`` on [0, pi] through ``sp = sin(x) p(cos x)``."""
    if not sp.exact:
        raise ValueError("exact coefficients required")
    p = to_algebraic(sp)
    if p.is_zero():
        return Certificate(EXACT_NONNEG, polynomial=p, odd_roots_inside=0)
    check = is_nonneg_on(p, -1, 1)
    if check:
        return Certificate(EXACT_NONNEG, polynomial=p, odd_roots_inside=check.odd_roots_inside)
    y0 = check.witness
    x0 = math.acos(float(y0))
    return Certificate(
        VIOLATION,
        polynomial=p,
        odd_roots_inside=check.odd_roots_inside,
        witness_y=y0,
        witness_x=x0,
        witness_value=eval_sine(sp, x0),
    )


def _golden_min(f: Callable[[float], float], a: float, b: float, iters: int) -> tuple[float, float]:
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def default_grid(sp: SinePoly) -> int:
    return max(200, 20 * sp.n * sp.n)


def numeric_min(
    sp: SinePoly,
    grid: int | None = None,
    refine: int = 40,
    interval: tuple[float, float] = (0.0, math.pi),
    candidates: int = 8,
) -> NumericMin:
    """Grid minimum of ``sp`` on ``interval`` refined by golden-section search.

    ``lower_bound`` is ``min(sampled) - L h / 2`` with ``L = sum k |a_k|``, a
    guaranteed bound for the true minimum up to floating-point error.
    """
    lo, hi = map(float, interval)
    if not lo < hi:
        raise ValueError("empty interval")
    m = grid or default_grid(sp)
    xs = np.linspace(lo, hi, m + 1)
    vals = sp.values(xs)
    h = (hi - lo) / m
    lip = math.fsum(k * abs(float(c)) for k, c in enumerate(sp.coeffs, start=1))
    i_min = int(np.argmin(vals))
    best_x, best_v = float(xs[i_min]), eval_sine(sp, xs[i_min])
    # local minima of the samples, lowest first
    interior = np.where((vals[1:-1] <= vals[:-2]) & (vals[1:-1] <= vals[2:]))[0] + 1
    order = interior[np.argsort(vals[interior])][:candidates]
    for i in order:
        a, b = float(xs[i - 1]), float(xs[i + 1])
        x, v = _golden_min(sp, a, b, refine)
        if v < best_v:
            best_x, best_v = x, v
    for end in (lo, hi):
        v = eval_sine(sp, end)
        if v < best_v:
            best_x, best_v = end, v
    sampled_min = float(vals.min())
    return NumericMin(best_v, best_x, h, lip, min(sampled_min, best_v) - lip * h / 2, m + 1)


def certify_numeric(sp: SinePoly, tol: float = NUMERIC_TOL, **kw) -> Certificate:
    m = numeric_min(sp, **kw)
    if m.value >= -tol:
        return Certificate(NUMERIC_EVIDENCE, numeric=m)
    return Certificate(VIOLATION, witness_x=m.argmin, witness_value=m.value, numeric=m)


def certify(sp: SinePoly, tol: float = NUMERIC_TOL) -> Certificate:
    return certify_nonneg_exact(sp) if sp.exact else certify_numeric(sp, tol)


@dataclass(frozen=True)
class PSReport:
    family: str
    n_range: tuple[int, int]
    certificates: tuple[Certificate, ...]

    @property
    def first_violation(self) -> int | None:
        for c in self.certificates:
            if not c.ok:
                return c.n
        return None

    @property
    def violations(self) -> list[int]:
        return [c.n for c in self.certificates if not c.ok]

    @property
    def all_pass(self) -> bool:
        return self.first_violation is None

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "n_range": list(self.n_range),
            "all_pass": self.all_pass,
            "first_violation": self.first_violation,
            "violations": self.violations,
            "certificates": [c.to_dict() for c in self.certificates],
        }


def _certify_one(args) -> Certificate:
    n, sp, tol = args
    c = certify(sp, tol)
    return replace(c, n=n)


def certify_ps(
    family: CoeffSeq,
    N: int,
    *,
    start: int = 1,
    tol: float = NUMERIC_TOL,
    threads: int | None = None,
    exact: bool | None = None,
) -> PSReport:
    """Certify every partial sum n = start..N of ``family``.

    Exact families go through Sturm; others through :func:`numeric_min`.
    ``exact=False`` forces the numeric route even for rational coefficients.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    use_exact = family.exact if exact is None else (exact and family.exact)
    jobs = []
    for n in range(start, N + 1):
        sp = family.partial_sum(n)
        if not use_exact:
            sp = SinePoly(float(c) for c in sp.coeffs)
        jobs.append((n, sp, tol))
    if threads and threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            certs = list(pool.map(_certify_one, jobs))
    else:
        certs = [_certify_one(j) for j in jobs]
    return PSReport(family.name, (start, N), tuple(certs))


# --- parameter scans ---------------------------------------------------------

SCAN_FAMILIES: dict[str, Callable[[float], CoeffSeq]] = {
    "gamma_exp": power_phi,
    "beta": shifted_sqrt_phi,
}


@dataclass(frozen=True)
class ScanPoint:
    param: float
    failing: tuple[int, ...]
    min_value: float

    @property
    def passes(self) -> bool:
        return not self.failing

    @property
    def first_failing(self) -> int | None:
        return self.failing[0] if self.failing else None


def scan_point(param_family: str, value: float, N: int, tol: float = NUMERIC_TOL) -> ScanPoint:
    """Numeric PS test of one parameter value: which partial sums n <= N dip below -tol."""
    seq = SCAN_FAMILIES[param_family](value)
    failing = []
    worst = math.inf
    for n in range(1, N + 1):
        m = numeric_min(seq.partial_sum(n))
        worst = min(worst, m.value)
        if m.value < -tol:
            failing.append(n)
    return ScanPoint(float(value), tuple(failing), worst)


@dataclass(frozen=True)
class ScanResult:
    param_family: str
    lo: ScanPoint
    hi: ScanPoint
    boundary: float | None
    passing_side: str | None
    bracket: tuple[float, float] | None
    history: tuple[ScanPoint, ...] = field(default=())


def scan_threshold(
    param_family: str,
    lo: float,
    hi: float,
    N: int,
    tol: float = NUMERIC_TOL,
    *,
    width: float = 1e-3,
) -> ScanResult:
    """Bisect for the parameter where "all partial sums n <= N numerically NN" flips.

    The passing side is found from the endpoints rather than assumed.  When
    both endpoints agree no boundary is reported.
    """
    if not lo < hi:
        raise ValueError("need lo < hi")
    if param_family not in SCAN_FAMILIES:
        raise KeyError(f"unknown parameter family {param_family!r}")
    p_lo = scan_point(param_family, lo, N, tol)
    p_hi = scan_point(param_family, hi, N, tol)
    history = [p_lo, p_hi]
    if p_lo.passes == p_hi.passes:
        return ScanResult(param_family, p_lo, p_hi, None, None, None, tuple(history))
    a, b = lo, hi
    a_pass = p_lo.passes
    while b - a > width:
        mid = (a + b) / 2
        pm = scan_point(param_family, mid, N, tol)
        history.append(pm)
        if pm.passes == a_pass:
            a = mid
        else:
            b = mid
    side = "below" if a_pass else "above"
    return ScanResult(param_family, p_lo, p_hi, (a + b) / 2, side, (a, b), tuple(history))


def cosine_analog_check(N: int, seqs: Sequence[CoeffSeq] | None = None) -> bool:
    """True iff every even-length alternating sum a_2 - a_3 + a_4 - ... is negative.

    These are the values at x = pi of the cosine analogue's partial sums with
    the first two terms cancelled; a negative value rules out nonnegativity.
    """
    if N < 4 or N % 2:
        raise ValueError("N must be an even integer >= 4")
    seqs = seqs if seqs is not None else (gamma(), delta())
    for seq in seqs:
        acc = Fraction(0)
        for length in range(1, N + 1):
            k = length + 1
            acc += seq.coeff(k) if length % 2 else -seq.coeff(k)
            if length % 2 == 0 and not acc < 0:
                return False
    return True


def alternating_sums(seq: CoeffSeq, N: int) -> list:
    acc = Fraction(0)
    out = []
    for length in range(1, N + 1):
        k = length + 1
        acc += seq.coeff(k) if length % 2 else -seq.coeff(k)
        out.append(acc)
    return out
