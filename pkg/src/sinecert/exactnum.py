"""Exact univariate polynomial arithmetic over the rationals.

Everything here works on :class:`fractions.Fraction` coefficients and never
rounds.  The main entry points are Sturm-chain root counting, closed-interval
nonnegativity decisions with rational witnesses, root isolation/refinement and
resultant-based discriminants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


class IndeterminateRootCount(ValueError):
    """Raised when asked to count the roots of the zero polynomial."""


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("float coefficients are not allowed in exact polynomials")
    return Fraction(c)


class UniPoly:
    """Dense polynomial ``sum(coeffs[i] * Y**i)`` with rational coefficients.

    Instances are immutable; trailing zeros are trimmed so the zero
    polynomial has an empty coefficient tuple and degree ``-1``.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def from_int_coeffs_high_first(cls, coeffs: Sequence[Number]) -> "UniPoly":
        return cls(reversed(list(coeffs)))

    @classmethod
    def monomial(cls, degree: int, coeff: Number = 1) -> "UniPoly":
        return cls([0] * degree + [coeff])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def lc(self) -> Fraction:
        if not self._coeffs:
            return Fraction(0)
        return self._coeffs[-1]

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_constant(self) -> bool:
        return len(self._coeffs) <= 1

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self._coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("Y" if i == 1 else f"Y^{i}")
            if mono and c == 1:
                terms.append(f"+ {mono}")
            elif mono and c == -1:
                terms.append(f"- {mono}")
            else:
                sign = "-" if c < 0 else "+"
                body = str(abs(c))
                terms.append(f"{sign} {body}{('*' + mono) if mono else ''}")
        out = " ".join(terms)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == UniPoly([other])._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other])

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self._coeffs])

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        other = self._coerce(other)
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise ValueError("negative power")
        out = UniPoly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other) -> tuple["UniPoly", "UniPoly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._coeffs)
        dd = other.degree
        lc = other.lc
        if len(rem) - 1 < dd:
            return UniPoly(), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            q = rem[i] / lc
            quot[i - dd] = q
            if q:
                for j, c in enumerate(other._coeffs):
                    rem[i - dd + j] -= q * c
        return UniPoly(quot), UniPoly(rem[:dd])

    def __floordiv__(self, other) -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UniPoly":
        return divmod(self, other)[1]

    def __call__(self, y: Number) -> Fraction:
        """Exact Horner evaluation at a rational point."""
        y = _frac(y)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * y + c
        return acc

    def eval_float(self, y: float) -> float:
        acc = 0.0
        for c in reversed(self._coeffs):
            acc = acc * y + float(c)
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self._coeffs)][1:])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lc = self.lc
        return UniPoly([c / lc for c in self._coeffs])

    def scale(self, factor: Number) -> "UniPoly":
        factor = _frac(factor)
        return UniPoly([c * factor for c in self._coeffs])

    def primitive(self) -> "UniPoly":
        """Integer polynomial with coprime coefficients and positive leading term.

        Equals ``self`` times a nonzero rational; the sign is chosen so the
        leading coefficient is positive.
        """
        if self.is_zero():
            return self
        den = reduce(math.lcm, (c.denominator for c in self._coeffs), 1)
        ints = [c.numerator * (den // c.denominator) for c in self._coeffs]
        g = reduce(math.gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return UniPoly([i // g for i in ints])

    def positive_primitive(self) -> "UniPoly":
        """Integer polynomial equal to ``self`` times a *positive* rational."""
        if self.is_zero():
            return self
        den = reduce(math.lcm, (c.denominator for c in self._coeffs), 1)
        ints = [c.numerator * (den // c.denominator) for c in self._coeffs]
        g = reduce(math.gcd, ints, 0)
        return UniPoly([i // g for i in ints])

    def compose(self, other: "UniPoly") -> "UniPoly":
        out = UniPoly()
        for c in reversed(self._coeffs):
            out = out * other + c
        return out

    def int_coeffs(self) -> list[int]:
        """Coefficients as ints; raises if any is not integral."""
        out = []
        for c in self._coeffs:
            if c.denominator != 1:
                raise ValueError(f"non-integer coefficient {c}")
            out.append(c.numerator)
        return out


Y = UniPoly([0, 1])


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, (a % b).positive_primitive()
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def squarefree_decomposition(p: UniPoly) -> list[UniPoly]:
    """Yun's algorithm: ``p = lc * prod(f[i] ** (i + 1))`` with monic coprime f[i]."""
    if p.is_constant():
        return []
    dp = p.derivative()
    c = poly_gcd(p, dp)
    w = p // c
    y = dp // c
    z = y - w.derivative()
    factors = []
    while not w.is_constant():
        g = poly_gcd(w, z)
        factors.append(g)
        w = w // g
        y = z // g
        z = y - w.derivative()
    return factors


def odd_multiplicity_part(p: UniPoly) -> UniPoly:
    """Product of the square-free factors that appear with odd multiplicity."""
    out = UniPoly([1])
    for i, f in enumerate(squarefree_decomposition(p)):
        if i % 2 == 0:
            out = out * f
    return out


@dataclass(frozen=True)
class SturmChain:
    """Canonical Sturm sequence ``p, p', -rem(p, p'), ...``.

    Members after the first two are scaled by positive constants to keep the
    coefficients integral; that does not change sign variations.
    """

    polys: tuple[UniPoly, ...]

    @classmethod
    def of(cls, p: UniPoly) -> "SturmChain":
        if p.is_zero():
            raise IndeterminateRootCount("indeterminate root count")
        chain = [p, p.derivative()]
        while not chain[-1].is_zero():
            r = -(chain[-2] % chain[-1])
            chain.append(r.positive_primitive())
        chain.pop()
        return cls(tuple(chain))

    def variations(self, y: Number) -> int:
        y = _frac(y)
        num, den = y.numerator, y.denominator
        last = 0
        count = 0
        for poly in self._integral:
            s = _sign_at(poly, num, den)
            if s == 0:
                continue
            if last and s != last:
                count += 1
            last = s
        return count

    @property
    def _integral(self) -> tuple[UniPoly, ...]:
        cached = self.__dict__.get("_integral_cache")
        if cached is None:
            cached = tuple(q.positive_primitive() for q in self.polys)
            object.__setattr__(self, "_integral_cache", cached)
        return cached


def _sign_at(p: UniPoly, num: int, den: int) -> int:
    """Sign of p(num/den) for den > 0, using integer arithmetic when possible."""
    cs = p.coeffs
    if not cs:
        return 0
    if any(c.denominator != 1 for c in cs):
        v = p(Fraction(num, den))
        return (v > 0) - (v < 0)
    # den^n * p(num/den) = sum c_i num^i den^(n-i)
    acc = cs[-1].numerator
    dpow = 1
    for c in reversed(cs[:-1]):
        dpow *= den
        acc = acc * num + c.numerator * dpow
    return (acc > 0) - (acc < 0)


def _deflate_at(p: UniPoly, r: Fraction) -> UniPoly:
    lin = UniPoly([-r, 1])
    while not p.is_zero() and p(r) == 0:
        p = p // lin
    return p


def count_real_roots(p: UniPoly, lo: Number, hi: Number) -> int:
    """Number of distinct real roots of ``p`` in the open interval (lo, hi).

    Rational roots sitting exactly on an endpoint are divided out first so the
    Sturm count stays exact.
    """
    if p.is_zero():
        raise IndeterminateRootCount("indeterminate root count")
    lo, hi = _frac(lo), _frac(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    p = _deflate_at(_deflate_at(p, lo), hi)
    if p.is_constant():
        return 0
    chain = SturmChain.of(p)
    return chain.variations(lo) - chain.variations(hi)


@dataclass(frozen=True)
class NonnegCheck:
    """Outcome of :func:`is_nonneg_on`; truthy iff the polynomial is nonnegative."""

    nonneg: bool
    witness: Fraction | None = None
    witness_value: Fraction | None = None
    odd_roots_inside: int = 0

    def __bool__(self) -> bool:
        return self.nonneg


def _interior_points(lo: Fraction, hi: Fraction, count: int) -> list[Fraction]:
    return [lo + (hi - lo) * Fraction(i, count + 1) for i in range(1, count + 1)]


def is_nonneg_on(p: UniPoly, lo: Number, hi: Number) -> NonnegCheck:
    """Decide ``p(Y) >= 0`` for every Y in the closed interval [lo, hi]."""
    if p.is_zero():
        raise IndeterminateRootCount("indeterminate root count")
    lo, hi = _frac(lo), _frac(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    for end in (lo, hi):
        v = p(end)
        if v < 0:
            return NonnegCheck(False, end, v)
    if p.is_constant():
        return NonnegCheck(True)
    odd = odd_multiplicity_part(p)
    n_odd = 0 if odd.is_constant() else count_real_roots(odd, lo, hi)
    if n_odd == 0:
        # p has constant sign on (lo, hi) away from its even roots
        for s in _interior_points(lo, hi, p.degree + 1):
            v = p(s)
            if v != 0:
                if v > 0:
                    return NonnegCheck(True)
                return NonnegCheck(False, s, v, 0)
        raise AssertionError("unreachable: polynomial vanishes at deg+1 points")
    witness = _negative_point(p, lo, hi)
    return NonnegCheck(False, witness, p(witness), n_odd)


def _negative_point(p: UniPoly, lo: Fraction, hi: Fraction) -> Fraction:
    sqf = squarefree_part(p)
    intervals = [(r.lo, r.hi) for r in isolate_real_roots(sqf, lo, hi)]
    pts = [lo]
    for a, b in intervals:
        pts.extend((a, b))
    pts.append(hi)
    candidates = list(pts)
    iso = set(intervals)
    for u, v in zip(pts, pts[1:]):
        if (u, v) not in iso and u < v:
            candidates.append((u + v) / 2)
    best = None
    for s in candidates:
        v = p(s)
        if v < 0 and (best is None or v < best[1]):
            best = (s, v)
    if best is None:
        raise AssertionError("odd root detected but no negative sample found")
    return best[0]


@dataclass(frozen=True)
class AlgebraicReal:
    """A real root of ``poly`` identified by an isolating open interval (lo, hi)."""

    poly: UniPoly
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", _frac(self.lo))
        object.__setattr__(self, "hi", _frac(self.hi))

    def is_valid(self) -> bool:
        return self.lo < self.hi and count_real_roots(self.poly, self.lo, self.hi) == 1

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint)

    def refine(self, width: Number) -> "AlgebraicReal":
        return refine_root(self, width)

    def compare(self, r: Number) -> int:
        """Sign of ``self - r``, decided exactly."""
        r = _frac(r)
        a = self
        if self.poly(r) == 0 and self.lo < r < self.hi:
            return 0
        while a.lo < r < a.hi:
            a = a.refine(a.width / 2)
        if r <= a.lo:
            return 1
        return -1


def refine_root(a: AlgebraicReal, width: Number) -> AlgebraicReal:
    """Bisect the isolating interval until it is at most ``width`` wide."""
    width = _frac(width)
    if width <= 0:
        raise ValueError("width must be positive")
    p = a.poly
    lo, hi = a.lo, a.hi
    s_lo = _sign_open_end(p, lo, hi, left=True)
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = p(mid)
        if v == 0:
            eps = width / 4
            while count_real_roots(p, mid - eps, mid + eps) != 1:
                eps /= 2
            return AlgebraicReal(p, mid - eps, mid + eps)
        s_mid = 1 if v > 0 else -1
        if s_lo is not None:
            if s_mid == s_lo:
                lo = mid
            else:
                hi = mid
        elif count_real_roots(p, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
            s_lo = s_mid
    return AlgebraicReal(p, lo, hi)


def _sign_open_end(p: UniPoly, lo: Fraction, hi: Fraction, left: bool) -> int | None:
    """Sign of p just inside the interval at lo, when it is a simple sign change.

    Returns None when the root is not a sign change of p (even multiplicity)
    or lo is itself a root; refinement then falls back to Sturm counts.
    """
    v_lo, v_hi = p(lo), p(hi)
    if v_lo == 0 or v_hi == 0 or (v_lo > 0) == (v_hi > 0):
        return None
    return 1 if v_lo > 0 else -1


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: every real root has absolute value below the result."""
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(p: UniPoly, lo: Number | None = None, hi: Number | None = None) -> list[AlgebraicReal]:
    """Isolate every distinct real root of ``p`` in (lo, hi) (whole line by default).

    Returned intervals are disjoint, sorted, lie strictly inside (lo, hi), and
    their endpoints are never roots of ``p``.
    """
    if p.is_zero():
        raise IndeterminateRootCount("indeterminate root count")
    if p.is_constant():
        return []
    sqf = squarefree_part(p)
    if lo is None or hi is None:
        b = root_bound(sqf)
        lo = -b if lo is None else lo
        hi = b if hi is None else hi
    lo, hi = _frac(lo), _frac(hi)
    out: list[AlgebraicReal] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = count_real_roots(sqf, a, b)
        if n == 0:
            continue
        if n == 1 and a != lo and b != hi and sqf(a) != 0 and sqf(b) != 0:
            out.append(AlgebraicReal(sqf, a, b))
            continue
        mid = _split_point(sqf, a, b)
        if sqf(mid) == 0:
            eps = (b - a) / 4
            while count_real_roots(sqf, mid - eps, mid + eps) != 1:
                eps /= 2
            out.append(AlgebraicReal(sqf, mid - eps, mid + eps))
            stack.append((a, mid - eps))
            stack.append((mid + eps, b))
            continue
        stack.append((a, mid))
        stack.append((mid, b))
    out.sort(key=lambda r: r.lo)
    return out


def _split_point(p: UniPoly, a: Fraction, b: Fraction) -> Fraction:
    mid = (a + b) / 2
    if p(mid) != 0:
        return mid
    for k in range(3, 3 + p.degree + 2):
        cand = a + (b - a) / k
        if p(cand) != 0:
            return cand
    return mid


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        pv = m[col][col]
        det *= pv
        for r in range(col + 1, n):
            f = m[r][col] / pv
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def sylvester_matrix(p: UniPoly, q: UniPoly) -> list[list[Fraction]]:
    m, n = p.degree, q.degree
    size = m + n
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + pc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + qc + [Fraction(0)] * (size - n - 1 - i))
    return rows


def resultant(p: UniPoly, q: UniPoly) -> Fraction:
    if p.is_zero() or q.is_zero():
        return Fraction(0)
    if p.degree == 0:
        return p.lc ** q.degree
    if q.degree == 0:
        return q.lc ** p.degree
    return _det(sylvester_matrix(p, q))


def discriminant(p: UniPoly) -> Fraction:
    """``(-1)^(n(n-1)/2) * Res(p, p') / lc(p)`` for degree n >= 2."""
    n = p.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(p, p.derivative()) / p.lc


def interpolate(xs: Sequence[Number], ys: Sequence[Number]) -> UniPoly:
    """Exact Lagrange interpolation through the points (xs[i], ys[i])."""
    xs = [_frac(x) for x in xs]
    out = UniPoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = UniPoly([_frac(yi)])
        for j, xj in enumerate(xs):
            if j != i:
                term = term * UniPoly([-xj, 1]).scale(1 / (xi - xj))
        out = out + term
    return out
