"""Sine polynomials, their Chebyshev image and the two-term building blocks.

A :class:`SinePoly` stores ``a_1..a_n`` for ``sum a_k sin(kx)``.  Exact
polynomials (all coefficients rational) reduce to ``sin(x) * p(cos x)`` with
``p`` computed exactly through the Chebyshev U recurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .exactnum import UniPoly

__all__ = [
    "SinePoly",
    "BlockForm",
    "eval_sine",
    "to_algebraic",
    "chebyshev_u",
    "phi_theta",
    "block_decompose",
    "reflect",
    "closed_form",
    "IDENTITIES",
]


def _is_exact(c) -> bool:
    return isinstance(c, (int, Fraction)) and not isinstance(c, bool)


@dataclass(frozen=True)
class SinePoly:
    """``sum_{k=1}^{n} coeffs[k-1] * sin(k x)``."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable):
        cs = []
        for c in coeffs:
            if _is_exact(c):
                cs.append(Fraction(c))
            else:
                c = float(c)
                if not math.isfinite(c):
                    raise ValueError("sine coefficients must be finite")
                cs.append(c)
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    @property
    def flavor(self) -> str:
        return "exact" if self.exact else "numeric"

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def coeff(self, k: int):
        if 1 <= k <= len(self.coeffs):
            return self.coeffs[k - 1]
        return Fraction(0)

    def __call__(self, x: float) -> float:
        return eval_sine(self, x)

    def __add__(self, other: "SinePoly") -> "SinePoly":
        n = max(self.n, other.n)
        return SinePoly(self.coeff(k) + other.coeff(k) for k in range(1, n + 1))

    def __sub__(self, other: "SinePoly") -> "SinePoly":
        n = max(self.n, other.n)
        return SinePoly(self.coeff(k) - other.coeff(k) for k in range(1, n + 1))

    def __mul__(self, scalar) -> "SinePoly":
        return SinePoly(c * scalar for c in self.coeffs)

    __rmul__ = __mul__

    def with_term(self, k: int, value) -> "SinePoly":
        """Copy with the coefficient of ``sin(kx)`` replaced, padding with zeros."""
        cs = list(self.coeffs) + [Fraction(0)] * max(0, k - self.n)
        cs[k - 1] = value
        return SinePoly(cs)

    def values(self, xs) -> np.ndarray:
        """Vectorised evaluation on an array of points (plain float sums)."""
        xs = np.asarray(xs, dtype=float)
        ks = np.arange(1, self.n + 1, dtype=float)
        a = np.array([float(c) for c in self.coeffs])
        out = np.zeros(xs.shape)
        # chunk to bound the size of the sin(k x) table
        flat = xs.ravel()
        res = out.ravel()
        step = max(1, 2_000_000 // max(1, self.n))
        for i in range(0, flat.size, step):
            chunk = flat[i:i + step]
            res[i:i + step] = np.sin(np.outer(chunk, ks)) @ a
        return res.reshape(xs.shape)


def eval_sine(sp: SinePoly, x: float) -> float:
    """Compensated evaluation of the sine sum at ``x``."""
    x = float(x)
    return math.fsum(float(c) * math.sin(k * x) for k, c in enumerate(sp.coeffs, start=1) if c)


_U_CACHE: list[UniPoly] = [UniPoly([1]), UniPoly([0, 2])]


def chebyshev_u(k: int) -> UniPoly:
    """U_k with ``sin((k+1)x) = sin(x) U_k(cos x)``."""
    two_y = UniPoly([0, 2])
    while len(_U_CACHE) <= k:
        _U_CACHE.append(two_y * _U_CACHE[-1] - _U_CACHE[-2])
    return _U_CACHE[k]


def to_algebraic(sp: SinePoly) -> UniPoly:
    """Polynomial ``p`` with ``sum a_k sin(kx) = sin(x) * p(cos x)``."""
    if not sp.exact:
        raise ValueError("exact coefficients required")
    out = [Fraction(0)] * max(sp.n, 1)
    for k, a in enumerate(sp.coeffs, start=1):
        if a == 0:
            continue
        for i, u in enumerate(chebyshev_u(k - 1).coeffs):
            if u:
                out[i] += a * u
    return UniPoly(out)


def phi_theta(k: int, kind: str) -> SinePoly:
    """``sin((k-1)x) +/- ((k-1)/k) sin(kx)``; ``kind`` is ``"phi"`` (+) or ``"theta"`` (-)."""
    if int(k) != k or k < 2:
        raise ValueError("block index must be an integer >= 2")
    k = int(k)
    w = Fraction(k - 1, k)
    if kind == "phi":
        sign = 1
    elif kind == "theta":
        sign = -1
    else:
        raise ValueError(f"unknown block kind {kind!r}")
    cs = [Fraction(0)] * k
    cs[k - 2] = Fraction(1)
    cs[k - 1] = sign * w
    return SinePoly(cs)


@dataclass(frozen=True)
class BlockForm:
    """Weighted sum of phi/theta blocks plus an optional lone ``sin(nx)`` term."""

    kind: str
    n: int
    blocks: tuple[tuple[int, Fraction], ...]
    trailing: Fraction | None = None

    def expand(self) -> SinePoly:
        out = SinePoly([Fraction(0)] * self.n)
        for index, weight in self.blocks:
            out = out + phi_theta(index, self.kind) * weight
        if self.trailing is not None:
            out = out.with_term(self.n, out.coeff(self.n) + self.trailing)
        return out


def block_decompose(n: int, family: str = "phi") -> BlockForm:
    """Block form of the n-th partial sum of the maximal gamma sum or its reflection.

    ``family`` is ``"phi"`` for ``sum gamma_k sin(kx)`` and ``"theta"`` for the
    reflected sum ``sum (-1)^(k+1) gamma_k sin(kx)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    half = n // 2
    blocks = tuple((2 * j, Fraction(2 * j, 2 * j - 1)) for j in range(1, half + 1))
    trailing = Fraction(2 * half + 2, 2 * half + 1) if n % 2 else None
    return BlockForm(family, n, blocks, trailing)


def reflect(sp: SinePoly) -> SinePoly:
    """Image under ``x -> pi - x``: ``b_k = (-1)^(k+1) a_k``."""
    return SinePoly(c if k % 2 else -c for k, c in enumerate(sp.coeffs, start=1))


def _s3(n, x):
    lhs = math.fsum(math.sin((2 * j - 1) * x) for j in range(1, n + 1))
    den = 2 * math.sin(x)
    return lhs, den, lambda: (1 - math.cos(2 * n * x)) / den


def _s1(n, x):
    lhs = math.fsum(math.sin(k * x) for k in range(1, n + 1))
    den = 2 * math.sin(x / 2)
    return lhs, den, lambda: (math.cos(x / 2) - math.cos((2 * n + 1) * x / 2)) / den


def _c3(n, x):
    lhs = math.fsum(math.cos((2 * j - 1) * x) for j in range(1, n + 1))
    den = 2 * math.sin(x)
    return lhs, den, lambda: math.sin(2 * n * x) / den


def _c1(n, x):
    lhs = math.fsum((-1) ** (k + 1) * math.cos(k * x) for k in range(1, n + 1))
    den = 2 * math.cos(x / 2)
    return lhs, den, lambda: 0.5 + (-1) ** (n + 1) * math.cos((2 * n + 1) * x / 2) / den


IDENTITIES = {"s3": _s3, "s1": _s1, "c3": _c3, "c1": _c1}


def closed_form(identity: str, n: int, x: float, *, singular_tol: float = 1e-12) -> tuple[float, float]:
    """Both sides of a classical finite trigonometric sum identity.

    s3: sin x + sin 3x + ... + sin((2n-1)x) = (1 - cos 2nx) / (2 sin x)
    s1: sin x + ... + sin nx = (cos(x/2) - cos((2n+1)x/2)) / (2 sin(x/2))
    c3: cos x + cos 3x + ... + cos((2n-1)x) = sin 2nx / (2 sin x)
    c1: cos x - cos 2x + ... + (-1)^(n+1) cos nx = 1/2 + (-1)^(n+1) cos((2n+1)x/2) / (2 cos(x/2))
    """
    try:
        fn = IDENTITIES[identity]
    except KeyError:
        raise ValueError(f"unknown identity {identity!r}") from None
    if n < 1:
        raise ValueError("n must be >= 1")
    lhs, den, rhs = fn(n, float(x))
    if abs(den) < singular_tol:
        raise ValueError("identity singular here")
    return lhs, rhs()


def ones(n: int) -> SinePoly:
    return SinePoly([1] * n)


def odd_harmonics(n: int) -> SinePoly:
    """``sin x + sin 3x + ... + sin((2n-1)x)``."""
    cs = [Fraction(0)] * (2 * n - 1)
    cs[::2] = [Fraction(1)] * n
    return SinePoly(cs)


def from_terms(terms: Sequence[tuple[int, object]]) -> SinePoly:
    """Build from ``(k, a_k)`` pairs."""
    n = max(k for k, _ in terms)
    cs: list = [Fraction(0)] * n
    for k, a in terms:
        cs[k - 1] = cs[k - 1] + a
    return SinePoly(cs)
