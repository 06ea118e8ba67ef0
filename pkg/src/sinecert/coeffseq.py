"""Coefficient families, hypothesis predicates and the dominance order.

Families are addressed by string ids (``gamma``, ``delta``, ``phi1_max:3913/5000``,
``power_phi:0.23`` ...) so the command line can name them; see
:func:`parse_family`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .exactnum import AlgebraicReal, UniPoly, isolate_real_roots
from .trigpoly import SinePoly

REL_TOL = 1e-12

ALPHA_QUARTIC = UniPoly.from_int_coeffs_high_first([54675, -2442195, 2182800, -115424, -96429])


@lru_cache(maxsize=1)
def alpha_root() -> AlgebraicReal:
    """Second largest real root of the tangency quartic, isolated exactly."""
    roots = isolate_real_roots(ALPHA_QUARTIC)
    return roots[-2].refine(Fraction(1, 10**15))


def alpha_float() -> float:
    return float(alpha_root().midpoint)


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or an integer; decimals are rejected to avoid silent rounding."""
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"{text!r} is not an exact rational (use p/q)")
    return Fraction(text)


def parse_number(text: str):
    text = text.strip()
    try:
        return parse_rational(text)
    except ValueError:
        return float(text)


# --- closed forms -----------------------------------------------------------

def _vietoris_c(k: int) -> Fraction:
    # c_1 = 1, c_2j = c_2j-1 (2j-1)/(2j), c_2j+1 = c_2j
    j = k // 2
    c = Fraction(1)
    for i in range(1, j + 1):
        c *= Fraction(2 * i - 1, 2 * i)
    return c


def _theorem_c_max(k: int) -> float:
    j = (k + 1) // 2
    if k % 2:
        return 1 / math.sqrt(j)
    return (2 * j - 1) / (2 * j) / math.sqrt(j)


def _gamma(k: int) -> Fraction:
    return Fraction(k + 1, k) if k % 2 else Fraction(1)


def _delta(k: int) -> Fraction:
    return 2 - Fraction((-1) ** k, k)


def _phi1_max(k: int, a) -> Fraction | float:
    if k == 1:
        return 2 * a
    if k == 2:
        return a
    return _gamma(k)


def _power_phi(k: int, g) -> float:
    j = (k + 1) // 2
    w = j ** (-float(g))
    return w if k % 2 else w * (2 * j - 1) / (2 * j)


def _shifted_sqrt_phi(k: int, b) -> float:
    j = (k + 1) // 2
    w = 1 / math.sqrt(float(b) + j)
    return w if k % 2 else w * (2 * j - 1) / (2 * j)


def _ones(k: int) -> Fraction:
    return Fraction(1)


def _fejer(k: int) -> Fraction:
    return Fraction(1, k)


_FAMILIES: dict[str, Callable] = {
    "vietoris_c": _vietoris_c,
    "theoremC_max": _theorem_c_max,
    "gamma": _gamma,
    "delta": _delta,
    "phi1_max": _phi1_max,
    "power_phi": _power_phi,
    "shifted_sqrt_phi": _shifted_sqrt_phi,
    "ones": _ones,
    "fejer": _fejer,
}


@dataclass(frozen=True)
class CoeffSeq:
    """A coefficient family ``k -> a_k`` (k >= 1) with its parameters.

    ``custom`` sequences are finite tuples padded with zeros; ``odd_comb``
    places an inner sequence on the odd indices: ``b_1, 0, b_2, 0, ...``;
    ``scaled`` multiplies an inner sequence termwise by a list of factors.
    """

    family: str
    params: tuple = ()
    inner: "CoeffSeq | None" = None
    values: tuple = field(default=(), repr=False)

    def coeff(self, k: int):
        if k < 1:
            raise ValueError("coefficients are indexed from 1")
        if self.family == "custom":
            return self.values[k - 1] if k <= len(self.values) else Fraction(0)
        if self.family == "odd_comb":
            return self.inner.coeff((k + 1) // 2) if k % 2 else Fraction(0)
        if self.family == "scaled":
            f = self.values[k - 1] if k <= len(self.values) else self.values[-1]
            return self.inner.coeff(k) * f
        return _FAMILIES[self.family](k, *self.params)

    def terms(self, n: int) -> list:
        return [self.coeff(k) for k in range(1, n + 1)]

    def partial_sum(self, n: int) -> SinePoly:
        return SinePoly(self.terms(n))

    @property
    def exact(self) -> bool:
        if self.family in ("theoremC_max", "power_phi", "shifted_sqrt_phi"):
            return False
        if self.family == "custom" or self.family == "scaled":
            own = all(isinstance(v, (int, Fraction)) for v in self.values)
            return own and (self.inner is None or self.inner.exact)
        if self.family == "odd_comb":
            return self.inner.exact
        return all(isinstance(p, (int, Fraction)) for p in self.params)

    @property
    def name(self) -> str:
        if self.family == "custom":
            return "custom:" + ",".join(str(v) for v in self.values)
        if self.family == "odd_comb":
            return f"odd_comb({self.inner.name})"
        if self.family == "scaled":
            return f"scaled({self.inner.name})"
        if self.params:
            return f"{self.family}:" + ",".join(str(p) for p in self.params)
        return self.family


def vietoris_c() -> CoeffSeq:
    return CoeffSeq("vietoris_c")


def theorem_c_max() -> CoeffSeq:
    return CoeffSeq("theoremC_max")


def gamma() -> CoeffSeq:
    return CoeffSeq("gamma")


def delta() -> CoeffSeq:
    return CoeffSeq("delta")


def phi1_max(a) -> CoeffSeq:
    return CoeffSeq("phi1_max", (a,))


def power_phi(exponent: float) -> CoeffSeq:
    return CoeffSeq("power_phi", (float(exponent),))


def shifted_sqrt_phi(beta: float) -> CoeffSeq:
    return CoeffSeq("shifted_sqrt_phi", (float(beta),))


def ones() -> CoeffSeq:
    return CoeffSeq("ones")


def fejer() -> CoeffSeq:
    return CoeffSeq("fejer")


def custom(values: Sequence) -> CoeffSeq:
    vals = tuple(Fraction(v) if isinstance(v, (int, Fraction)) else float(v) for v in values)
    return CoeffSeq("custom", values=vals)


def odd_comb(inner: CoeffSeq) -> CoeffSeq:
    return CoeffSeq("odd_comb", inner=inner)


def scaled(inner: CoeffSeq, factors: Sequence) -> CoeffSeq:
    """Termwise product ``a_k * factors[k-1]`` (last factor repeats)."""
    return CoeffSeq("scaled", inner=inner, values=tuple(factors))


FAMILY_IDS = sorted(list(_FAMILIES) + ["custom", "odd_comb"])


def parse_family(text: str) -> CoeffSeq:
    """Parse ``name`` or ``name:param`` (``custom:2,1,4/3``, ``odd_comb:gamma``)."""
    name, _, arg = text.partition(":")
    name = name.strip()
    if name == "custom":
        return custom([parse_number(t) for t in arg.split(",") if t.strip()])
    if name == "odd_comb":
        return odd_comb(parse_family(arg or "ones"))
    if name not in _FAMILIES:
        raise KeyError(f"unknown family {name!r}")
    if name == "phi1_max":
        if not arg:
            raise ValueError("phi1_max needs a parameter, e.g. phi1_max:3913/5000")
        return phi1_max(parse_number(arg))
    if name in ("power_phi", "shifted_sqrt_phi"):
        if not arg:
            raise ValueError(f"{name} needs a parameter")
        return CoeffSeq(name, (float(arg),))
    if arg:
        raise ValueError(f"family {name!r} takes no parameter")
    return CoeffSeq(name)


# --- comparisons -------------------------------------------------------------

def _cmp(lhs, rhs) -> int:
    """Sign of lhs - rhs; exact for rationals, relative tolerance for floats."""
    if isinstance(lhs, Fraction) and isinstance(rhs, Fraction):
        d = lhs - rhs
        return (d > 0) - (d < 0)
    lhs, rhs = float(lhs), float(rhs)
    if abs(lhs - rhs) <= REL_TOL * max(1.0, abs(lhs), abs(rhs)):
        return 0
    return 1 if lhs > rhs else -1


def _cmp_sqrt(lhs, coef, radicand) -> int:
    """Sign of ``lhs - coef * sqrt(radicand)`` (radicand >= 0)."""
    if not all(isinstance(v, Fraction) for v in (lhs, coef, radicand)):
        return _cmp(float(lhs), float(coef) * math.sqrt(float(radicand)))
    rhs_sign = (coef > 0) - (coef < 0)
    if radicand == 0:
        rhs_sign = 0
    lhs_sign = (lhs > 0) - (lhs < 0)
    if lhs_sign != rhs_sign:
        return 1 if lhs_sign > rhs_sign else -1
    if lhs_sign == 0:
        return 0
    d = lhs * lhs - coef * coef * radicand
    s = (d > 0) - (d < 0)
    return s if lhs_sign > 0 else -s


def _cmp_alpha(r) -> int:
    """Sign of r - alpha."""
    if isinstance(r, Fraction):
        return -alpha_root().compare(r)
    return _cmp(r, alpha_float())


@dataclass(frozen=True)
class ConditionResult:
    condition: str
    holds: bool
    first_failure: int | None
    equalities: tuple[int, ...] = ()
    checked: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def _vietoris_checks(seq, N):
    # index j, sign of a_{2j-1} - (2j/(2j-1)) a_{2j}
    for j in range(1, N // 2 + 1):
        yield 2 * j - 1, _cmp(seq.coeff(2 * j - 1), Fraction(2 * j, 2 * j - 1) * seq.coeff(2 * j))


def _kv_checks(seq, N, start=1):
    for j in range(start, (N - 1) // 2 + 1):
        yield 2 * j, _cmp(seq.coeff(2 * j), Fraction(2 * j + 1, 2 * j + 2) * seq.coeff(2 * j + 1))


def _kv2_checks(seq, N):
    for j in range(1, (N - 1) // 2 + 1):
        f = Fraction((2 * j + 1) * (4 * j - 1), 2 * j * (4 * j + 3))
        yield 2 * j, _cmp(seq.coeff(2 * j), f * seq.coeff(2 * j + 1))


def _thmc_checks(seq, N):
    # (2j-1) sqrt(j+1) / (2j sqrt j) a_{2j+1} <= a_{2j}
    for j in range(1, (N - 1) // 2 + 1):
        coef = Fraction(2 * j - 1, 2 * j) * seq.coeff(2 * j + 1)
        yield 2 * j, _cmp_sqrt(seq.coeff(2 * j), coef, Fraction(j + 1, j))


def _thm1_first_checks(seq, N):
    if N < 3:
        return
    a2, a3 = seq.coeff(2), seq.coeff(3)
    # a2 >= (3 alpha / 4) a3
    if a3 == 0:
        yield 2, _cmp(a2, Fraction(0))
        return
    r = a2 * Fraction(4, 3) / a3 if isinstance(a2, Fraction) and isinstance(a3, Fraction) else 4 * float(a2) / (3 * float(a3))
    s = _cmp_alpha(r)
    yield 2, s if a3 > 0 else -s


_CONDITIONS = {
    "V": lambda seq, N: _vietoris_checks(seq, N),
    "KV": lambda seq, N: _kv_checks(seq, N),
    "KV2": lambda seq, N: _kv2_checks(seq, N),
    "THMC": lambda seq, N: _thmc_checks(seq, N),
    "THM1_FIRST": lambda seq, N: _thm1_first_checks(seq, N),
}
_COMPOSITES = {
    "LEMMA2": ("V", "KV"),
    "THM1": ("V", "THM1_FIRST", "KV_TAIL"),
    "THM2": ("V", "KV2"),
    "THMC_ALL": ("V", "THMC"),
}
CONDITION_IDS = sorted(list(_CONDITIONS) + list(_COMPOSITES) + ["KV_TAIL"])


def _checks_for(cond: str, seq: CoeffSeq, N: int):
    if cond == "KV_TAIL":
        return _kv_checks(seq, N, start=2)
    if cond in _CONDITIONS:
        return _CONDITIONS[cond](seq, N)
    if cond in _COMPOSITES:
        return (item for part in _COMPOSITES[cond] for item in _checks_for(part, seq, N))
    raise KeyError(f"unknown condition {cond!r}")


def check_condition(cond: str, seq: CoeffSeq, N: int) -> ConditionResult:
    """Check a hypothesis predicate on all indices up to ``N`` (equality passes).

    V:          a_{2j-1} >= 2j/(2j-1) a_{2j}
    KV:         a_{2j} >= (2j+1)/(2j+2) a_{2j+1}, j >= 1
    KV_TAIL:    the KV inequality for j >= 2 only
    KV2:        a_{2j} >= (2j+1)(4j-1)/(2j(4j+3)) a_{2j+1}
    THMC:       a_{2j} >= (2j-1) sqrt(j+1) / (2j sqrt(j)) a_{2j+1}
    THM1_FIRST: a_2 >= (3 alpha / 4) a_3, alpha compared exactly
    Composites: LEMMA2 = V+KV, THM1 = V+THM1_FIRST+KV_TAIL, THM2 = V+KV2,
    THMC_ALL = V+THMC.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    cond = cond.upper()
    first = None
    eqs = []
    seen = []
    for idx, s in _checks_for(cond, seq, N):
        seen.append(idx)
        if s == 0:
            eqs.append(idx)
        elif s < 0 and (first is None or idx < first):
            first = idx
    return ConditionResult(cond, first is None, first, tuple(sorted(set(eqs))), tuple(sorted(set(seen))))


def belov_partial(seq: CoeffSeq | SinePoly, n: int):
    """``sum_{k=1}^{n} (-1)^(k-1) k a_k``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    coeff = seq.coeff
    terms = [(k if k % 2 else -k) * coeff(k) for k in range(1, n + 1)]
    if all(isinstance(t, Fraction) for t in terms):
        return sum(terms, Fraction(0))
    return math.fsum(float(t) for t in terms)


def belov_partials(seq: CoeffSeq | SinePoly, N: int) -> list:
    out = []
    acc = Fraction(0)
    for k in range(1, N + 1):
        acc = acc + (k if k % 2 else -k) * seq.coeff(k)
        out.append(acc)
    return out


def dominates(a: CoeffSeq, b: CoeffSeq, N: int) -> bool:
    """``a`` dominates ``b`` through index N.

    Zeros of ``a`` must be zeros of ``b`` and ``b_k / a_k`` must be
    non-increasing over the nonzero ``a_k``.  Convergence of the ratio to zero
    cannot be decided from finitely many terms and is not checked.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    prev = None
    for k in range(1, N + 1):
        ak, bk = a.coeff(k), b.coeff(k)
        if ak == 0:
            if bk != 0:
                return False
            continue
        r = bk / ak if isinstance(ak, Fraction) and isinstance(bk, Fraction) else float(bk) / float(ak)
        if prev is not None and _cmp(r, prev) > 0:
            return False
        prev = r
    return True


ODD_ORDER_NAMES = ("c_odd", "inv_sqrt", "phi1_odd", "delta_odd", "ones")


def odd_coefficient_sequences(N: int = 50) -> dict[str, CoeffSeq]:
    """The odd-index coefficient subsequences of the four maximal sums, plus all-ones."""
    al = alpha_float()
    return {
        "c_odd": custom([_vietoris_c(2 * j - 1) for j in range(1, N + 1)]),
        "inv_sqrt": custom([1 / math.sqrt(j) for j in range(1, N + 1)]),
        "phi1_odd": custom([2 * al] + [float(_gamma(2 * j + 1)) for j in range(1, N)]),
        "delta_odd": custom([_delta(2 * j - 1) for j in range(1, N + 1)]),
        "ones": custom([Fraction(1)] * N),
    }


# (dominant, dominated) pairs as stated alongside the sequences
ODD_ORDER_CLAIMS = (
    ("c_odd", "inv_sqrt"),
    ("phi1_odd", "c_odd"),
    ("phi1_odd", "inv_sqrt"),
    ("delta_odd", "c_odd"),
    ("delta_odd", "inv_sqrt"),
    ("ones", "phi1_odd"),
    ("ones", "delta_odd"),
)


@dataclass(frozen=True)
class OddOrderResult:
    matrix: dict
    claims: tuple
    claim_status: dict

    @property
    def all_claims_hold(self) -> bool:
        return all(self.claim_status.values())


def odd_order_check(N: int = 50) -> OddOrderResult:
    """Pairwise dominance among the odd-coefficient sequences at depth N."""
    seqs = odd_coefficient_sequences(N)
    matrix = {(a, b): dominates(seqs[a], seqs[b], N) for a in seqs for b in seqs}
    status = {pair: matrix[pair] for pair in ODD_ORDER_CLAIMS}
    return OddOrderResult(matrix, ODD_ORDER_CLAIMS, status)


def endpoint_sums(sp: SinePoly | CoeffSeq, n: int | None = None):
    """``(sum (-1)^(k-1) k a_k, sum k a_k)``: slopes at pi (negated) and at 0."""
    if isinstance(sp, CoeffSeq):
        sp = sp.partial_sum(n)
    at_pi = belov_partial(sp, sp.n) if sp.n else Fraction(0)
    terms = [k * c for k, c in enumerate(sp.coeffs, start=1)]
    if all(isinstance(t, Fraction) for t in terms):
        at_zero = sum(terms, Fraction(0))
    else:
        at_zero = math.fsum(float(t) for t in terms)
    return at_pi, at_zero
