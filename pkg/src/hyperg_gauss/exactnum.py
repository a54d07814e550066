"""Arithmetic substrate: exact rationals, binomial coefficients, and
outward-rounded interval reals.

Rationals are gmpy2.mpq and every distribution-side quantity stays exact.
Real-valued quantities (anything touching Phi, exp, log, ...) live in
CertifiedReal, a directed-rounded interval backed by MPFR contexts, so a
strict inequality between two enclosures is a machine-checked fact about
the underlying reals.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Union

import gmpy2
from gmpy2 import mpfr, mpq

Rational = Union[mpq, int, Fraction]

DEFAULT_PRECISION_BITS = int(os.environ.get("HYPERG_PRECISION_BITS", "96"))
MAX_PRECISION_BITS = 768


def escalation_schedule(start: int | None = None) -> tuple[int, ...]:
    """Doubling precision schedule, capped at MAX_PRECISION_BITS."""
    p = start or DEFAULT_PRECISION_BITS
    out = []
    while p <= MAX_PRECISION_BITS:
        out.append(p)
        p *= 2
    return tuple(out) or (MAX_PRECISION_BITS,)


def rat(a, b=1) -> mpq:
    """Exact rational from ints, strings, Fractions or floats (floats exact)."""
    if b != 1:
        return mpq(a, b)
    if isinstance(a, float):
        f = Fraction(a)
        return mpq(f.numerator, f.denominator)
    return mpq(a)


def binomial_coeff(a: int, k: int) -> mpq:
    """C(a, k) exactly, with C(a, k) = 0 for k outside {0, ..., a}."""
    if a < 0:
        raise ValueError("binomial_coeff requires a >= 0")
    if k < 0 or k > a:
        return mpq(0)
    return mpq(math.comb(a, k))


_ZERO = mpfr(0)
_CTX_CACHE: dict[int, tuple[gmpy2.context, gmpy2.context]] = {}


def _contexts(prec: int) -> tuple[gmpy2.context, gmpy2.context]:
    try:
        return _CTX_CACHE[prec]
    except KeyError:
        pair = (
            gmpy2.context(precision=prec, round=gmpy2.RoundDown),
            gmpy2.context(precision=prec, round=gmpy2.RoundUp),
        )
        _CTX_CACHE[prec] = pair
        return pair


class CertifiedReal:
    """Interval [lo, hi] guaranteed to contain one exact real value.

    All operations round outward, so enclosures compose soundly.  Mixed
    arithmetic with mpq/int promotes the rational operand exactly.
    """

    __slots__ = ("lo", "hi", "precision_bits")

    def __init__(self, lo: mpfr, hi: mpfr, precision_bits: int):
        if not (lo <= hi):
            raise ValueError(f"invalid enclosure [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.precision_bits = precision_bits

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rational(cls, q: Rational, prec: int = DEFAULT_PRECISION_BITS) -> "CertifiedReal":
        q = mpq(q) if not isinstance(q, mpq) else q
        dn, up = _contexts(prec)
        return cls(dn.add(_ZERO, q), up.add(_ZERO, q), prec)

    @classmethod
    def exact(cls, x, prec: int = DEFAULT_PRECISION_BITS) -> "CertifiedReal":
        v = mpfr(x, prec)
        return cls(v, v, prec)

    @classmethod
    def pi(cls, prec: int = DEFAULT_PRECISION_BITS) -> "CertifiedReal":
        dn, up = _contexts(prec)
        return cls(dn.const_pi(), up.const_pi(), prec)

    # -- inspection ---------------------------------------------------

    def width(self) -> mpfr:
        _, up = _contexts(self.precision_bits)
        return up.sub(self.hi, self.lo)

    def mid(self) -> float:
        return (float(self.lo) + float(self.hi)) / 2.0

    def contains(self, q: Rational) -> bool:
        return self.lo <= q <= self.hi

    def intersects(self, other: "CertifiedReal") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def strictly_less(self, other) -> bool:
        other = _lift(other, self.precision_bits)
        return self.hi < other.lo

    def strictly_positive(self) -> bool:
        return self.lo > 0

    def __repr__(self):
        return f"CertifiedReal([{self.lo}, {self.hi}], {self.precision_bits})"

    def __float__(self):
        return self.mid()

    # -- arithmetic ---------------------------------------------------

    def _prec_with(self, other) -> int:
        if isinstance(other, CertifiedReal):
            return max(self.precision_bits, other.precision_bits)
        return self.precision_bits

    def __add__(self, other):
        p = self._prec_with(other)
        o = _lift(other, p)
        dn, up = _contexts(p)
        return CertifiedReal(dn.add(self.lo, o.lo), up.add(self.hi, o.hi), p)

    __radd__ = __add__

    def __neg__(self):
        # negation is exact, but must go through a context of the right
        # precision: bare operators round at the global (53-bit) context
        dn, _ = _contexts(self.precision_bits)
        return CertifiedReal(dn.minus(self.hi), dn.minus(self.lo), self.precision_bits)

    def __sub__(self, other):
        p = self._prec_with(other)
        o = _lift(other, p)
        dn, up = _contexts(p)
        return CertifiedReal(dn.sub(self.lo, o.hi), up.sub(self.hi, o.lo), p)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        p = self._prec_with(other)
        o = _lift(other, p)
        dn, up = _contexts(p)
        combos = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(dn.mul(a, b) for a, b in combos)
        hi = max(up.mul(a, b) for a, b in combos)
        return CertifiedReal(lo, hi, p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._prec_with(other)
        o = _lift(other, p)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        dn, up = _contexts(p)
        combos = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(dn.div(a, b) for a, b in combos)
        hi = max(up.div(a, b) for a, b in combos)
        return CertifiedReal(lo, hi, p)

    def __rtruediv__(self, other):
        return _lift(other, self.precision_bits).__truediv__(self)

    def abs(self) -> "CertifiedReal":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        dn, _ = _contexts(self.precision_bits)
        return CertifiedReal(mpfr(0), max(dn.minus(self.lo), self.hi), self.precision_bits)

    def square(self) -> "CertifiedReal":
        p = self.precision_bits
        dn, up = _contexts(p)
        a = self.abs()
        return CertifiedReal(dn.mul(a.lo, a.lo), up.mul(a.hi, a.hi), p)

    def sqrt(self) -> "CertifiedReal":
        if self.lo < 0:
            raise ValueError("sqrt of interval with negative lower bound")
        dn, up = _contexts(self.precision_bits)
        return CertifiedReal(dn.sqrt(self.lo), up.sqrt(self.hi), self.precision_bits)

    def exp(self) -> "CertifiedReal":
        dn, up = _contexts(self.precision_bits)
        return CertifiedReal(dn.exp(self.lo), up.exp(self.hi), self.precision_bits)

    def log(self) -> "CertifiedReal":
        if self.lo <= 0:
            raise ValueError("log of interval touching zero")
        dn, up = _contexts(self.precision_bits)
        return CertifiedReal(dn.log(self.lo), up.log(self.hi), self.precision_bits)

    def cosh(self) -> "CertifiedReal":
        # even, minimal at 0
        dn, up = _contexts(self.precision_bits)
        a = self.abs()
        return CertifiedReal(dn.cosh(a.lo), up.cosh(a.hi), self.precision_bits)

    def erfc(self) -> "CertifiedReal":
        # strictly decreasing
        dn, up = _contexts(self.precision_bits)
        return CertifiedReal(dn.erfc(self.hi), up.erfc(self.lo), self.precision_bits)

    def half(self) -> "CertifiedReal":
        # exact in binary
        dn, up = _contexts(self.precision_bits)
        return CertifiedReal(dn.div_2exp(self.lo, 1), up.div_2exp(self.hi, 1), self.precision_bits)

    def refined(self, prec: int) -> "CertifiedReal":
        """Same enclosure viewed at a (possibly higher) working precision."""
        if prec <= self.precision_bits:
            return self
        return CertifiedReal(mpfr(self.lo, prec), mpfr(self.hi, prec), prec)


def _lift(x, prec: int) -> CertifiedReal:
    if isinstance(x, CertifiedReal):
        return x
    if isinstance(x, (int, mpq, Fraction)):
        return CertifiedReal.from_rational(mpq(x), prec)
    raise TypeError(f"cannot lift {type(x)!r} into a certified interval")


def to_certified(x: Rational, precision_bits: int = DEFAULT_PRECISION_BITS) -> CertifiedReal:
    if precision_bits < 24:
        raise ValueError("precision_bits must be >= 24")
    return CertifiedReal.from_rational(x, precision_bits)


# -- verdicts ---------------------------------------------------------


class Status(Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Verdict:
    status: Status
    margin: CertifiedReal
    precision_used: int

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def __str__(self):
        return f"{self.status.value}(margin~{self.margin.mid():.3e} @{self.precision_used}b)"


def assert_strict_less(a: CertifiedReal, b: CertifiedReal, escalate=None) -> Verdict:
    """Decide a < b from the two enclosures.

    `escalate` may be a pair of callables (prec -> CertifiedReal) used to
    recompute both sides at higher precision while the intervals overlap.
    """
    prec = max(a.precision_bits, b.precision_bits)
    verdict = _compare_once(a, b, prec)
    if verdict.status is not Status.INCONCLUSIVE or escalate is None:
        return verdict
    make_a, make_b = escalate
    for p in escalation_schedule(prec * 2):
        a, b = make_a(p), make_b(p)
        verdict = _compare_once(a, b, p)
        if verdict.status is not Status.INCONCLUSIVE:
            return verdict
    return verdict


def _compare_once(a: CertifiedReal, b: CertifiedReal, prec: int) -> Verdict:
    margin = b - a
    if a.hi < b.lo:
        return Verdict(Status.PASS, margin, prec)
    if b.hi < a.lo:
        return Verdict(Status.FAIL, margin, prec)
    return Verdict(Status.INCONCLUSIVE, margin, prec)


MakeInterval = Callable[[int], CertifiedReal]


def certify_strict_less(make_a: MakeInterval, make_b: MakeInterval,
                        start: int | None = None) -> Verdict:
    """a < b with automatic precision escalation; both sides are closures
    over the working precision."""
    verdict = None
    for p in escalation_schedule(start):
        verdict = _compare_once(make_a(p), make_b(p), p)
        if verdict.status is not Status.INCONCLUSIVE:
            return verdict
    return verdict


def certify_le(make_a: MakeInterval, make_b: MakeInterval,
               exact_equal: bool = False, start: int | None = None) -> Verdict:
    """Non-strict a <= b: exact equality (decided rationally by the caller)
    is accepted as PASS with zero margin."""
    if exact_equal:
        p = start or DEFAULT_PRECISION_BITS
        return Verdict(Status.PASS, CertifiedReal.exact(0, p), p)
    return certify_strict_less(make_a, make_b, start)


def pass_verdict(prec: int = DEFAULT_PRECISION_BITS, margin: CertifiedReal | None = None) -> Verdict:
    return Verdict(Status.PASS, margin or CertifiedReal.exact(0, prec), prec)


def fail_verdict(prec: int = DEFAULT_PRECISION_BITS, margin: CertifiedReal | None = None) -> Verdict:
    return Verdict(Status.FAIL, margin or CertifiedReal.exact(0, prec), prec)
