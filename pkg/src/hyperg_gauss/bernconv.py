"""Bernoulli-convolution structure of hypergeometric laws.

Every hypergeometric law is the law of a sum of independent Bernoulli
variables; the success probabilities come from the (all-real, nonpositive)
roots of the probability generating polynomial.  Roots are located with a
floating-point solver but certified purely by exact-sign bisection on the
integer-coefficient polynomial, so the factorization does not rest on the
solver.  The module also checks the two-sided distance bound for Bernoulli
convolutions and the Levy concentration-variance inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
import numpy as np
from gmpy2 import mpfr, mpq, mpz

from .exactnum import (
    DEFAULT_PRECISION_BITS,
    CertifiedReal,
    Status,
    Verdict,
    certify_strict_less,
    rat,
)
from .gauss import CR, NormalModel, _at
from .kolmo import kolmogorov_distance_brute
from .laws import HypergeometricParams, LatticeLaw, hypergeometric

BRACKET_SCALE_BITS = 60  # roots enclosed to width 2^(1 - BRACKET_SCALE_BITS)


class FactorizationError(RuntimeError):
    """A PGF root could not be certified real and nonpositive."""


# -- exact polynomial helpers (coefficients low-to-high) ---------------


def _poly_deriv(c):
    return [i * c[i] for i in range(1, len(c))]


def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a, b):
    """Exact division over the rationals."""
    a = list(a)
    q = [mpq(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        f = a[i + len(b) - 1] * inv
        q[i] = f
        for j, bj in enumerate(b):
            a[i + j] -= f * bj
    return q, _poly_trim(a)


def _poly_gcd(a, b):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a:
        inv = 1 / a[-1]
        a = [x * inv for x in a]  # monic
    return a


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [mpq(0)] * (n - len(a))
    b = list(b) + [mpq(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _squarefree_parts(c):
    """Yun decomposition: [(factor, multiplicity)] with factors monic."""
    f = [mpq(x) for x in c]
    inv = 1 / f[-1]
    f = [x * inv for x in f]
    df = _poly_deriv(f)
    g = _poly_gcd(f, df)
    if len(g) == 1:
        return [(f, 1)]
    b, _ = _poly_divmod(f, g)
    d = _poly_sub(_poly_divmod(df, g)[0], _poly_deriv(b))
    out = []
    i = 1
    while len(b) > 1:
        a = _poly_gcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b, _ = _poly_divmod(b, a)
        d = _poly_sub(_poly_divmod(d, a)[0], _poly_deriv(b))
        i += 1
    return out


def _to_int_coeffs(c):
    """Clear denominators; returns mpz list with positive leading coefficient."""
    lcm = 1
    for x in c:
        lcm = gmpy2.lcm(lcm, mpq(x).denominator)
    out = [mpz(mpq(x) * lcm) for x in c]
    if out[-1] < 0:
        out = [-x for x in out]
    return out


def _sign_at_dyadic(c, num, k):
    """Sign of sum c_i (num / 2^k)^i, by exact integer Horner."""
    acc = mpz(c[-1])
    for i in range(len(c) - 2, -1, -1):
        acc = acc * num + (mpz(c[i]) << (k * (len(c) - 1 - i)))
    return int(gmpy2.sign(acc))


# -- root isolation ----------------------------------------------------


def _newton_refine(c, z0, prec=256, steps=4):
    """Polish a double-precision root approximation in MPFR."""
    d = _poly_deriv(c)
    with gmpy2.context(precision=prec):
        x = mpfr(z0)
        cf = [mpfr(v) for v in c]
        df = [mpfr(v) for v in d]
        for _ in range(steps):
            fx = cf[-1]
            for v in reversed(cf[:-1]):
                fx = fx * x + v
            dx = df[-1]
            for v in reversed(df[:-1]):
                dx = dx * x + v
            if dx == 0:
                break
            x = x - fx / dx
        return x


def _bracket_root(c, x, k=BRACKET_SCALE_BITS):
    """Exact dyadic bracket (a, b) around the refined root x, or an exact
    rational root as (r, r).  Returns None if no sign change is found."""
    with gmpy2.context(precision=max(x.precision, 64)):
        num = int(gmpy2.floor(x * (mpz(1) << k)))
    for delta in (1, 1 << 10, 1 << 25):
        a, b = num - delta, num + delta + 1
        sa = _sign_at_dyadic(c, a, k)
        sb = _sign_at_dyadic(c, b, k)
        if sa == 0:
            return (mpq(a, mpz(1) << k),) * 2
        if sb == 0:
            return (mpq(b, mpz(1) << k),) * 2
        if sa != sb:
            while b - a > 2:
                m = (a + b) // 2
                sm = _sign_at_dyadic(c, m, k)
                if sm == 0:
                    return (mpq(m, mpz(1) << k),) * 2
                if sm == sa:
                    a = m
                else:
                    b = m
            return mpq(a, mpz(1) << k), mpq(b, mpz(1) << k)
    return None


def _sturm_chain(c):
    chain = [[mpq(x) for x in c]]
    chain.append(_poly_deriv(chain[0]))
    while len(chain[-1]) > 1:
        _, r = _poly_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-x for x in r])
    return chain


def _sign_changes(chain, t):
    signs = []
    for p in chain:
        v = mpq(0)
        for coef in reversed(p):
            v = v * t + coef
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _isolate_sturm(c_int):
    """Fallback isolation: Sturm counts on dyadic intervals, then sign
    bisection.  Assumes the input is squarefree with no root at any dyadic
    split point hit (exact hits are returned as point brackets)."""
    d = len(c_int) - 1
    chain = _sturm_chain(c_int)
    bound = 1 + max(abs(mpq(x, c_int[-1])) for x in c_int[:-1])
    lo = -mpq(2) ** (int(bound).bit_length() + 1)
    stack = [(lo, mpq(0))]
    isolated = []
    while stack:
        a, b = stack.pop()
        count = _sign_changes(chain, a) - _sign_changes(chain, b)
        if count == 0:
            continue
        if count == 1:
            isolated.append((a, b))
            continue
        m = (a + b) / 2
        v = mpq(0)
        for coef in reversed(c_int):
            v = v * m + coef
        if v == 0:
            isolated.append((m, m))
            eps = (b - a) / (8 * len(c_int))
            stack.append((a, m - eps))
            stack.append((m + eps, b))
            count -= 1
        else:
            stack.append((a, m))
            stack.append((m, b))
    out = []
    for a, b in isolated:
        if a == b:
            out.append((a, b))
            continue
        sa = 1 if _poly_eval_q(c_int, a) > 0 else -1
        while b - a > mpq(1, mpz(1) << (BRACKET_SCALE_BITS - 1)):
            m = (a + b) / 2
            v = _poly_eval_q(c_int, m)
            if v == 0:
                a = b = m
                break
            if (1 if v > 0 else -1) == sa:
                a = m
            else:
                b = m
        out.append((a, b))
    return out


def _poly_eval_q(c, t):
    v = mpq(0)
    for coef in reversed(c):
        v = v * t + coef
    return v


def _roots_of_squarefree(c_int):
    """All real roots of a squarefree integer polynomial, as exact dyadic
    brackets; raises if the certified count falls short of the degree."""
    d = len(c_int) - 1
    if d == 0:
        return []
    if d == 1:
        r = -mpq(c_int[0], c_int[1])
        return [(r, r)]
    approx = np.roots([float(x) for x in reversed(c_int)])
    brackets = []
    for z in sorted(set(approx.real)):
        x = _newton_refine(c_int, z)
        br = _bracket_root(c_int, x)
        if br is not None and not any(br[0] <= hi and lo <= br[1] for lo, hi in brackets):
            brackets.append(br)
    if len(brackets) != d:
        brackets = _isolate_sturm(c_int)
    if len(brackets) != d:
        raise FactorizationError(
            f"isolated {len(brackets)} real roots of a degree-{d} polynomial"
        )
    return sorted(brackets)


# -- the factorization -------------------------------------------------


@dataclass
class BernoulliFactorization:
    """Success probabilities (as certified enclosures, ascending) of
    independent Bernoulli summands reproducing the source law."""

    probabilities: tuple[CertifiedReal, ...]
    source: object  # HypergeometricParams or LatticeLaw
    reconstruction_error: CertifiedReal

    def mean_enclosure(self, prec: int = DEFAULT_PRECISION_BITS) -> CR:
        total = _at(0, prec)
        for p in self.probabilities:
            total = total + p
        return total

    def variance_enclosure(self, prec: int = DEFAULT_PRECISION_BITS) -> CR:
        total = _at(0, prec)
        for p in self.probabilities:
            total = total + p * (1 - p)
        return total


def _interval_from_rationals(a: mpq, b: mpq, prec: int) -> CR:
    lo = CertifiedReal.from_rational(a, prec)
    hi = CertifiedReal.from_rational(b, prec)
    return CertifiedReal(lo.lo, hi.hi, prec)


def factorize(params: HypergeometricParams,
              prec: int = DEFAULT_PRECISION_BITS) -> BernoulliFactorization:
    """Factor a hypergeometric law into Bernoulli summands.

    The PGF is z^offset * Q(z) with Q integer up to a constant; Q has only
    real roots z_j <= 0 and each contributes a factor with p_j = 1/(1-z_j).
    The offset contributes p = 1 factors and the remaining sample draws
    contribute p = 0 factors, so that exactly n probabilities are returned.
    """
    law = hypergeometric(params)
    c_int = _to_int_coeffs(law.masses)
    degree = len(c_int) - 1
    probs = [CertifiedReal.exact(0, prec)] * (params.n - law.support_min - degree)
    probs += [CertifiedReal.exact(1, prec)] * law.support_min
    root_intervals = []
    for factor, mult in _squarefree_parts(c_int):
        for a, b in _roots_of_squarefree(_to_int_coeffs(factor)):
            if b >= 0:
                raise FactorizationError(f"root bracket [{a}, {b}] is not negative")
            root_intervals.extend([(a, b)] * mult)
    if sum(1 for _ in root_intervals) != degree:
        raise FactorizationError("root multiplicities do not sum to the degree")
    for a, b in root_intervals:
        # z <= b < 0, so 1 - z >= 1 - b > 1 and p = 1/(1-z) in (0, 1)
        p = 1 / (1 - _interval_from_rationals(a, b, prec))
        probs.append(p)
    probs.sort(key=lambda p: p.lo)
    err = _reconstruction_error(law, probs, prec)
    return BernoulliFactorization(tuple(probs), params, err)


def _reconstruction_error(law: LatticeLaw, probs, prec: int) -> CertifiedReal:
    """Convolve the Bernoulli enclosures and compare with the exact masses."""
    coeffs = [_at(1, prec)]
    for p in probs:
        q = 1 - p
        nxt = [coeffs[0] * q]
        for i in range(1, len(coeffs)):
            nxt.append(coeffs[i] * q + coeffs[i - 1] * p)
        nxt.append(coeffs[-1] * p)
        coeffs = nxt
    worst = mpfr(0)
    for k, enclosure in enumerate(coeffs):
        gap = (enclosure - law.pmf(k)).abs()
        worst = max(worst, gap.hi)
    zero = CertifiedReal.exact(0, prec)
    return CertifiedReal(zero.lo, worst, prec)


# -- two-sided distance bound for Bernoulli convolutions ---------------


def matched_normal(law: LatticeLaw, prec: int = DEFAULT_PRECISION_BITS) -> NormalModel:
    mu, var, _ = law.moments()
    if var <= 0:
        raise ValueError("matched normal needs positive variance")
    return NormalModel(mu, _at(var, prec).sqrt())


def verify_bc_sandwich(law: LatticeLaw,
                       prec: int = DEFAULT_PRECISION_BITS) -> tuple[Verdict, Verdict]:
    """1/(2 sqrt(1 + 12 sigma^2)) <= d < 0.5583/sigma for the distance d
    to the mean/variance-matched normal law."""
    _, var, _ = law.moments()

    def dist(p: int) -> CR:
        return kolmogorov_distance_brute(law, matched_normal(law, p), p)[0]

    def lower(p: int) -> CR:
        return 1 / (_at(1 + 12 * var, p).sqrt() * 2)

    def upper(p: int) -> CR:
        return _at(rat(5583, 10000), p) / _at(var, p).sqrt()

    return certify_strict_less(lower, dist, start=prec), certify_strict_less(dist, upper, start=prec)


# -- concentration-variance inequalities -------------------------------


@dataclass(frozen=True)
class ConcentrationReport:
    h: mpq
    lhs: mpq  # sup over open length-h windows, exact
    rhs: CertifiedReal  # h / sqrt(h^2 + 12 sigma^2)
    verdict: Verdict


def _window_capacity(h: mpq) -> int:
    """Max number of unit-lattice atoms strictly inside an open length-h
    window: h when h is an integer, ceil(h) otherwise."""
    if h.denominator == 1:
        return int(h)
    return int(-(-h.numerator // h.denominator))


def window_sup(law: LatticeLaw, h: mpq) -> mpq:
    m = min(_window_capacity(h), len(law.masses))
    if m <= 0:
        return mpq(0)
    best = mpq(0)
    for i in range(len(law.masses) - m + 1):
        best = max(best, sum(law.masses[i:i + m], mpq(0)))
    return best


def _rational_sqrt(q: mpq) -> mpq | None:
    num, den = gmpy2.isqrt(q.numerator), gmpy2.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return mpq(num, den)
    return None


def _rational_ge_verdict(lhs: mpq, rhs: mpq, prec: int) -> Verdict:
    margin = CertifiedReal.from_rational(lhs - rhs, prec)
    return Verdict(Status.PASS if lhs >= rhs else Status.FAIL, margin, prec)


def concentration_lower_bound(law: LatticeLaw, h,
                              prec: int = DEFAULT_PRECISION_BITS) -> ConcentrationReport:
    """sup_x P(]x, x+h[) >= h / sqrt(h^2 + 12 sigma^2), with an exact
    rational left side."""
    h = rat(h)
    if h <= 0:
        raise ValueError("window length must be positive")
    lhs = window_sup(law, h)
    _, var, _ = law.moments()
    radicand = h * h + 12 * var
    root = _rational_sqrt(radicand)
    if root is not None:
        rhs_q = h / root
        verdict = _rational_ge_verdict(lhs, rhs_q, prec)
        rhs = CertifiedReal.from_rational(rhs_q, prec)
    else:
        def rhs_of(p):
            return _at(h, p) / _at(radicand, p).sqrt()

        verdict = certify_strict_less(rhs_of, lambda p: _at(lhs, p), start=prec)
        rhs = rhs_of(prec)
    return ConcentrationReport(h, lhs, rhs, verdict)


# -- Levy's sharp form -------------------------------------------------


@dataclass(frozen=True)
class ScaledLaw:
    """A lattice law together with the spacing of the physical lattice."""

    lattice: LatticeLaw
    scale: mpq

    def variance(self) -> mpq:
        _, var, _ = self.lattice.moments()
        return var * self.scale * self.scale


def levy_equality_law(p: int, lam, h) -> tuple[ScaledLaw, Verdict, Verdict]:
    """The mixture attaining equality in Levy's bound: mass lam/p on the
    points j*h (j = 0..p-1) and (1-lam)/(p+1) on (j-1/2)*h (j = 0..p),
    realized on the lattice with spacing h/2.  Returns the law plus exact
    verdicts for the equality 12 sigma^2/h^2 = lam p^2 + (1-lam)(p+1)^2 - 1
    and for the concentration sup being lam/p + (1-lam)/(p+1)."""
    lam, h = rat(lam), rat(h)
    if p < 1 or not 0 <= lam <= 1 or h <= 0:
        raise ValueError("need p >= 1, lam in [0, 1], h > 0")
    masses: dict[int, mpq] = {}
    if lam > 0:
        for j in range(p):
            masses[2 * j] = masses.get(2 * j, mpq(0)) + lam / p
    if lam < 1:
        for j in range(p + 1):
            masses[2 * j - 1] = masses.get(2 * j - 1, mpq(0)) + (1 - lam) / (p + 1)
    lo, hi = min(masses), max(masses)
    law = LatticeLaw(lo, tuple(masses.get(k, mpq(0)) for k in range(lo, hi + 1)))
    scaled = ScaledLaw(law, h / 2)
    prec = DEFAULT_PRECISION_BITS
    target = lam * p * p + (1 - lam) * (p + 1) * (p + 1) - 1
    sigma_sq = scaled.variance()
    eq = 12 * sigma_sq / (h * h) == target
    v_eq = Verdict(Status.PASS if eq else Status.FAIL,
                   CertifiedReal.from_rational(12 * sigma_sq / (h * h) - target, prec), prec)
    c = window_sup(law, mpq(2))  # length h is 2 lattice spacings
    c_target = lam / p + (1 - lam) / (p + 1)
    v_c = Verdict(Status.PASS if c == c_target else Status.FAIL,
                  CertifiedReal.from_rational(c - c_target, prec), prec)
    return scaled, v_eq, v_c


def levy_sharp_check(law: LatticeLaw, h,
                     prec: int = DEFAULT_PRECISION_BITS) -> Verdict:
    """Levy's refinement of the concentration bound: with c the exact
    window sup and c = lam/p + (1-lam)/(p+1) for the unique p with
    1/(p+1) < c <= 1/p, verify 12 sigma^2/h^2 >= lam p^2 + (1-lam)(p+1)^2 - 1,
    which dominates c^(-2) - 1 by convexity."""
    h = rat(h)
    c = window_sup(law, h)
    if c <= 0:
        raise ValueError("degenerate concentration sup")
    p = int(1 / c)
    lam = (c - mpq(1, p + 1)) * p * (p + 1)
    assert mpq(1, p + 1) < c <= mpq(1, p) and 0 <= lam <= 1
    _, var, _ = law.moments()
    target = lam * p * p + (1 - lam) * (p + 1) * (p + 1) - 1
    convex = target >= 1 / (c * c) - 1
    main = 12 * var / (h * h) >= target
    status = Status.PASS if (main and convex) else Status.FAIL
    return Verdict(status, CertifiedReal.from_rational(12 * var / (h * h) - target, prec), prec)
