"""Certified evaluation of the standard normal density/cdf and the sharp
analytic inequalities used by the distance bounds: increment-vs-density
bounds, the near-zero Phi bounds, increment quotient bounds with the
optimal constants, cosh envelopes, the (1+x)e^-x comparison, and the
central-binomial w(x) bounds."""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .exactnum import (
    DEFAULT_PRECISION_BITS,
    CertifiedReal,
    Status,
    Verdict,
    certify_le,
    certify_strict_less,
    binomial_coeff,
    rat,
)

CR = CertifiedReal


def _at(v, prec: int) -> CR:
    """View a rational or an interval at the given working precision."""
    if isinstance(v, CR):
        return v.refined(prec)
    return CR.from_rational(mpq(v), prec)


def sqrt_two_pi(prec: int = DEFAULT_PRECISION_BITS) -> CR:
    return (CR.pi(prec) * 2).sqrt()


def phi(x, prec: int = DEFAULT_PRECISION_BITS) -> CR:
    """Standard normal density exp(-x^2/2)/sqrt(2*pi)."""
    xv = _at(x, prec)
    return (-xv.square().half()).exp() / sqrt_two_pi(prec)


def Phi(x, prec: int = DEFAULT_PRECISION_BITS) -> CR:
    """Standard normal distribution function, via erfc(-x/sqrt(2))/2.

    erfc is kept on a nonnegative argument (using erfc(-u) = 2 - erfc(u)),
    where it is cheap to round correctly; near 2 the rounding loop can be
    three orders of magnitude slower.
    """
    xv = _at(x, prec)
    t = xv / _at(2, prec).sqrt()
    if t.lo >= 0:
        return 1 - t.erfc().half()
    return (-t).erfc().half()


def Phi_increment(x, h, prec: int) -> CR:
    """Phi(x + h/2) - Phi(x - h/2)."""
    xv, hv = _at(x, prec), _at(h, prec)
    half_h = hv.half()
    return Phi(xv + half_h, prec) - Phi(xv - half_h, prec)


@dataclass(frozen=True)
class NormalModel:
    """Normal df G(s) = Phi((s - mean)/tau)."""

    mean: mpq
    tau: object  # mpq or CertifiedReal, > 0

    def tau_at(self, prec: int) -> CR:
        return _at(self.tau, prec)


def normal_cdf(model: NormalModel, s, prec: int = DEFAULT_PRECISION_BITS) -> CR:
    arg = (_at(s, prec) - _at(model.mean, prec)) / model.tau_at(prec)
    return Phi(arg, prec)


@dataclass(frozen=True)
class InequalityCertificate:
    name: str
    points: tuple
    verdicts: tuple[Verdict, ...]

    @property
    def overall_pass(self) -> bool:
        return all(v.status is Status.PASS for v in self.verdicts)

    def worst(self) -> Verdict:
        return min(self.verdicts, key=lambda v: v.margin.mid())


# -- Phi increment vs midpoint density (optimal quartic envelopes) -----


def check_increment_bounds(x, h) -> tuple[Verdict, Verdict]:
    """exp((x^2-1)h^2/24 - x^4h^4/960) < (Phi(x+h/2)-Phi(x-h/2))/(h phi(x))
    < exp((x^2-1)h^2/24 + h^4/1440), both strict for h != 0."""

    def ratio(p: int) -> CR:
        return Phi_increment(x, h, p) / (_at(h, p) * phi(x, p))

    def lower(p: int) -> CR:
        xv, hv = _at(x, p), _at(h, p)
        x2, h2 = xv.square(), hv.square()
        return ((x2 - 1) * h2 / 24 - x2.square() * h2.square() / 960).exp()

    def upper(p: int) -> CR:
        xv, hv = _at(x, p), _at(h, p)
        h2 = hv.square()
        return ((xv.square() - 1) * h2 / 24 + h2.square() / 1440).exp()

    return certify_strict_less(lower, ratio), certify_strict_less(ratio, upper)


def check_phi_near_zero(x) -> tuple[Verdict, Verdict]:
    """x e^{-x^2/6} < sqrt(2 pi)(Phi(x) - 1/2) < x e^{-x^2/6 + x^4/90} for x > 0."""

    def middle(p: int) -> CR:
        return sqrt_two_pi(p) * (Phi(x, p) - mpq(1, 2))

    def lower(p: int) -> CR:
        xv = _at(x, p)
        return xv * (-xv.square() / 6).exp()

    def upper(p: int) -> CR:
        xv = _at(x, p)
        x2 = xv.square()
        return xv * (-x2 / 6 + x2.square() / 90).exp()

    return certify_strict_less(lower, middle), certify_strict_less(middle, upper)


def quotient_beta(h, prec: int = DEFAULT_PRECISION_BITS) -> CR:
    """The optimal upper-envelope constant
    beta = (h/2) e^{-h^2/8} / (sqrt(2 pi)(Phi(h/2) - 1/2))."""
    hv = _at(h, prec)
    half_h = hv.half()
    num = half_h * (-hv.square() / 8).exp()
    den = sqrt_two_pi(prec) * (Phi(half_h, prec) - mpq(1, 2))
    return num / den


def check_beta_chain(h) -> tuple[Verdict, Verdict, Verdict]:
    """beta < 1,  beta > exp(-h^2/12 - h^4/1440) > 1 - h^2/12."""

    def beta(p: int) -> CR:
        return quotient_beta(h, p)

    def mid_bound(p: int) -> CR:
        h2 = _at(h, p).square()
        return (-h2 / 12 - h2.square() / 1440).exp()

    def low_bound(p: int) -> CR:
        return 1 - _at(h, p).square() / 12

    return (
        certify_strict_less(beta, lambda p: _at(1, p)),
        certify_strict_less(mid_bound, beta),
        certify_strict_less(low_bound, mid_bound),
    )


def check_quotient_bounds(x, y, h) -> tuple[Verdict, Verdict]:
    """exp(-(y^2-x^2)/2) < increment ratio < exp(-beta (y^2-x^2)/2) for |x| < |y|."""
    if not abs(mpq(x)) < abs(mpq(y)):
        raise ValueError("requires |x| < |y|")

    def ratio(p: int) -> CR:
        return Phi_increment(y, h, p) / Phi_increment(x, h, p)

    def gap(p: int) -> CR:
        return (_at(y, p).square() - _at(x, p).square()).half()

    def lower(p: int) -> CR:
        return (-gap(p)).exp()

    def upper(p: int) -> CR:
        return (-(quotient_beta(h, p) * gap(p))).exp()

    return certify_strict_less(lower, ratio), certify_strict_less(ratio, upper)


# -- elementary inequalities ------------------------------------------


def check_cosh_bounds(x) -> tuple[Verdict, Verdict]:
    """exp(x^2/2 - x^4/12) < cosh(x) < (1 + x^2/3) exp(x^2/6) for x != 0."""
    if not isinstance(x, CR) and mpq(x) == 0:
        raise ValueError("requires x != 0")

    def middle(p: int) -> CR:
        return _at(x, p).cosh()

    def lower(p: int) -> CR:
        x2 = _at(x, p).square()
        return (x2.half() - x2.square() / 12).exp()

    def upper(p: int) -> CR:
        x2 = _at(x, p).square()
        return (1 + x2 / 3) * (x2 / 6).exp()

    return certify_strict_less(lower, middle), certify_strict_less(middle, upper)


def elementary_exp_hypothesis(x: mpq, y: mpq) -> bool:
    return (0 <= y <= abs(x)) or (x <= y <= 0) or (x - mpq(2, 3) * x * x >= -y >= 0)


def check_elementary_exp(x, y) -> Verdict:
    """(1+x)e^{-x} <= (1+y)e^{-y} under the admissible (x, y) regions;
    equality exactly when x = y."""
    x, y = mpq(x), mpq(y)
    if not elementary_exp_hypothesis(x, y):
        raise ValueError(f"(x, y) = ({x}, {y}) does not satisfy the hypothesis")

    def side(v):
        return lambda p: (1 + _at(v, p)) * (-_at(v, p)).exp()

    return certify_le(side(x), side(y), exact_equal=(x == y))


# -- central binomial ratio w(x) --------------------------------------


def w_exact(x: int) -> mpq:
    """w(x) = C(2x, x) / 4^x, exact for integer x >= 1."""
    if x < 1:
        raise ValueError("integer x >= 1 required")
    return binomial_coeff(2 * x, x) / rat(4) ** x


def w_log_value(x: int, prec: int = DEFAULT_PRECISION_BITS) -> CR:
    """Enclosure of log(sqrt(pi x) w(x))."""
    w = w_exact(x)
    return ((CR.pi(prec) * x).sqrt() * w).log()


def check_w_bounds(x: int) -> tuple[Verdict, Verdict, Verdict]:
    """-1/(8x) < log(sqrt(pi x) w(x)) < -1/(8x) + 1/(192 x^3) <= -23/(192 x),
    the last with equality exactly at x = 1."""
    val = lambda p: w_log_value(x, p)
    lo_q = mpq(-1, 8 * x)
    mid_q = lo_q + mpq(1, 192 * x**3)
    hi_q = mpq(-23, 192 * x)
    return (
        certify_strict_less(lambda p: _at(lo_q, p), val),
        certify_strict_less(val, lambda p: _at(mid_q, p)),
        certify_le(lambda p: _at(mid_q, p), lambda p: _at(hi_q, p), exact_equal=(mid_q == hi_q)),
    )
