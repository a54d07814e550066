import math

import pytest
from gmpy2 import mpq

from hyperg_gauss.exactnum import CertifiedReal, rat
from hyperg_gauss.gauss import (
    NormalModel,
    Phi,
    Phi_increment,
    check_beta_chain,
    check_cosh_bounds,
    check_elementary_exp,
    check_increment_bounds,
    check_phi_near_zero,
    check_quotient_bounds,
    check_w_bounds,
    elementary_exp_hypothesis,
    normal_cdf,
    phi,
    quotient_beta,
    sqrt_two_pi,
    w_exact,
    w_log_value,
)


def test_phi_at_zero():
    assert Phi(0).contains(mpq(1, 2))
    v = phi(0)
    # 1/sqrt(2 pi) = 0.39894228...
    assert float(v.lo) < 0.398943 and float(v.hi) > 0.398942


def test_phi_at_one():
    v = Phi(1)
    assert float(v.lo) <= 0.8413447460685429 <= float(v.hi)
    assert float(v.width()) < 1e-25


def test_phi_reflection():
    for x in (rat(1, 3), rat(2), rat(-7, 5)):
        total = Phi(x) + Phi(-x)
        assert total.contains(mpq(1))


def test_phi_nested_refinement():
    for x in (rat(-2), rat(1, 7), rat(3)):
        coarse = Phi(x, 96)
        fine = Phi(x, 192)
        assert coarse.lo <= fine.lo <= fine.hi <= coarse.hi


def test_normal_cdf_standardizes():
    model = NormalModel(mpq(3), rat(2))
    assert normal_cdf(model, mpq(3)).contains(mpq(1, 2))
    lhs = normal_cdf(model, mpq(5))
    assert lhs.intersects(Phi(1))


def test_increment_bounds_grid():
    for x in (rat(0), rat(1), rat(-3, 2)):
        for h in (rat(1, 8), rat(1), rat(3)):
            lo, hi = check_increment_bounds(x, h)
            assert lo.passed and hi.passed


def test_increment_quartic_coefficient():
    """Finite-h extrapolation of the increment ratio toward the optimal
    quartic term: (log ratio - (x^2-1)h^2/24)/h^4 tends to
    (-x^4 - 4x^2 + 2)/2880 as h -> 0."""
    h = rat(1, 20)
    for x in (0, 1, 2):
        prec = 192
        ratio = Phi_increment(x, h, prec) / (CertifiedReal.from_rational(h, prec) * phi(x, prec))
        xq = mpq(x)
        quad = (xq * xq - 1) * h * h / 24
        measured = (ratio.log() - quad) / (CertifiedReal.from_rational(h, prec).square().square())
        expected = mpq(-xq**4 - 4 * xq**2 + 2, 2880)
        assert abs(measured.mid() - float(expected)) < 1e-3


def test_phi_near_zero_bounds():
    for x in (rat(1, 1000), rat(1, 2), rat(2), rat(8)):
        lo, hi = check_phi_near_zero(x)
        assert lo.passed and hi.passed


def test_beta_value_and_chain():
    b = quotient_beta(rat(1))
    assert 0.9 < b.mid() < 1.0
    for h in (rat(1, 10), rat(1), rat(4)):
        lt1, above_mid, above_low = check_beta_chain(h)
        assert lt1.passed and above_mid.passed and above_low.passed


def test_quotient_bounds():
    lo, hi = check_quotient_bounds(rat(1, 2), rat(3, 2), rat(1))
    assert lo.passed and hi.passed
    with pytest.raises(ValueError):
        check_quotient_bounds(rat(2), rat(1), rat(1))


def test_cosh_bounds():
    for x in (rat(1, 100), rat(-1, 2), rat(3)):
        lo, hi = check_cosh_bounds(x)
        assert lo.passed and hi.passed
    with pytest.raises(ValueError):
        check_cosh_bounds(0)


def test_elementary_exp_regions():
    assert elementary_exp_hypothesis(mpq(-2), mpq(1))
    assert elementary_exp_hypothesis(mpq(-1), mpq(-1, 2))
    assert elementary_exp_hypothesis(mpq(1, 2), mpq(-1, 4))
    assert not elementary_exp_hypothesis(mpq(1), mpq(2))
    assert check_elementary_exp(rat(-2), rat(1)).passed
    assert check_elementary_exp(rat(1, 2), rat(1, 2)).passed  # equality case
    with pytest.raises(ValueError):
        check_elementary_exp(rat(1), rat(2))


def test_w_exact_values():
    assert w_exact(1) == mpq(1, 2)
    assert w_exact(2) == mpq(3, 8)
    assert w_exact(3) == mpq(5, 16)
    with pytest.raises(ValueError):
        w_exact(0)


def test_w_log_anchor():
    # log(sqrt(pi)/2) = -0.12078...
    v = w_log_value(1)
    assert math.isclose(v.mid(), math.log(math.sqrt(math.pi) / 2), rel_tol=1e-12)


def test_w_bounds_include_equality_at_one():
    first, second, third = check_w_bounds(1)
    assert first.passed and second.passed and third.passed
    assert float(third.margin.lo) == 0.0  # -1/8 + 1/192 = -23/192 exactly
    for x in (2, 10, 137):
        assert all(v.passed for v in check_w_bounds(x))


def test_sqrt_two_pi():
    assert math.isclose(sqrt_two_pi().mid(), math.sqrt(2 * math.pi), rel_tol=1e-15)
