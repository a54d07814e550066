import math

import pytest
from gmpy2 import mpq

from hyperg_gauss.laws import (
    INFINITE_POPULATION,
    Bernoulli,
    Dirac,
    HypergeometricIdentity,
    HypergeometricParams,
    InvalidParametersError,
    LatticeLaw,
    NotHypergeometric,
    binomial,
    convolve,
    cumulants,
    cumulants_of_law,
    dirac,
    hypergeometric,
    identify,
    is_symmetric,
    population_model,
    population_model_binomial,
    symmetric_population,
)


def test_params_validation():
    with pytest.raises(InvalidParametersError):
        HypergeometricParams(5, 2, 1)
    with pytest.raises(InvalidParametersError):
        HypergeometricParams(-1, 2, 2)
    assert HypergeometricParams(2, 3, 3).N == 6


def test_pmf_oracle_2_3_3():
    law = hypergeometric(HypergeometricParams(2, 3, 3))
    assert law.masses == (mpq(1, 5), mpq(3, 5), mpq(1, 5))
    assert law.cdf(0) == mpq(1, 5)
    assert law.cdf(1) == mpq(4, 5)
    assert law.cdf(5) == 1
    assert law.cdf(-1) == 0


def test_center_mass_n2_formula():
    # h_{2,r,r}(1) = N/(2(N-1)) for N = 2r
    for r in range(1, 20):
        law = hypergeometric(HypergeometricParams(2, r, r))
        N = 2 * r
        assert law.pmf(1) == mpq(N, 2 * (N - 1))


def test_support_truncation():
    law = hypergeometric(HypergeometricParams(4, 3, 2))
    assert (law.support_min, law.support_max) == (2, 3)
    assert sum(law.masses, mpq(0)) == 1


def test_parameter_swap_identity():
    """H_{n,r,b} and H_{r,n,r+b-n} are the same law."""
    for n in range(0, 12):
        for r in range(0, 12):
            for b in range(0, 12):
                if n > r + b or r + b - n < 0:
                    continue
                a = hypergeometric(HypergeometricParams(n, r, b))
                c = hypergeometric(HypergeometricParams(r, n, r + b - n))
                assert a == c


def test_red_blue_swap_reflects():
    law = hypergeometric(HypergeometricParams(3, 4, 2))
    swapped = hypergeometric(HypergeometricParams(3, 2, 4))
    assert swapped == law.reflect(3)


def test_cumulants_match_moments():
    for n in range(0, 9):
        for r in range(0, 9):
            for b in range(0, 9):
                if n > r + b:
                    continue
                params = HypergeometricParams(n, r, b)
                c = cumulants(params)
                m = cumulants_of_law(hypergeometric(params))
                assert (c.mu, c.sigma_sq, c.kappa3) == (m.mu, m.sigma_sq, m.kappa3)


def test_binomial_law():
    law = binomial(3, mpq(1, 2))
    assert law.masses == (mpq(1, 8), mpq(3, 8), mpq(3, 8), mpq(1, 8))
    mu, var, k3 = law.moments()
    assert (mu, var, k3) == (mpq(3, 2), mpq(3, 4), 0)
    assert binomial(4, 0) == dirac(0)
    assert binomial(4, 1) == dirac(4)


def test_convolve_binomial_splits():
    a = binomial(2, mpq(1, 3))
    b = binomial(3, mpq(1, 3))
    assert convolve(a, b) == binomial(5, mpq(1, 3))


def test_symmetry_iff_kappa3_zero():
    """The structural symmetry criterion agrees with kappa3 = 0 and with
    the pmf being a palindrome."""
    for n in range(0, 16):
        for r in range(0, 16):
            for b in range(0, 16):
                if n > r + b:
                    continue
                params = HypergeometricParams(n, r, b)
                flag, center = is_symmetric(params)
                law = hypergeometric(params)
                assert flag == (cumulants(params).kappa3 == 0)
                assert flag == law.is_palindrome()
                if flag:
                    assert law.support_min + law.support_max == 2 * center


def test_identify_classifies_small_support():
    assert identify(dirac(7)) == Dirac(7)
    assert identify(binomial(1, mpq(1, 3))) == Bernoulli(mpq(1, 3))
    assert identify(hypergeometric(HypergeometricParams(1, 2, 3))) == Bernoulli(mpq(2, 5))


def test_identify_roundtrip():
    for n in range(0, 13):
        for r in range(0, 13):
            for b in range(0, 13):
                if n > r + b:
                    continue
                law = hypergeometric(HypergeometricParams(n, r, b))
                got = identify(law)
                if len(law.masses) == 1:
                    assert isinstance(got, Dirac)
                elif law.support_min == 0 and len(law.masses) == 2:
                    assert isinstance(got, Bernoulli)
                else:
                    assert got == HypergeometricIdentity(min(n, r), max(n, r), r + b)


def test_identify_rejects_binomial():
    assert identify(binomial(4, mpq(1, 2))) == NotHypergeometric()
    tent = LatticeLaw(0, (mpq(1, 4), mpq(1, 2), mpq(1, 4)))
    assert identify(tent) == NotHypergeometric()


def test_population_model_sigma0():
    pop = population_model(HypergeometricParams(2, 3, 3))
    assert pop.sigma_sq == mpq(2, 5)
    assert pop.sigma0_sq == mpq(1, 3)
    assert not pop.is_binomial
    pop = population_model_binomial(3)
    assert pop.sigma_sq == pop.sigma0_sq == mpq(3, 4)
    assert pop.is_binomial


def test_symmetric_population():
    pop = symmetric_population(6, 2)
    assert pop.law == hypergeometric(HypergeometricParams(2, 3, 3))
    # n(N-n)/(4(N-1)) and n(N-n)/(4N)
    assert pop.sigma_sq == mpq(2 * 4, 4 * 5)
    assert pop.sigma0_sq == mpq(2 * 4, 4 * 6)
    with pytest.raises(InvalidParametersError):
        symmetric_population(7, 2)
    inf_pop = symmetric_population(INFINITE_POPULATION, 3)
    assert inf_pop.N == math.inf
    assert inf_pop.law == binomial(3, mpq(1, 2))


def test_lattice_law_validation():
    with pytest.raises(ValueError):
        LatticeLaw(0, (mpq(1, 2), mpq(1, 3)))  # does not sum to 1
    with pytest.raises(ValueError):
        LatticeLaw(0, (mpq(0), mpq(1)))  # zero endpoint
    law = LatticeLaw(2, (mpq(1, 2), mpq(0), mpq(1, 2)))  # interior zero is fine
    assert law.pmf(3) == 0
    assert law.shift(-2).support_min == 0
