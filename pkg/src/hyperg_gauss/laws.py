"""Exact lattice laws: hypergeometric and binomial pmfs, cumulants,
symmetry and reflection structure, parameter identifiability, and the
finite-population variance convention sigma_0^2."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from gmpy2 import mpq

from .exactnum import binomial_coeff, rat

INFINITE_POPULATION = math.inf


class InvalidParametersError(ValueError):
    pass


@dataclass(frozen=True)
class HypergeometricParams:
    """Sample size n from an urn with r red and b blue balls."""

    n: int
    r: int
    b: int

    def __post_init__(self):
        if self.n < 0 or self.r < 0 or self.b < 0:
            raise InvalidParametersError("n, r, b must be non-negative")
        if self.n > self.r + self.b:
            raise InvalidParametersError(
                f"sample size n={self.n} exceeds population {self.r + self.b}"
            )

    @property
    def N(self) -> int:
        return self.r + self.b


@dataclass(frozen=True)
class LatticeLaw:
    """Finitely supported law on the integers with exact rational masses.

    Support is {offset, ..., offset + len(masses) - 1}; the first and last
    masses are positive and the masses sum to exactly 1.
    """

    offset: int
    masses: tuple[mpq, ...]

    def __post_init__(self):
        if not self.masses:
            raise ValueError("empty law")
        if self.masses[0] <= 0 or self.masses[-1] <= 0:
            raise ValueError("support endpoints must carry positive mass")
        if any(m < 0 for m in self.masses):
            raise ValueError("negative mass")
        if sum(self.masses, mpq(0)) != 1:
            raise ValueError("masses must sum to exactly 1")

    @property
    def support_min(self) -> int:
        return self.offset

    @property
    def support_max(self) -> int:
        return self.offset + len(self.masses) - 1

    def pmf(self, k: int) -> mpq:
        i = k - self.offset
        if 0 <= i < len(self.masses):
            return self.masses[i]
        return mpq(0)

    def cdf(self, k: int) -> mpq:
        """F(k) = P(X <= k) for integer k."""
        if k < self.offset:
            return mpq(0)
        i = min(k - self.offset, len(self.masses) - 1)
        return sum(self.masses[: i + 1], mpq(0))

    def moments(self) -> tuple[mpq, mpq, mpq]:
        """(mean, variance, third centred moment), exactly."""
        mu = sum((m * (self.offset + i) for i, m in enumerate(self.masses)), mpq(0))
        var = mpq(0)
        k3 = mpq(0)
        for i, m in enumerate(self.masses):
            c = self.offset + i - mu
            var += m * c * c
            k3 += m * c * c * c
        return mu, var, k3

    def reflect(self, n: int) -> "LatticeLaw":
        """Law of n - X."""
        return LatticeLaw(n - self.support_max, tuple(reversed(self.masses)))

    def shift(self, a: int) -> "LatticeLaw":
        return LatticeLaw(self.offset + a, self.masses)

    def is_palindrome(self) -> bool:
        return self.masses == tuple(reversed(self.masses))


def hypergeometric(params: HypergeometricParams) -> LatticeLaw:
    """Exact pmf of the number of red balls in a simple random sample."""
    n, r, b = params.n, params.r, params.b
    lo = max(0, n - b)
    hi = min(n, r)
    denom = binomial_coeff(r + b, n)
    masses = tuple(
        binomial_coeff(r, k) * binomial_coeff(b, n - k) / denom for k in range(lo, hi + 1)
    )
    return LatticeLaw(lo, masses)


def binomial(n: int, p) -> LatticeLaw:
    p = rat(p)
    if not 0 <= p <= 1:
        raise InvalidParametersError("p must lie in [0, 1]")
    if p == 0:
        return LatticeLaw(0, (mpq(1),))
    if p == 1:
        return LatticeLaw(n, (mpq(1),))
    q = 1 - p
    masses = tuple(binomial_coeff(n, k) * p**k * q ** (n - k) for k in range(n + 1))
    return LatticeLaw(0, masses)


def dirac(a: int) -> LatticeLaw:
    return LatticeLaw(a, (mpq(1),))


def convolve(a: LatticeLaw, b: LatticeLaw) -> LatticeLaw:
    out = [mpq(0)] * (len(a.masses) + len(b.masses) - 1)
    for i, ma in enumerate(a.masses):
        if ma == 0:
            continue
        for j, mb in enumerate(b.masses):
            out[i + j] += ma * mb
    return LatticeLaw(a.offset + b.offset, tuple(out))


@dataclass(frozen=True)
class CumulantTriple:
    mu: mpq
    sigma_sq: mpq
    kappa3: mpq


def cumulants(params: HypergeometricParams) -> CumulantTriple:
    """Closed-form mean, variance and third centred moment (0/0 read as 0)."""
    n, r, b = params.n, params.r, params.b
    N = r + b
    if N == 0:
        return CumulantTriple(mpq(0), mpq(0), mpq(0))
    mu = mpq(n * r, N)
    sigma_sq = mpq(0) if N == 1 else mpq(n * r * b * (N - n), N * N * (N - 1))
    kappa3 = (
        mpq(0)
        if N <= 2
        else mpq(n * r * b * (b - r) * (N - n) * (N - 2 * n), N**3 * (N - 1) * (N - 2))
    )
    return CumulantTriple(mu, sigma_sq, kappa3)


def cumulants_of_law(law: LatticeLaw) -> CumulantTriple:
    mu, var, k3 = law.moments()
    return CumulantTriple(mu, var, k3)


def is_symmetric(params: HypergeometricParams) -> tuple[bool, mpq | None]:
    """Symmetry about the mean, with the mean as witness when symmetric."""
    n, r, b = params.n, params.r, params.b
    N = r + b
    degenerate = min(n, r, b, N - n) == 0
    if degenerate or 2 * n == N or 2 * r == N:
        return True, cumulants(params).mu
    return False, None


# -- identifiability --------------------------------------------------


@dataclass(frozen=True)
class Dirac:
    a: int


@dataclass(frozen=True)
class Bernoulli:
    p: mpq


@dataclass(frozen=True)
class HypergeometricIdentity:
    n_small: int  # n ^ r
    n_large: int  # n v r
    N: int


@dataclass(frozen=True)
class NotHypergeometric:
    pass


IdentifyResult = Union[Dirac, Bernoulli, HypergeometricIdentity, NotHypergeometric]


def identify(law: LatticeLaw) -> IdentifyResult:
    """Recover the parameters a lattice law has as a hypergeometric law.

    Dirac and Bernoulli laws are classified as such (their hypergeometric
    parameters are not identifiable); all other hypergeometric laws
    determine the unordered pair {n, r} and the population size N, which
    are recovered from the mean, the variance and the right support
    endpoint and then validated against the full pmf.
    """
    if len(law.masses) == 1:
        return Dirac(law.offset)
    if law.offset == 0 and len(law.masses) == 2:
        return Bernoulli(law.masses[1])

    alpha = law.support_max  # candidate n ^ r
    mu, sigma_sq, _ = law.moments()
    if mu <= 0 or mu >= alpha:
        return NotHypergeometric()
    A = mu * (1 - mu / alpha)
    if sigma_sq >= A:  # binomial or heavier; not an identifiable hypergeometric
        return NotHypergeometric()
    # sigma^2 = A * (N - alpha) / (N - 1)  =>  N = (A*alpha - sigma^2) / (A - sigma^2)
    N_q = (A * alpha - sigma_sq) / (A - sigma_sq)
    if N_q.denominator != 1:
        return NotHypergeometric()
    N = int(N_q)
    r_q = N_q * mu / alpha
    if r_q.denominator != 1:
        return NotHypergeometric()
    beta = int(r_q)  # candidate n v r
    if not (0 < alpha <= beta <= N):
        return NotHypergeometric()
    try:
        candidate = hypergeometric(HypergeometricParams(alpha, beta, N - beta))
    except InvalidParametersError:
        return NotHypergeometric()
    if candidate != law:
        return NotHypergeometric()
    return HypergeometricIdentity(alpha, beta, N)


# -- population model -------------------------------------------------


@dataclass(frozen=True)
class PopulationModel:
    law: LatticeLaw
    N: int | float  # population size, math.inf for binomial laws
    n: int  # sample-size parameter (mean is n*r/N; n/2 in symmetric cases)
    sigma_sq: mpq
    sigma0_sq: mpq

    @property
    def is_binomial(self) -> bool:
        return self.N == INFINITE_POPULATION


def population_model(params: HypergeometricParams) -> PopulationModel:
    """Attach the population size N = r + b and the usual approximate
    variance sigma_0^2 = (N-1)/N * sigma^2 to a hypergeometric law."""
    c = cumulants(params)
    N = params.N
    sigma0_sq = mpq(0) if N == 0 else mpq(N - 1, N) * c.sigma_sq
    model = PopulationModel(hypergeometric(params), N, params.n, c.sigma_sq, sigma0_sq)
    _check_sigma0_floor(model, params)
    return model


def population_model_binomial(n: int, p=rat(1, 2)) -> PopulationModel:
    law = binomial(n, p)
    _, var, _ = law.moments()
    return PopulationModel(law, INFINITE_POPULATION, n, var, var)


def _check_sigma0_floor(model: PopulationModel, params: HypergeometricParams) -> None:
    # Floors hold for the symmetric (r = b) cases with N >= 4 used by the
    # distance theory; asserting them catches construction bugs early.
    # (At N = 2, n = 1 the first floor fails: sigma_0^2 = 1/8.)
    if params.r != params.b or params.N < 4:
        return
    N, n = params.N, params.n
    if 1 <= n <= N - 1:
        assert model.sigma0_sq >= mpq(3, 16), (params, model.sigma0_sq)
    if 2 <= n <= N - 2:
        assert model.sigma0_sq >= mpq(1, 4), (params, model.sigma0_sq)


def symmetric_population(N: int | float, n: int) -> PopulationModel:
    """The symmetric case with population size N (r = b = N/2) or the
    symmetric binomial when N is infinite."""
    if N == INFINITE_POPULATION:
        return population_model_binomial(n)
    if N % 2 != 0:
        raise InvalidParametersError("finite symmetric cases need even N")
    return population_model(HypergeometricParams(n, N // 2, N // 2))
