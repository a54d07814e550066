"""Certified computation of symmetric hypergeometric laws, their normal
approximation error, and the analytic inequalities behind the optimal
1/sqrt(8*pi) error constant."""

from .bernconv import (
    BernoulliFactorization,
    ConcentrationReport,
    FactorizationError,
    concentration_lower_bound,
    factorize,
    levy_equality_law,
    levy_sharp_check,
    matched_normal,
    verify_bc_sandwich,
)
from .exactnum import (
    CertifiedReal,
    Status,
    Verdict,
    binomial_coeff,
    rat,
    to_certified,
)
from .gauss import NormalModel, Phi, normal_cdf, phi
from .kolmo import (
    DistanceReport,
    TauSpec,
    binomial_sigma_d,
    distance_symmetric_closed,
    kolmogorov_distance_brute,
    solve_exception_constant,
    verify_remark_bounds,
    verify_section4_monotonicity,
    verify_theorem_main,
)
from .laws import (
    INFINITE_POPULATION,
    HypergeometricParams,
    LatticeLaw,
    binomial,
    cumulants,
    hypergeometric,
    identify,
    is_symmetric,
    population_model,
    symmetric_population,
)

__all__ = [
    "BernoulliFactorization",
    "CertifiedReal",
    "ConcentrationReport",
    "DistanceReport",
    "FactorizationError",
    "HypergeometricParams",
    "INFINITE_POPULATION",
    "LatticeLaw",
    "NormalModel",
    "Phi",
    "Status",
    "TauSpec",
    "Verdict",
    "binomial",
    "binomial_coeff",
    "binomial_sigma_d",
    "concentration_lower_bound",
    "cumulants",
    "distance_symmetric_closed",
    "factorize",
    "hypergeometric",
    "identify",
    "is_symmetric",
    "kolmogorov_distance_brute",
    "levy_equality_law",
    "levy_sharp_check",
    "matched_normal",
    "normal_cdf",
    "phi",
    "population_model",
    "rat",
    "solve_exception_constant",
    "symmetric_population",
    "to_certified",
    "verify_bc_sandwich",
    "verify_remark_bounds",
    "verify_section4_monotonicity",
    "verify_theorem_main",
]

__version__ = "0.1.0"
