"""Acceptance suite.

Each test prints a single PASS/FAIL line for its criterion (visible with
pytest -s) and asserts the same condition, so the suite gates the build.
"""

import sys

from gmpy2 import mpq

from hyperg_gauss.cli import EXIT_OK, inequality_grid_tasks, main, run_task
from hyperg_gauss.exactnum import CertifiedReal, Status, to_certified
from hyperg_gauss.gauss import Phi, sqrt_two_pi
from hyperg_gauss.kolmo import (
    DEFAULT_TAU_GRID,
    binomial_sigma_d,
    solve_exception_constant,
    verify_section4_monotonicity,
    verify_theorem_main,
)
from hyperg_gauss.bernconv import (
    concentration_lower_bound,
    factorize,
    levy_equality_law,
    verify_bc_sandwich,
)
from hyperg_gauss.laws import (
    Bernoulli,
    Dirac,
    HypergeometricIdentity,
    HypergeometricParams,
    cumulants,
    hypergeometric,
    identify,
    symmetric_population,
)


def report(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} ({detail})", flush=True)
    sys.stdout.flush()
    assert ok, f"criterion {num} failed: {detail}"


def canonical_cases(N_max: int):
    """(n, r, b) with r + b <= N_max, nondegenerate, deduplicated by the
    n <-> r law identity."""
    for N in range(2, N_max + 1):
        for r in range(1, N):
            b = N - r
            for n in range(1, min(r, N - 1) + 1):
                yield n, r, b


def test_criterion_1_theorem_exhaustive():
    bad = []
    checked = 0
    for N in range(2, 201, 2):
        for n in range(1, N):
            pop = symmetric_population(N, n)
            for spec in DEFAULT_TAU_GRID:
                # 64-bit enclosures have width ~ 1e-18, far below the
                # 1e-12 agreement requirement, and halve the erfc cost
                rep = verify_theorem_main(pop, spec, 64, pointwise=False)
                checked += 1
                expect_exception = N == 2 and spec.label == "sigma0"
                widths_ok = (float(rep.d_closed.width()) < 1e-12
                             and float(rep.d_brute.width()) < 1e-12)
                if not (rep.all_pass and widths_ok
                        and rep.exception_expected == expect_exception):
                    bad.append((N, n, spec.label))
    report(1, not bad, f"{checked} symmetric cases, N <= 200, "
                       f"violations only at the documented N=2 exception"
           if not bad else f"failures at {bad[:5]}")


def test_criterion_2_binomial_anchor():
    prev = None
    monotone = True
    widths_ok = True
    values = {}
    for n in range(1, 4002, 2):
        sd = binomial_sigma_d(n)
        widths_ok = widths_ok and float(sd.width()) < 1e-10
        if prev is not None and not prev.hi < sd.lo:
            monotone = False
        prev = sd
        if n in (1, 4001):
            values[n] = sd
    limit = 1 / (CertifiedReal.pi() * 8).sqrt()
    gap = limit - values[4001]
    ok = (monotone and widths_ok
          and abs(values[1].mid() - 0.170672) < 1e-6
          and float(gap.hi) < 1e-3 and float(gap.lo) > 0)
    report(2, ok, f"sigma*d strictly increasing over 2001 odd n, "
                  f"sigma*d(1)={values[1].mid():.6f}, gap at 4001={float(gap.hi):.2e}")


def test_criterion_3_exception_constant():
    """The threshold ratio c solves sqrt(2 pi)(Phi(1/c) - 1/2) = 1.

    Published decimal expansions of this constant (0.783923..., i.e.
    tau_0 = 0.391961...) miss the true root by 5e-5: evaluating the
    defining equation at 2*0.391961 gives 1.0000396, not 1.  The checks
    here pin the equation-defined value 0.78397693..., certified by the
    sign changes of the residual across the enclosure, and cross-check
    the companion value rho(sigma_0) = 1.05616881... which the same
    sources report consistently with our arithmetic.
    """
    c = solve_exception_constant()
    tau0 = c.half()
    residual_lo = sqrt_two_pi() * (Phi(1 / to_certified(mpq(c.lo))) - mpq(1, 2)) - 1
    residual_hi = sqrt_two_pi() * (Phi(1 / to_certified(mpq(c.hi))) - mpq(1, 2)) - 1
    rho_sigma0 = sqrt_two_pi() * (Phi(to_certified(2).sqrt()) - mpq(1, 2))
    ok = (abs(c.mid() - 0.78397693) < 1e-6 and float(c.width()) < 1e-9
          and abs(tau0.mid() - 0.39198847) < 1e-6
          and residual_lo.lo > 0 and residual_hi.hi < 0
          and abs(rho_sigma0.mid() - 1.05616881) < 1e-6)
    report(3, ok, f"c={c.mid():.7f}, c/2={tau0.mid():.7f}, "
                  f"rho(sigma0)={rho_sigma0.mid():.7f}")


def test_criterion_4_inequality_grids():
    rows = []
    for task in inequality_grid_tasks(96):
        rows.extend(run_task(task))
    failures = [r for r in rows if r["status"] != "PASS"]
    nonpositive = [r for r in rows
                   if r["status"] == "PASS" and r["margin"]
                   and float(r["margin"]) < 0
                   # the tail estimate is an exact equality at x = 1
                   and not (r["tau"] == "central-binomial:1" and r["check"] == "tail")]
    ok = not failures and not nonpositive
    report(4, ok, f"{len(rows)} checks across 6 inequality families, "
                  f"all certified with positive margin"
           if ok else f"{len(failures)} failures, {len(nonpositive)} zero margins")


def test_criterion_5_section4_monotonicity():
    bad = []
    checked = 0
    for N in range(2, 101, 2):
        for n in range(1, N):
            pop = symmetric_population(N, n)
            for spec in DEFAULT_TAU_GRID:
                checks = verify_section4_monotonicity(pop, spec)
                checked += len(checks)
                for name, v in checks:
                    if v.status is not Status.PASS:
                        bad.append((N, n, spec.label, name))
    report(5, not bad, f"{checked} monotonicity/tail checks for N <= 100"
           if not bad else f"failures at {bad[:5]}")


def _distance_lower_bound_holds(law, prec: int = 64) -> bool:
    """Certify 1/(2 sqrt(1 + 12 sigma^2)) <= d via a witness gap.

    The sup distance dominates the gap at any single point, so checking
    the two candidates at the central jump usually settles the bound
    without a full lattice scan; the full scan is the fallback.
    """
    from hyperg_gauss.bernconv import matched_normal
    from hyperg_gauss.gauss import normal_cdf

    mu, var, _ = law.moments()
    bound = 1 / (to_certified(1 + 12 * var, prec).sqrt() * 2)
    model = matched_normal(law, prec)
    s = int(mu)  # floor of the mean
    for k in (s, s + 1):
        g = normal_cdf(model, mpq(k), prec)
        for f in (law.cdf(k), law.cdf(k - 1)):
            gap = (to_certified(f, prec) - g).abs()
            if gap.lo > bound.hi:
                return True
    lower, _ = verify_bc_sandwich(law, prec)
    return lower.status is Status.PASS


def test_criterion_6_bernoulli_factorization():
    bad = []
    count = 0
    for n, r, b in canonical_cases(60):
        params = HypergeometricParams(n, r, b)
        count += 1
        try:
            fact = factorize(params, 64)
        except Exception as exc:  # noqa: BLE001 - any failure is a criterion failure
            bad.append((n, r, b, str(exc)))
            continue
        c = cumulants(params)
        mean_gap = (fact.mean_enclosure(64) - c.mu).abs()
        var_gap = (fact.variance_enclosure(64) - c.sigma_sq).abs()
        if not (float(fact.reconstruction_error.hi) <= 1e-10
                and float(mean_gap.hi) < 1e-9 and float(var_gap.hi) < 1e-9
                and _distance_lower_bound_holds(hypergeometric(params))):
            bad.append((n, r, b, "bounds"))
    report(6, not bad, f"{count} factorizations with r+b <= 60 certified"
           if not bad else f"failures at {bad[:5]}")


def test_criterion_7_concentration():
    bad = []
    count = 0
    for n, r, b in canonical_cases(60):
        law = hypergeometric(HypergeometricParams(n, r, b))
        for h in (mpq(1, 2), mpq(1), mpq(2)):
            rep = concentration_lower_bound(law, h, 64)
            count += 1
            if rep.verdict.status is not Status.PASS:
                bad.append((n, r, b, float(h)))
    for p in range(1, 7):
        for lam in (mpq(0), mpq(1, 4), mpq(1, 2), mpq(3, 4), mpq(1)):
            _, v_eq, v_c = levy_equality_law(p, lam, 1)
            count += 1
            if not (v_eq.status is Status.PASS and v_c.status is Status.PASS):
                bad.append(("levy", p, str(lam)))
    from hyperg_gauss.laws import binomial
    rep = concentration_lower_bound(binomial(1, mpq(1, 2)), 1)
    count += 1
    if not (rep.lhs == mpq(1, 2) and rep.rhs.contains(mpq(1, 2))
            and float(rep.verdict.margin.lo) == 0.0 and rep.verdict.passed):
        bad.append(("bernoulli-equality",))
    report(7, not bad, f"{count} concentration checks incl. exact Levy equalities"
           if not bad else f"failures at {bad[:5]}")


def test_criterion_8_identifiability_roundtrip():
    bad = []
    count = 0
    for N in range(0, 41):
        for r in range(0, N + 1):
            b = N - r
            for n in range(0, N + 1):
                law = hypergeometric(HypergeometricParams(n, r, b))
                got = identify(law)
                count += 1
                if len(law.masses) == 1:
                    ok = got == Dirac(law.support_min)
                elif law.support_min == 0 and len(law.masses) == 2:
                    ok = got == Bernoulli(law.pmf(1))
                else:
                    ok = got == HypergeometricIdentity(min(n, r), max(n, r), N)
                if not ok:
                    bad.append((n, r, b, got))
    report(8, not bad, f"{count} laws with r+b <= 40 identified correctly"
           if not bad else f"failures at {bad[:5]}")


def test_criterion_9_determinism(tmp_path):
    argv = ["verify", "--N-max", "10", "--suites", "theorem,remarks",
            "--include-binomial-n-max", "2"]
    out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
    code_a = main(argv + ["--output", str(out_a)])
    code_b = main(argv + ["--output", str(out_b)])
    ok = (code_a == code_b == EXIT_OK
          and out_a.read_bytes() == out_b.read_bytes())
    report(9, ok, "two identical sweeps produced byte-identical reports")
