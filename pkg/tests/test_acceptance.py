"""One test per acceptance criterion, at the stated tolerances and time budgets."""
import math
import time

import mpmath
import pytest

from unimodal_rank import asymptotics as asy
from unimodal_rank import verify
from unimodal_rank.genfun import Route


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


def assert_passed(rep):
    assert rep.passed, rep.witnesses


@pytest.mark.criterion(1, "u(m,n) for m <= 4, n <= 20 by four routes, exact, < 10 s")
def test_table1_four_routes():
    rep, secs = timed(verify.check_table1, (Route.BIVARIATE, Route.PER_M, Route.THETA, Route.ORACLE))
    assert_passed(rep)
    assert secs < 10


@pytest.mark.criterion(2, "log-concavity: strict 7 <= n <= 500, weak n <= 6, < 2 min")
def test_log_concavity():
    rep, secs = timed(verify.check_log_concavity, 500)
    assert_passed(rep)
    assert "equality at m=1, n=6: 4 = 4" in rep.info
    assert rep.metrics["strict_pairs"] > 10000
    assert secs < 120


@pytest.mark.criterion(3, "identity suite exact to n = 500")
def test_identities():
    rep = verify.check_identities(500, m_tail_max=30)
    assert_passed(rep)
    ids = {s.check_id for s in rep.subreports}
    assert ids == {
        "ospt_equals_u0", "ospt_nonnegative", "s_from_p_and_crank_zero", "s_zero", "ospt_bound",
        "refined_bound", "crank_zero_positive", "column_start", "symmetry",
        "psi_specialization", "total_count",
    }


@pytest.mark.criterion(4, "series agree with enumeration (unimodal 20, partitions 25, pairs 30)")
def test_bruteforce():
    assert_passed(verify.check_bruteforce(20, 25, 30))


@pytest.mark.criterion(5, "u_2k(n+1) >= u_2k(n) for k <= 3, n <= 500")
def test_moment_monotonicity():
    assert_passed(verify.check_moments(500, 3))


@pytest.mark.criterion(6, "u(m,n) asymptotics at 250/1000/4000 within 15%, improving, order 1 beats order 0")
def test_asymptotic_convergence():
    rep, secs = timed(verify.check_asymptotics, (250, 1000, 4000), 3, 0.15)
    assert_passed(rep)
    for q in ("u0", "diff0", "logconc1"):
        assert abs(rep.metrics[f"{q}_n4000"] - 1) < abs(rep.metrics[f"{q}_n1000"] - 1)
        assert abs(rep.metrics[f"{q}_n4000"] - 1) <= 0.15
    assert secs < 15 * 60


@pytest.mark.criterion(7, "normalized moments within 10% at n = 4000, improving from 1000")
def test_moment_asymptotics():
    rep = verify.check_moment_asymptotics((1000, 4000), (1, 2), (1, 3), 0.10)
    assert_passed(rep)


@pytest.mark.criterion(8, "Kolmogorov distance strictly decreasing, d_4000 <= 0.05")
def test_distribution():
    rep = verify.check_distribution((250, 1000, 4000), 0.05)
    assert_passed(rep)
    d = [rep.metrics[f"kolmogorov_n{n}"] for n in (250, 1000, 4000)]
    assert d[0] > d[1] > d[2] and d[2] <= 0.05


@pytest.mark.criterion(9, "small-t expansions: V_m remainder, moment generating functions, eta ratio")
def test_analytic():
    rep = verify.check_analytic()
    assert_passed(rep)
    assert [s.check_id for s in rep.subreports] == ["vm_expansion", "moment_genfun", "eta_transformation"]


BESSEL_POINTS = [
    (nu, x)
    for nu in (-1.5, -2.5)
    for x in (0.05, 0.9, 2.0, 6.0, 25.0, 40.0, 157.0, 900.0, 5000.0, 1e4)
]
NORMAL_POINTS = [-8.0, -4.2, -2.0, -1.0, -0.25, 0.0, 0.7, 1.959964, 3.3, 6.0]


@pytest.mark.criterion(10, "bessel_i rel. err <= 1e-10 (20 points), normal_cdf abs. err <= 1e-12 (10 points)")
def test_special_functions():
    assert len(BESSEL_POINTS) == 20 and len(NORMAL_POINTS) == 10
    mpmath.mp.dps = 40
    for nu, x in BESSEL_POINTS:
        ref = mpmath.besseli(nu, x) * mpmath.exp(-x)
        got = asy.bessel_i(nu, x, scaled=True)
        assert abs(got - ref) / abs(ref) <= 1e-10, (nu, x)
    for x in NORMAL_POINTS:
        ref = mpmath.quad(lambda u: mpmath.exp(-u * u / 2), [-mpmath.inf, 0, x]) / mpmath.sqrt(2 * mpmath.pi)
        assert abs(asy.normal_cdf(x) - ref) <= 1e-12, x
    mpmath.mp.dps = 15
    assert_passed(verify.check_special_functions())
