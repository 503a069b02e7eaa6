import math

import mpmath
import pytest

from unimodal_rank import asymptotics as asy
from unimodal_rank import genfun
from unimodal_rank.genfun import Route
from unimodal_rank.series import TruncSeries, partition_series


def test_constants():
    assert asy.BETA_1 == pytest.approx(-0.0291769, abs=1e-7)
    assert math.sqrt(3) / (math.sqrt(2) * math.pi) == pytest.approx(0.38985, abs=1e-5)
    assert asy.NU == pytest.approx(-0.19799, abs=1e-5)


def test_hardy_ramanujan():
    assert asy.hr_partition_main(1) == pytest.approx(1.8767, abs=1e-3)
    P = partition_series(2000)
    e500 = abs(asy.ratio_exp(P[500], asy.hr_partition_main(500, log=True)) - 1)
    e2000 = abs(asy.ratio_exp(P[2000], asy.hr_partition_main(2000, log=True)) - 1)
    assert e500 < 0.06
    assert e2000 < e500
    with pytest.raises(ValueError):
        asy.hr_partition_main(0)


def test_total_order_one_beats_order_zero():
    exact = genfun.unimodal_total_series(1000)[1000]
    e0 = abs(asy.u_total_asymptotic(1000, 0).ratio(exact) - 1)
    e1 = abs(asy.u_total_asymptotic(1000, 1).ratio(exact) - 1)
    assert e1 < e0
    est = asy.u_total_asymptotic(1000, 1)
    assert est.terms[0] / est.terms[0] == 1 and est.order == 1
    with pytest.raises(ValueError):
        asy.u_total_asymptotic(100, 2)


def test_u_mn_formula_shape():
    assert asy.u_mn_asymptotic(0, 500, 0).log_value == asy.u_mn_asymptotic(7, 500, 0).log_value
    vals = [asy.u_mn_asymptotic(m, 500, 1).log_value for m in range(6)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    est = asy.u_mn_asymptotic(2, 400, 1)
    assert math.fsum(est.absolute_terms) == pytest.approx(est.value, rel=1e-12)


def test_structural_definitional():
    n, m = 300.0, 2
    diff, _ = asy.structural_asymptotics(m, n)
    direct = math.pi * (2 * m + 1) / (96 * math.sqrt(2) * n**1.5) * math.exp(math.pi * math.sqrt(2 * n / 3))
    assert diff == pytest.approx(direct, rel=1e-12)


def test_bessel_two_term_form_tracks_expansion():
    for n in (250, 1000, 4000):
        r = math.exp(asy.u_mn_bessel(1, n, log=True) - asy.u_mn_asymptotic(1, n, 1).log_value)
        assert abs(r - 1) < 3 / n


def test_moment_helpers():
    assert [asy.odd_double_factorial(k) for k in range(4)] == [1, 1, 3, 15]
    assert asy.moment_asymptotic(0, 700) == pytest.approx(asy.u_total_asymptotic(700, 0).value)
    assert asy.normal_abs_moment(2) == pytest.approx(1.0)
    assert asy.normal_abs_moment(1) == pytest.approx(math.sqrt(2 / math.pi))
    # the absolute r=2 form uses the order-1 u(n), the signed one the main term
    ratio = asy.abs_moment_asymptotic(2, 700) / asy.moment_asymptotic(1, 700)
    assert ratio == pytest.approx(1 + asy.BETA_1 / math.sqrt(700), rel=1e-12)
    T = genfun.unimodal_tables(60, Route.THETA)
    assert genfun.unimodal_moments(T, 2, signed=False) == genfun.unimodal_moments(T, 2)


def test_estimators_finite_in_log_space():
    prev = None
    for n in [1, 10, 1e3, 1e4, 1e5, 5e5, 1e6]:
        logs = [
            asy.u_total_asymptotic(n, 1).log_value,
            asy.u_mn_asymptotic(1, n, 1).log_value,
            asy.hr_partition_main(n, log=True),
            *asy.structural_asymptotics(1, n, log=True),
            asy.moment_asymptotic(2, n, log=True),
            asy.abs_moment_asymptotic(3, n, log=True),
            asy.u_mn_bessel(1, n, log=True),
        ]
        assert all(math.isfinite(v) for v in logs)
        if prev is not None:
            assert all(b > a for a, b in zip(prev, logs))
        prev = logs
    with pytest.raises(OverflowError):
        asy.u_total_asymptotic(1e6, 1).value


def test_order_one_estimate_can_go_negative_at_small_n():
    est = asy.u_mn_asymptotic(3, 1, 1)
    assert est.value < 0
    with pytest.raises(ValueError):
        est.log_value
    assert asy.u_mn_asymptotic(3, 60, 1).value > 0


@pytest.mark.parametrize("nu", [-1.5, -2.5, 0.5, -0.5, 1.5, 2.5, 0.3, 2.0])
@pytest.mark.parametrize("x", [1e-3, 0.5, 1.0, 2.0, 7.5, 29.0, 31.0, 120.0, 1e4])
def test_bessel_against_mpmath(nu, x):
    ref = mpmath.besseli(nu, x) * mpmath.exp(-x)
    assert asy.bessel_i(nu, x, scaled=True) == pytest.approx(float(ref), rel=1e-10)


def test_bessel_limits():
    for k in (-1.5, -2.5):
        x = 1e4
        assert asy.bessel_i(k, x, scaled=True) * math.sqrt(2 * math.pi * x) == pytest.approx(1, abs=1e-3)
        x = 100.0
        val = asy.bessel_i(k, x, scaled=True) * math.sqrt(2 * math.pi * x)
        assert val == pytest.approx(1 - (4 * k * k - 1) / (8 * x), abs=1e-3)
    assert asy.bessel_i(-1.5, 3.0) == pytest.approx(float(mpmath.besseli(-1.5, 3.0)), rel=1e-12)
    with pytest.raises(ValueError):
        asy.bessel_i(1.5, math.inf)
    with pytest.raises(ValueError):
        asy.bessel_i(1.5, -1.0)


def test_normal_cdf():
    assert asy.normal_cdf(0) == 0.5
    for x in (0.3, 1.0, 2.5, 7.0):
        assert asy.normal_cdf(x) + asy.normal_cdf(-x) == pytest.approx(1.0, abs=1e-15)
    assert asy.normal_cdf(1.959964) == pytest.approx(0.975, abs=1e-6)
    assert asy.normal_cdf(-30) > 0


def test_eval_q_series():
    P = partition_series(200)
    val, tail = asy.eval_q_series(P, 1.0, asy.Envelope(c=math.pi * math.sqrt(2 / 3)))
    prod = 1.0
    for k in range(1, 200):
        prod /= 1 - math.exp(-k)
    assert val == pytest.approx(prod, rel=1e-12)
    assert 0 < tail < 1e-30
    assert asy.eval_q_series(TruncSeries.one(0), 0.7) == (1.0, 0.0)
    V0 = genfun.v_m_theta_series(0, 1500)
    val, tail = asy.eval_q_series(V0, 0.05, asy.Envelope(d=1))
    assert abs(val - (0.25 + 0.05 / 8)) < 0.05**2
    with pytest.raises(asy.EnvelopeViolation):
        asy.eval_q_series(P, 1.0, asy.Envelope())
    with pytest.raises(ValueError):
        asy.eval_q_series(P, 0.0)


def test_eval_q_series_reports_infinite_tail_when_envelope_still_grows():
    P = partition_series(20)
    _, tail = asy.eval_q_series(P, 0.01, asy.Envelope(c=math.pi * math.sqrt(2 / 3)))
    assert tail == math.inf
