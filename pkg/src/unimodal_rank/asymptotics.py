"""Floating-point asymptotic formulas and the special functions they need.

Everything that grows like exp(pi*sqrt(2n/3)) is assembled in log space.
``log=True`` variants stay finite for any n in reach, while the plain
variants raise OverflowError once a double can no longer hold the value
(around n = 76000 for the single-exponential terms).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .series import TruncSeries

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
SQRT6 = math.sqrt(6.0)

#: first correction in the expansion of u(n)
BETA_1 = -(2 * math.pi**2 + 9) / (2**6 * math.sqrt(24.0) * math.pi)
#: m-independent part of the first correction in the expansion of u(m, n)
NU = SQRT3 / (SQRT2 * math.pi) - 11 * math.pi / (24 * SQRT6)


def growth_exponent(n: float) -> float:
    """pi * sqrt(2n/3)."""
    return math.pi * math.sqrt(2.0 * n / 3.0)


def _check_n(n):
    if not n >= 1 or math.isinf(n):
        raise ValueError("n must be a finite number >= 1")


def _out(logv: float, log: bool) -> float:
    return logv if log else math.exp(logv)


@dataclass(frozen=True)
class AsymEstimate:
    """An asymptotic value  exp(log_main) * sum(terms).

    ``terms`` are the summands relative to the main term, so ``terms[0]`` is
    1.0 and ``order == len(terms) - 1``.
    """

    log_main: float
    terms: tuple[float, ...]

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    @property
    def log_value(self) -> float:
        total = math.fsum(self.terms)
        if total <= 0:
            # happens for order 1 when the correction exceeds 1 (large m, small n)
            raise ValueError(f"estimate is not positive (relative sum {total})")
        return self.log_main + math.log(total)

    @property
    def value(self) -> float:
        total = math.fsum(self.terms)
        if total <= 0:
            return math.exp(self.log_main) * total
        return math.exp(self.log_value)

    @property
    def absolute_terms(self) -> tuple[float, ...]:
        scale = math.exp(self.log_main)
        return tuple(scale * t for t in self.terms)

    def ratio(self, exact: int | float) -> float:
        """exact / estimate, computed without overflowing."""
        return ratio_exp(exact, self.log_value)


def ratio_exp(exact: int | float, log_estimate: float) -> float:
    """exact / exp(log_estimate) for a positive exact value of any size."""
    if exact <= 0:
        raise ValueError("ratio needs a positive exact value")
    return math.exp(math.log(exact) - log_estimate)


def hr_partition_main(n: float, log: bool = False) -> float:
    """Hardy-Ramanujan main term exp(pi sqrt(2n/3)) / (4 sqrt(3) n) for p(n)."""
    _check_n(n)
    return _out(growth_exponent(n) - math.log(4 * SQRT3 * n), log)


def u_total_asymptotic(n: float, order: int = 1) -> AsymEstimate:
    """u(n) ~ exp(pi sqrt(2n/3)) / (8 6^{1/4} n^{3/4}) * (1 + beta_1 / sqrt n)."""
    _check_n(n)
    if order not in (0, 1):
        raise ValueError("only orders 0 and 1 are known")
    logm = growth_exponent(n) - math.log(8 * 6**0.25) - 0.75 * math.log(n)
    terms = (1.0,) if order == 0 else (1.0, BETA_1 / math.sqrt(n))
    return AsymEstimate(logm, terms)


def u_mn_asymptotic(m: int, n: float, order: int = 1) -> AsymEstimate:
    """u(m, n) ~ exp(pi sqrt(2n/3)) / (16 sqrt(3) n) * (1 - (pi m^2 / (2 sqrt 6) + nu) / sqrt n)."""
    _check_n(n)
    if order not in (0, 1):
        raise ValueError("only orders 0 and 1 are known")
    logm = growth_exponent(n) - math.log(16 * SQRT3 * n)
    if order == 0:
        return AsymEstimate(logm, (1.0,))
    corr = -(math.pi * m * m / (2 * SQRT6) + NU) / math.sqrt(n)
    return AsymEstimate(logm, (1.0, corr))


def u_mn_bessel(m: int, n: float, log: bool = False) -> float:
    """Two-term Bessel-function approximation of u(m, n) before expanding I_nu.

    pi/(8 2^{1/4} 3^{3/4} n^{3/4}) I_{-3/2}(x) - pi^2 (m^2/4 - 11/48)/(12 2^{3/4} 3^{1/4} n^{5/4}) I_{-5/2}(x)
    with x = pi sqrt(2n/3).
    """
    _check_n(n)
    x = growth_exponent(n)
    a = math.pi / (8 * 2**0.25 * 3**0.75 * n**0.75) * bessel_i(-1.5, x, scaled=True)
    b = (
        math.pi**2 * (m * m / 4 - 11 / 48) / (12 * 2**0.75 * 3**0.25 * n**1.25)
    ) * bessel_i(-2.5, x, scaled=True)
    return _out(x + math.log(a - b), log)


def structural_asymptotics(m: int, n: float, log: bool = False) -> tuple[float, float]:
    """Main terms of u(m,n) - u(m+1,n) and of u(m,n)^2 - u(m-1,n) u(m+1,n)."""
    _check_n(n)
    if m < 0:
        raise ValueError("m must be non-negative")
    g = growth_exponent(n)
    log_diff = g + math.log(math.pi * (2 * m + 1) / (96 * SQRT2)) - 1.5 * math.log(n)
    log_lc = 2 * g + math.log(math.pi / (768 * SQRT6)) - 2.5 * math.log(n)
    return _out(log_diff, log), _out(log_lc, log)


def odd_double_factorial(k: int) -> int:
    """(2k - 1)!! with (-1)!! = 1."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return math.prod(range(1, 2 * k, 2))


def normal_abs_moment(r: float) -> float:
    """E|Z|^r for a standard normal Z."""
    return 2 ** (r / 2) * math.gamma((r + 1) / 2) / math.sqrt(math.pi)


def moment_asymptotic(k: int, n: float, log: bool = False) -> float:
    """Main term of u_{2k}(n): the u(n) main term times (2k-1)!! (6n/pi^2)^{k/2}."""
    _check_n(n)
    logv = (
        u_total_asymptotic(n, 0).log_main
        + math.log(odd_double_factorial(k))
        + (k / 2) * math.log(6 * n / math.pi**2)
    )
    return _out(logv, log)


def abs_moment_asymptotic(r: float, n: float, log: bool = False) -> float:
    """u_r^+(n) ~ u(n) (6n/pi^2)^{r/4} E|Z|^r, with u(n) from the order-1 formula."""
    _check_n(n)
    if r < 0:
        raise ValueError("r must be non-negative")
    logv = (
        u_total_asymptotic(n, 1).log_value
        + (r / 4) * math.log(6 * n / math.pi**2)
        + math.log(normal_abs_moment(r))
    )
    return _out(logv, log)


# --- special functions ------------------------------------------------------


def _half_integer_scaled(twice_nu: int, x: float) -> float:
    # exp(-x) I_nu(x) for nu in {+-1/2, +-3/2, +-5/2} from the cosh/sinh closed forms
    e2 = math.exp(-2 * x)
    ch = (1 + e2) / 2  # exp(-x) cosh x
    sh = -math.expm1(-2 * x) / 2  # exp(-x) sinh x
    pref = math.sqrt(2 / (math.pi * x))
    forms = {
        1: sh,
        -1: ch,
        3: ch - sh / x,
        -3: sh - ch / x,
        5: (1 + 3 / x**2) * sh - 3 * ch / x,
        -5: (1 + 3 / x**2) * ch - 3 * sh / x,
    }
    return pref * forms[twice_nu]


def _power_series_scaled(nu: float, x: float) -> float:
    # exp(-x) sum_k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)); terms with a pole in Gamma vanish
    h = x / 2
    total = 0.0
    k = 0
    log_h = math.log(h)
    while True:
        a = k + nu + 1
        if a <= 0 and a == int(a):
            k += 1
            continue
        lg, sign = math.lgamma(a), (math.copysign(1.0, math.gamma(a)) if a < 0 else 1.0)
        term = sign * math.exp((2 * k + nu) * log_h - math.lgamma(k + 1) - lg - x)
        total += term
        if k > x and abs(term) < 1e-17 * abs(total):
            break
        k += 1
    return total


def _asymptotic_scaled(nu: float, x: float) -> float:
    # exp(-x) I_nu(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(nu) / x^k, cut at the smallest term
    mu = 4 * nu * nu
    total = 1.0
    term = 1.0
    prev = math.inf
    for k in range(1, 200):
        term *= -(mu - (2 * k - 1) ** 2) / (k * 8 * x)
        if abs(term) >= prev or term == 0.0:
            break
        total += term
        prev = abs(term)
        if abs(term) < 1e-17 * abs(total):
            break
    return total / math.sqrt(2 * math.pi * x)


def bessel_i(nu: float, x: float, scaled: bool = False) -> float:
    """Modified Bessel function of the first kind I_nu(x) for x > 0.

    ``scaled=True`` returns exp(-x) I_nu(x), which stays finite for large x.
    Half-integer orders up to 5/2 use the elementary closed forms (with the
    power series near 0, where those forms cancel); other orders use the
    power series for x <= 30 and the large-x expansion beyond.
    """
    if not (math.isfinite(nu) and math.isfinite(x)):
        raise ValueError("bessel_i needs finite arguments")
    if x <= 0:
        raise ValueError("bessel_i is implemented for x > 0")
    twice = 2 * nu
    if twice == int(twice) and int(twice) % 2 != 0 and abs(int(twice)) <= 5 and x >= 2.0:
        val = _half_integer_scaled(int(twice), x)
    elif x <= 30:
        val = _power_series_scaled(nu, x)
    else:
        val = _asymptotic_scaled(nu, x)
    if scaled:
        return val
    if val == 0.0:
        return 0.0
    return math.copysign(math.exp(math.log(abs(val)) + x), val)


def normal_cdf(x: float) -> float:
    """Standard normal distribution function via erfc (accurate in both tails)."""
    if math.isnan(x):
        raise ValueError("normal_cdf of NaN")
    return 0.5 * math.erfc(-x / SQRT2)


# --- numerical evaluation of q-series on q = exp(-t) ------------------------


@dataclass(frozen=True)
class Envelope:
    """Declared coefficient bound |a_n| <= A (n+1)^d exp(c sqrt n), assumed for all n."""

    A: float = 1.0
    c: float = 0.0
    d: float = 0.0

    def log_bound(self, n: int) -> float:
        return math.log(self.A) + self.d * math.log(n + 1) + self.c * math.sqrt(n)


class EnvelopeViolation(ValueError):
    pass


def eval_q_series(
    a: TruncSeries, t: float, envelope: Envelope | None = None
) -> tuple[float, float]:
    """Evaluate sum_n a_n exp(-n t) and bound the omitted tail.

    With ``envelope=None`` the series is taken as exact (a polynomial), so the
    tail is 0.  Otherwise the known coefficients are checked against the
    envelope and the tail sum over n > N is bounded by a geometric series;
    the bound is ``inf`` when the envelope is still growing at N.
    """
    if not t > 0 or not math.isfinite(t):
        raise ValueError("t must be positive and finite")
    terms = []
    for n, c in enumerate(a.coeffs):
        if not c:
            continue
        logc = math.log(abs(c))
        if envelope is not None and logc > envelope.log_bound(n) + 1e-12:
            raise EnvelopeViolation(f"|a_{n}| exceeds the declared envelope")
        terms.append(math.copysign(math.exp(logc - n * t), c))
    value = math.fsum(terms)
    if envelope is None:
        return value, 0.0
    N = a.trunc_order
    log_ratio = envelope.d * math.log((N + 3) / (N + 2)) + envelope.c / (2 * math.sqrt(N + 1)) - t
    if log_ratio >= 0:
        return value, math.inf
    log_first = envelope.log_bound(N + 1) - (N + 1) * t
    tail = math.exp(log_first) / -math.expm1(log_ratio)
    return value, tail
