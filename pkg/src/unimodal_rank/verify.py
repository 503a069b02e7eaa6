"""Verification checks over exact tables, producing machine-readable reports.

Each ``check_*`` function returns a :class:`CheckReport`.  Reports are
deterministic: no timings or timestamps go into them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import asymptotics as asy
from . import genfun, oracles
from .genfun import Route, Stat, UnimodalTableSet
from .oracles import StatTable
from .series import partition_series

MAX_WITNESSES = 20

#: u(m, n) for m = 0..4 and n = 1..20, blanks as 0
TABLE1 = {
    0: [1, 1, 1, 2, 2, 4, 5, 7, 10, 13, 17, 24, 31, 40, 53, 69, 88, 113, 144, 183],
    1: [0, 0, 1, 1, 2, 2, 4, 5, 7, 10, 14, 18, 25, 33, 43, 56, 73, 94, 121, 153],
    2: [0, 0, 0, 0, 0, 1, 1, 2, 3, 4, 6, 9, 12, 16, 23, 30, 40, 53, 69, 90],
    3: [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 2, 3, 5, 6, 10, 13, 19, 25, 34],
    4: [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 2, 3, 5, 7],
}


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


def _jsonable(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return v if math.isfinite(v) else str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass
class CheckReport:
    check_id: str
    n_range: tuple[int, int]
    params: dict = field(default_factory=dict)
    status: Status = Status.PASS
    witnesses: list[dict] = field(default_factory=list)
    metrics: dict[str, float] = field(default_factory=dict)
    info: list[str] = field(default_factory=list)
    subreports: list["CheckReport"] = field(default_factory=list)
    failures: int = 0

    def fail(self, inputs, expected, actual):
        self.failures += 1
        self.status = Status.FAIL
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append({"inputs": inputs, "expected": expected, "actual": actual})

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_json_obj(self) -> dict:
        obj = {
            "check_id": self.check_id,
            "status": self.status.value,
            "range": list(self.n_range),
            "params": _jsonable(self.params),
            "metrics": _jsonable(self.metrics),
            "witnesses": _jsonable(self.witnesses),
            "failures": self.failures,
        }
        if self.info:
            obj["info"] = list(self.info)
        if self.subreports:
            obj["subreports"] = [s.to_json_obj() for s in self.subreports]
        return obj


def combine(check_id: str, n_range, subs: Sequence[CheckReport], params=None) -> CheckReport:
    rep = CheckReport(check_id, tuple(n_range), dict(params or {}))
    rep.subreports = list(subs)
    for s in subs:
        if s.status is Status.FAIL:
            rep.status = Status.FAIL
            rep.failures += s.failures
            for w in s.witnesses:
                if len(rep.witnesses) < MAX_WITNESSES:
                    rep.witnesses.append(dict(w, check=s.check_id))
    return rep


def _ratio(a: int, b: int) -> float:
    # float(a / b) for arbitrarily large ints
    return float(Fraction(a, b))


# --- Table 1 -----------------------------------------------------------------


def check_table1(routes: Sequence[Route] = (Route.BIVARIATE, Route.PER_M, Route.THETA, Route.ORACLE)):
    rep = CheckReport("table1", (1, 20), {"routes": [Route(r).value for r in routes], "m_max": 4})
    for route in routes:
        T = genfun.unimodal_tables(20, route)
        for m, expected_row in TABLE1.items():
            for n, expected in enumerate(expected_row, start=1):
                for sign in (1, -1):
                    actual = T.u(sign * m, n)
                    if actual != expected:
                        rep.fail({"route": Route(route).value, "m": sign * m, "n": n}, expected, actual)
    rep.metrics["entries_per_route"] = float(sum(len(r) for r in TABLE1.values()))
    return rep


# --- log-concavity ------------------------------------------------------------


def check_log_concavity(N_max: int = 500, tables: UnimodalTableSet | None = None) -> CheckReport:
    """Strict log-concavity in m for 7 <= n <= N_max, weak for n <= 6.

    The strict inequality is checked wherever u(m, n) > 0.  Pairs inside the
    range n >= m(m+1)/2 + 1 whose column has not started yet
    (u(m, n) = u(m+1, n) = 0) are counted as ``degenerate_zero_pairs``; both
    sides of the inequality vanish there.
    """
    T = tables if tables is not None else genfun.unimodal_tables(N_max, Route.THETA)
    rep = CheckReport("log_concavity", (1, N_max))
    strict_checked = weak_checked = degenerate = 0
    min_ratio = math.inf
    for n in range(1, N_max + 1):
        top = genfun.max_rank(n) + 1
        for m in range(0, top + 1):
            a = T.u(m, n)
            lhs, rhs = a * a, T.u(m - 1, n) * T.u(m + 1, n)
            if n <= 6:
                weak_checked += 1
                if lhs < rhs:
                    rep.fail({"m": m, "n": n, "kind": "weak"}, "u(m,n)^2 >= u(m-1,n)u(m+1,n)", [lhs, rhs])
                elif lhs == rhs and a > 0:
                    rep.info.append(f"equality at m={m}, n={n}: {lhs} = {rhs}")
                continue
            if a == 0:
                if m >= 1 and n >= m * (m + 1) // 2 + 1:
                    degenerate += 1
                    if rhs != 0:
                        rep.fail({"m": m, "n": n, "kind": "degenerate"}, 0, rhs)
                continue
            strict_checked += 1
            if not lhs > rhs:
                rep.fail({"m": m, "n": n, "kind": "strict"}, "u(m,n)^2 > u(m-1,n)u(m+1,n)", [lhs, rhs])
            elif rhs > 0:
                min_ratio = min(min_ratio, _ratio(lhs, rhs))
    rep.metrics.update(
        strict_pairs=float(strict_checked),
        weak_pairs=float(weak_checked),
        degenerate_zero_pairs=float(degenerate),
        min_ratio=min_ratio,
    )
    return rep


# --- identities ---------------------------------------------------------------


def _series_check(check_id, lo, hi, pred: Callable[[int], tuple[bool, object, object]]):
    rep = CheckReport(check_id, (lo, hi))
    for n in range(lo, hi + 1):
        ok, expected, actual = pred(n)
        if not ok:
            rep.fail({"n": n}, expected, actual)
    rep.metrics["n_checked"] = float(max(hi - lo + 1, 0))
    return rep


def check_column_start(m_max: int = 30) -> CheckReport:
    """u(m, (m+1)(m+2)/2 + j) = p(j) for 0 <= j <= m + 1."""
    start = lambda m: (m + 1) * (m + 2) // 2
    need = start(m_max) + m_max + 1
    P = partition_series(need)
    rep = CheckReport("column_start", (1, need), {"m_max": m_max})
    for m in range(m_max + 1):
        N = start(m) + m + 1
        U = genfun.u_m_series(m, N, P)
        for n in range(start(m)):
            if U[n] != 0:
                rep.fail({"m": m, "n": n}, 0, U[n])
        for j in range(m + 2):
            if U[start(m) + j] != P[j]:
                rep.fail({"m": m, "j": j}, P[j], U[start(m) + j])
    return rep


def check_identities(N_max: int = 500, m_tail_max: int = 30) -> CheckReport:
    N = N_max
    T = genfun.unimodal_tables(N, Route.THETA)
    P = partition_series(N)
    ospt = genfun.ospt_series(N)
    M0 = genfun.crank_zero_series(N)
    S = genfun.s_series(N)
    psi = genfun.psi_series(N)
    Utot = genfun.unimodal_total_series(N)
    B = genfun.unimodal_tables(N, Route.BIVARIATE)

    subs = [
        _series_check("ospt_equals_u0", 1, N, lambda n: (ospt[n] == T.u(0, n), ospt[n], T.u(0, n))),
        _series_check("ospt_nonnegative", 1, N, lambda n: (ospt[n] >= 0, ">= 0", ospt[n])),
        _series_check(
            "s_from_p_and_crank_zero", 2, N, lambda n: (2 * S[n] + M0[n] == P[n], P[n], 2 * S[n] + M0[n])
        ),
        _series_check("s_zero", 0, 0, lambda n: (S[0] == 1, 1, S[0])),
        _series_check(
            "ospt_bound", 2, N, lambda n: (2 * ospt[n] <= P[n] - M0[n], P[n] - M0[n], 2 * ospt[n])
        ),
        _series_check(
            "refined_bound",
            4,
            N,
            lambda n: (
                T.u(0, n) <= S[n] - (n - 1) // 2 + 1,
                S[n] - (n - 1) // 2 + 1,
                T.u(0, n),
            ),
        ),
        _series_check("crank_zero_positive", 3, N, lambda n: (M0[n] > 0, "> 0", M0[n])),
        check_column_start(m_tail_max),
        _series_check(
            "symmetry",
            1,
            N,
            lambda n: (B.row(n).is_symmetric(), "u(m,n) = u(-m,n)", B.row(n).items()),
        ),
        _series_check(
            "psi_specialization",
            1,
            N,
            lambda n: (psi[n] == genfun.psi_from_ranks(T, n), psi[n], genfun.psi_from_ranks(T, n)),
        ),
        _series_check(
            "total_count", 1, N, lambda n: (T.row(n).total() == Utot[n], Utot[n], T.row(n).total())
        ),
    ]
    return combine("identities", (1, N), subs, {"N_max": N, "m_tail_max": m_tail_max})


# --- brute force ----------------------------------------------------------------


def check_bruteforce(n_unimodal: int = 20, n_partition: int = 25, n_pairs: int = 30) -> CheckReport:
    subs = []
    for route in (Route.BIVARIATE, Route.PER_M, Route.THETA):
        T = genfun.unimodal_tables(n_unimodal, route)
        rep = CheckReport(f"unimodal_{route.value}_vs_enumeration", (1, n_unimodal))
        for n in range(1, n_unimodal + 1):
            brute = oracles.rank_histogram(n)
            series_row = T.row(n)
            if brute.items() != series_row.items():
                rep.fail({"n": n}, brute.items(), series_row.items())
        subs.append(rep)

    R = genfun.partition_stat_bivariate(Stat.RANK, n_partition)
    C = genfun.partition_stat_bivariate(Stat.CRANK, n_partition)
    M0 = genfun.crank_zero_series(n_partition)
    ospt = genfun.ospt_series(n_partition)
    rank_rep = CheckReport("partition_rank_vs_enumeration", (1, n_partition))
    crank_rep = CheckReport("partition_crank_vs_enumeration", (1, n_partition))
    ospt_rep = CheckReport("ospt_vs_moment_difference", (1, n_partition))
    for n in range(1, n_partition + 1):
        rank, crank = oracles.partition_stats(n)
        if StatTable(n, R.row(n)).items() != rank.items():
            rank_rep.fail({"n": n}, rank.items(), StatTable(n, R.row(n)).items())
        if StatTable(n, C.row(n)).items() != crank.items():
            crank_rep.fail({"n": n}, crank.items(), StatTable(n, C.row(n)).items())
        if n >= 2 and M0[n] != crank.get(0):
            crank_rep.fail({"n": n, "series": "crank_zero"}, crank.get(0), M0[n])
        brute_ospt = oracles.ospt_bruteforce(n)
        if brute_ospt != ospt[n]:
            ospt_rep.fail({"n": n}, brute_ospt, ospt[n])
    subs += [rank_rep, crank_rep, ospt_rep]

    S = genfun.s_series(n_pairs)
    pair_rep = CheckReport("s_vs_pair_enumeration", (0, n_pairs))
    for n in range(n_pairs + 1):
        brute = oracles.count_S_pairs(n)
        if brute != S[n]:
            pair_rep.fail({"n": n}, brute, S[n])
    subs.append(pair_rep)
    return combine(
        "bruteforce",
        (0, max(n_unimodal, n_partition, n_pairs)),
        subs,
        {"n_unimodal": n_unimodal, "n_partition": n_partition, "n_pairs": n_pairs},
    )


# --- moments ---------------------------------------------------------------------


def normalized_moment(row: StatTable, r: int, absolute: bool = False) -> float:
    """u_r(n) / (u(n) (6n/pi^2)^{r/4}), or the |m|^r version."""
    n = row.n
    total = row.total()
    mom = sum((abs(m) if absolute else m) ** r * c for m, c in row.counts.items())
    return _ratio(mom, total) / (6 * n / math.pi**2) ** (r / 4)


def check_moments(N_max: int = 500, k_max: int = 3, checkpoints: Sequence[int] = ()) -> CheckReport:
    T = genfun.unimodal_tables(N_max, Route.THETA)
    rep = CheckReport("moment_monotonicity", (0, N_max), {"k_max": k_max, "checkpoints": list(checkpoints)})
    for k in range(k_max + 1):
        mom = genfun.unimodal_moments(T, 2 * k)
        for n in range(N_max):
            if mom[n + 1] < mom[n]:
                rep.fail({"k": k, "n": n}, f">= {mom[n]}", mom[n + 1])
    P = partition_series(max(list(checkpoints) + [1]))
    for n in checkpoints:
        row = T.row(n) if n <= N_max else genfun.unimodal_row(n, P)
        for k in range(1, k_max + 1):
            rep.metrics[f"k{k}_n{n}_ratio_over_limit"] = normalized_moment(row, 2 * k) / asy.odd_double_factorial(k)
        for r in (1, 3):
            rep.metrics[f"abs_r{r}_n{n}_ratio_over_limit"] = normalized_moment(row, r, True) / asy.normal_abs_moment(r)
    return rep


def check_moment_asymptotics(
    checkpoints: Sequence[int] = (1000, 4000),
    k_list: Sequence[int] = (1, 2),
    r_list: Sequence[int] = (1, 3),
    tol: float = 0.10,
) -> CheckReport:
    """Normalized moments near their normal limits at the last checkpoint, improving along the way."""
    rep = CheckReport(
        "moment_asymptotics",
        (min(checkpoints), max(checkpoints)),
        {"checkpoints": list(checkpoints), "k": list(k_list), "r": list(r_list), "tol": tol},
    )
    P = partition_series(max(checkpoints))
    rows = {n: genfun.unimodal_row(n, P) for n in checkpoints}
    series = {}
    for k in k_list:
        series[f"even_k{k}"] = [normalized_moment(rows[n], 2 * k) / asy.odd_double_factorial(k) for n in checkpoints]
    for r in r_list:
        series[f"abs_r{r}"] = [normalized_moment(rows[n], r, True) / asy.normal_abs_moment(r) for n in checkpoints]
    _convergence(rep, series, checkpoints, tol)
    return rep


def _convergence(rep: CheckReport, series: dict, checkpoints, tol):
    # each entry of ``series`` is a list of exact/limit ratios along ``checkpoints``
    for name, ratios in series.items():
        devs = [abs(x - 1) for x in ratios]
        for n, x in zip(checkpoints, ratios):
            rep.metrics[f"{name}_n{n}"] = x
        if devs[-1] > tol:
            rep.fail({"quantity": name, "n": checkpoints[-1]}, f"|ratio - 1| <= {tol}", ratios[-1])
        for i in range(1, len(devs)):
            if not devs[i] < devs[i - 1]:
                rep.fail(
                    {"quantity": name, "n": [checkpoints[i - 1], checkpoints[i]]},
                    "strictly closer to 1",
                    [ratios[i - 1], ratios[i]],
                )


# --- asymptotics of u(m, n) ---------------------------------------------------------


def check_asymptotics(checkpoints: Sequence[int] = (250, 1000, 4000), m_max: int = 3, tol: float = 0.15) -> CheckReport:
    """Main terms for u(0,n), u(0,n)-u(1,n) and u(1,n)^2-u(0,n)u(2,n), plus first corrections.

    Ratios exact/main must be within ``tol`` of 1 at the last checkpoint and
    strictly closer to 1 at each successive checkpoint.  For every m <= m_max
    the order-1 estimate of u(m, n) must beat the order-0 one at every
    checkpoint.
    """
    rep = CheckReport(
        "asymptotics",
        (min(checkpoints), max(checkpoints)),
        {"checkpoints": list(checkpoints), "m_max": m_max, "tol": tol},
    )
    P = partition_series(max(checkpoints))
    rows = {n: genfun.unimodal_row(n, P) for n in checkpoints}
    series = {"u0": [], "diff0": [], "logconc1": []}
    for n in checkpoints:
        r = rows[n]
        u0, u1, u2 = r.get(0), r.get(1), r.get(2)
        log_diff, log_lc = asy.structural_asymptotics(0, n, log=True)
        series["u0"].append(asy.u_mn_asymptotic(0, n, 0).ratio(u0))
        series["diff0"].append(asy.ratio_exp(u0 - u1, log_diff))
        _, log_lc1 = asy.structural_asymptotics(1, n, log=True)
        series["logconc1"].append(asy.ratio_exp(u1 * u1 - u0 * u2, log_lc1))
        for m in range(m_max + 1):
            e0 = abs(asy.u_mn_asymptotic(m, n, 0).ratio(r.get(m)) - 1)
            e1 = abs(asy.u_mn_asymptotic(m, n, 1).ratio(r.get(m)) - 1)
            rep.metrics[f"u{m}_n{n}_relerr_order0"] = e0
            rep.metrics[f"u{m}_n{n}_relerr_order1"] = e1
            if not e1 < e0:
                rep.fail({"m": m, "n": n}, "order 1 closer than order 0", [e0, e1])
        total = r.total()
        rep.metrics[f"utotal_n{n}_relerr_order0"] = abs(asy.u_total_asymptotic(n, 0).ratio(total) - 1)
        rep.metrics[f"utotal_n{n}_relerr_order1"] = abs(asy.u_total_asymptotic(n, 1).ratio(total) - 1)
    _convergence(rep, series, list(checkpoints), tol)
    return rep


# --- distribution ----------------------------------------------------------------------


@dataclass(frozen=True)
class EmpiricalDist:
    """Law of rank / (6n/pi^2)^{1/4} under the uniform measure on sequences of size n."""

    n: int
    scale: float
    atoms: tuple[tuple[int, Fraction], ...]  # (m, probability) sorted by m

    @property
    def support(self) -> list[tuple[float, Fraction]]:
        return [(m / self.scale, p) for m, p in self.atoms]

    def total_mass(self) -> Fraction:
        return sum((p for _, p in self.atoms), Fraction(0))

    def cdf(self, x: float) -> Fraction:
        return sum((p for m, p in self.atoms if m / self.scale <= x), Fraction(0))

    def cdf_steps(self) -> list[tuple[int, float, Fraction, Fraction]]:
        """(m, x_m, F(x_m^-), F(x_m)) for every atom."""
        out = []
        acc = Fraction(0)
        for m, p in self.atoms:
            before = acc
            acc += p
            out.append((m, m / self.scale, before, acc))
        return out


def rank_scale(n: int) -> float:
    return (6 * n / math.pi**2) ** 0.25


def empirical_distribution(n: int, row: StatTable | None = None) -> EmpiricalDist:
    row = genfun.unimodal_row(n) if row is None else row
    total = row.total()
    atoms = tuple((m, Fraction(c, total)) for m, c in row.items())
    return EmpiricalDist(n, rank_scale(n), atoms)


def kolmogorov_distance(n: int, row: StatTable | None = None) -> float:
    """sup_x |F_n(x) - Phi(x)|, attained at a one-sided limit of some atom."""
    dist = empirical_distribution(n, row)
    d = 0.0
    for _, x, before, after in dist.cdf_steps():
        phi = asy.normal_cdf(x)
        d = max(d, abs(float(before) - phi), abs(float(after) - phi))
    return d


def check_distribution(checkpoints: Sequence[int] = (250, 1000, 4000), tol: float = 0.05, eps: float = 0.1) -> CheckReport:
    rep = CheckReport(
        "distribution",
        (min(checkpoints), max(checkpoints)),
        {"checkpoints": list(checkpoints), "tol": tol, "eps": eps},
    )
    P = partition_series(max(checkpoints))
    ds = []
    for n in checkpoints:
        row = genfun.unimodal_row(n, P)
        d = kolmogorov_distance(n, row)
        ds.append(d)
        rep.metrics[f"kolmogorov_n{n}"] = d
        cut = n ** (0.25 + eps)
        outside = sum(c for m, c in row.counts.items() if abs(m) >= cut)
        rep.metrics[f"mass_beyond_n^(1/4+eps)_n{n}"] = _ratio(outside, row.total())
    if ds[-1] > tol:
        rep.fail({"n": checkpoints[-1]}, f"<= {tol}", ds[-1])
    for i in range(1, len(ds)):
        if not ds[i] < ds[i - 1]:
            rep.fail({"n": [checkpoints[i - 1], checkpoints[i]]}, "strictly decreasing", [ds[i - 1], ds[i]])
    return rep


# --- small-t expansions -------------------------------------------------------------


def vm_expansion_check(ms=(0, 1, 2, 3), ts=(0.2, 0.1, 0.05), N: int = 1500) -> CheckReport:
    """V_m(e^{-t}) = 1/4 - (m^2/8 - 1/8) t + O(t^2): the remainder over t^2 stays below its value at the first t."""
    rep = CheckReport("vm_expansion", (0, N), {"m": list(ms), "t": list(ts)})
    env = asy.Envelope(A=1.0, d=1.0)
    for m in ms:
        V = genfun.v_m_theta_series(m, N)
        C = None
        for t in ts:
            val, tail = asy.eval_q_series(V, t, env)
            err = abs(val - (0.25 - (m * m / 8 - 1 / 8) * t))
            rep.metrics[f"m{m}_t{t}_remainder_over_t2"] = err / t**2
            if C is None:
                C = err / t**2
                continue
            if not err + tail <= C * t**2:
                rep.fail({"m": m, "t": t}, f"<= {C * t**2}", err + tail)
    return rep


def moment_genfun_check(ks=(1, 2), ts=(0.20, 0.15, 0.10), N: int = 2500) -> CheckReport:
    """sum_n u_{2k}(n) e^{-nt} against ((2k-1)!!/4) t^{-k} e^{pi^2/(6t)}: ratio moves toward 1."""
    rep = CheckReport("moment_genfun", (0, N), {"k": list(ks), "t": list(ts)})
    c = math.pi * math.sqrt(2 / 3)
    for k in ks:
        series = genfun.moment_series(k, N)
        env = asy.Envelope(A=2.0**k, c=c, d=float(k))
        devs = []
        for t in ts:
            val, tail = asy.eval_q_series(series, t, env)
            target = asy.odd_double_factorial(k) / 4 * t**-k * math.exp(math.pi**2 / (6 * t))
            ratio = val / target
            rep.metrics[f"k{k}_t{t}_ratio"] = ratio
            if not tail < 1e-9 * val:
                rep.fail({"k": k, "t": t}, "negligible tail", tail / val)
            devs.append(abs(ratio - 1))
        for i in range(1, len(devs)):
            if not devs[i] < devs[i - 1]:
                rep.fail({"k": k, "t": [ts[i - 1], ts[i]]}, "ratio closer to 1", [devs[i - 1], devs[i]])
    return rep


def eta_check(ts=(0.3, 0.2, 0.1), N: int = 2500) -> CheckReport:
    """1/(e^{-t}; e^{-t})_oo against sqrt(t/(2 pi)) e^{pi^2/(6t)}: ratio moves toward 1."""
    rep = CheckReport("eta_transformation", (0, N), {"t": list(ts)})
    P = partition_series(N)
    env = asy.Envelope(c=math.pi * math.sqrt(2 / 3))
    devs = []
    for t in ts:
        val, tail = asy.eval_q_series(P, t, env)
        ratio = val / (math.sqrt(t / (2 * math.pi)) * math.exp(math.pi**2 / (6 * t)))
        rep.metrics[f"t{t}_ratio"] = ratio
        if not tail < 1e-9 * val:
            rep.fail({"t": t}, "negligible tail", tail / val)
        devs.append(abs(ratio - 1))
    for i in range(1, len(devs)):
        if not devs[i] < devs[i - 1]:
            rep.fail({"t": [ts[i - 1], ts[i]]}, "ratio closer to 1", [devs[i - 1], devs[i]])
    return rep


def check_analytic() -> CheckReport:
    return combine("analytic", (0, 2500), [vm_expansion_check(), moment_genfun_check(), eta_check()])


# --- special functions ------------------------------------------------------------------


def _bessel_series_reference(nu: float, x: float) -> float:
    # exp(-x) I_nu(x) from the defining series, summed with fsum; independent of the
    # closed forms and of the large-x expansion used by bessel_i
    h = x / 2
    terms = []
    k = 0
    while True:
        a = k + nu + 1
        if a <= 0 and a == int(a):
            k += 1
            continue
        if a < 170:
            term = math.exp((2 * k + nu) * math.log(h) - math.lgamma(k + 1) - x) / math.gamma(a)
        else:
            term = math.exp((2 * k + nu) * math.log(h) - math.lgamma(k + 1) - math.lgamma(a) - x)
        terms.append(term)
        if k > h and abs(term) < 1e-18 * abs(math.fsum(terms)):
            break
        k += 1
    return math.fsum(terms)


def normal_cdf_by_quadrature(x: float, nodes: int = 200) -> float:
    """1/2 + (2 pi)^{-1/2} int_0^x e^{-u^2/2} du by Gauss-Legendre on [0, x]."""
    if x == 0:
        return 0.5
    z, w = np.polynomial.legendre.leggauss(nodes)
    u = 0.5 * x * (z + 1)
    integral = 0.5 * x * float(np.sum(w * np.exp(-u * u / 2)))
    return 0.5 + integral / math.sqrt(2 * math.pi)


def check_special_functions() -> CheckReport:
    rep = CheckReport("special_functions", (0, 0))
    worst_b = 0.0
    for nu in (-1.5, -2.5, 0.5, 1.5):
        for x in (0.1, 0.7, 1.5, 3.0, 8.0, 20.0):
            ref = _bessel_series_reference(nu, x)
            got = asy.bessel_i(nu, x, scaled=True)
            err = abs(got - ref) / abs(ref)
            worst_b = max(worst_b, err)
            if err > 1e-10:
                rep.fail({"nu": nu, "x": x}, ref, got)
    for nu in (-1.5, -2.5):
        for x in (50.0, 200.0, 1000.0, 1e4):
            # large-x expansion against the closed form
            ref = asy._half_integer_scaled(int(2 * nu), x)
            got = asy._asymptotic_scaled(nu, x)
            err = abs(got - ref) / abs(ref)
            worst_b = max(worst_b, err)
            if err > 1e-10:
                rep.fail({"nu": nu, "x": x, "route": "asymptotic"}, ref, got)
    worst_n = 0.0
    for x in (-6.0, -3.0, -1.959964, -1.0, -0.3, 0.0, 0.5, 1.0, 1.959964, 4.0):
        err = abs(asy.normal_cdf(x) - normal_cdf_by_quadrature(x))
        worst_n = max(worst_n, err)
        if err > 1e-12:
            rep.fail({"x": x}, normal_cdf_by_quadrature(x), asy.normal_cdf(x))
    rep.metrics.update(bessel_max_relerr=worst_b, normal_cdf_max_abserr=worst_n)
    return rep


# --- registry -------------------------------------------------------------------------------

SUITES: dict[str, Callable[..., CheckReport]] = {
    "table1": lambda **kw: check_table1(),
    "log-concavity": lambda max_n=500, **kw: check_log_concavity(max_n),
    "identities": lambda max_n=500, **kw: check_identities(max_n),
    "brute-force": lambda **kw: check_bruteforce(),
    "moments": lambda max_n=500, k_max=3, **kw: check_moments(max_n, k_max),
    "moment-asymptotics": lambda checkpoints=(1000, 4000), **kw: check_moment_asymptotics(checkpoints),
    "asymptotics": lambda checkpoints=(250, 1000, 4000), **kw: check_asymptotics(checkpoints),
    "distribution": lambda checkpoints=(250, 1000, 4000), **kw: check_distribution(checkpoints),
    "analytic": lambda **kw: check_analytic(),
    "special": lambda **kw: check_special_functions(),
}


def run_suites(names: Sequence[str], **options) -> list[CheckReport]:
    """Run the named suites; reports come back sorted by check_id."""
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    reports = [SUITES[name](**options) for name in names]
    return sorted(reports, key=lambda r: r.check_id)


def format_text(reports: Sequence[CheckReport]) -> str:
    lines = [f"{'check':<40} {'status':<8} {'range':<14} failures"]
    def walk(rep, depth):
        name = "  " * depth + rep.check_id
        rng = f"{rep.n_range[0]}..{rep.n_range[1]}"
        lines.append(f"{name:<40} {rep.status.value:<8} {rng:<14} {rep.failures}")
        for s in rep.subreports:
            walk(s, depth + 1)
    for r in reports:
        walk(r, 0)
    return "\n".join(lines) + "\n"
