"""Exact generating functions for unimodal ranks, partition ranks and cranks.

There are three independent ways to get u(m, n):

* ``bivariate``: expand  sum_n (-wq)_n (-w^{-1}q)_n q^{n+1}  in both variables;
* ``per-m``: the closed form for U_m(q) as P(q) times a sparse signed sum,
  with each (q^{n(n+m)} - 1)/(1 - q^{n+m}) written out as a finite
  geometric sum;
* ``theta``: V_m(q) = (q)_oo U_m(q) as an alternating double sum over a
  quadratic form, then multiplied by P(q).

A fourth, ``oracle``, enumerates sequences directly.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

import numpy as np

from . import oracles
from .oracles import StatTable
from .series import (
    BandBuilder,
    BivarSeries,
    PochhammerKind,
    TruncSeries,
    mul_geom_inverse,
    partition_series,
    pochhammer,
    series_mul,
    triangular_bound,
)


class Route(str, Enum):
    BIVARIATE = "bivariate"
    PER_M = "per-m"
    THETA = "theta"
    ORACLE = "oracle"


class Stat(str, Enum):
    RANK = "rank"
    CRANK = "crank"


ORACLE_MAX_N = 30


def max_rank(N: int) -> int:
    """Largest m with u(m, n) != 0 for some n <= N, i.e. (m+1)(m+2)/2 <= N."""
    return max(triangular_bound(N) - 1, 0)


# --- the three routes to u(m, n) -------------------------------------------


def unimodal_bivariate(N: int) -> BivarSeries:
    """U(w;q) to order N; coefficient of w^m q^n is u(m, n)."""
    width = max(triangular_bound(N), 1)
    band = BandBuilder(N, width)
    band.set_one()
    total = np.zeros_like(band.arr)
    n = 0
    # (-wq)_n (-w^{-1}q)_n q^{n+1} contributes only when n+1 <= N
    while n + 1 <= N:
        if n > 0:
            top = N - n - 1
            band.mul_binomial(1, n, upto=top)
            band.mul_binomial(-1, n, upto=top)
        band.add_shifted_into(total, n + 1)
        n += 1
    return band.to_bivar(total)


def u_m_numerator(m: int, N: int) -> dict[int, int]:
    """Sparse q-expansion of (q)_oo U_m(q) from the closed form for U_m.

    Uses (q^{n(n+m)} - 1)/(1 - q^{n+m}) = -(1 + q^{n+m} + ... + q^{(n-1)(n+m)}).
    """
    if m < 0:
        raise ValueError("m must be non-negative (use u(-m, n) = u(m, n))")
    base = m * (m + 1) // 2
    terms: dict[int, int] = {}
    n = 1
    while base + n * (n + 1) // 2 + m * n <= N:
        sign = 1 if n % 2 else -1  # (-1)^n * (-1)
        start = base + n * (n + 1) // 2 + m * n
        step = n + m
        for j in range(n):
            e = start + j * step
            if e > N:
                break
            terms[e] = terms.get(e, 0) + sign
        n += 1
    return {e: c for e, c in terms.items() if c}


def u_m_series(m: int, N: int, partitions: TruncSeries | None = None) -> TruncSeries:
    """U_m(q) = sum_n u(m, n) q^n to order N."""
    P = partition_series(N) if partitions is None else partitions.truncate(N)
    return series_mul(TruncSeries.from_terms(u_m_numerator(m, N), N), P)


def theta_terms(m: int, N: int) -> dict[int, int]:
    """Alternating double sum over n1, n2 >= 0 of q^Q, Q the quadratic exponent.

    With A = 2(n1+m)+1 and B = 2 n2 + 1 the exponent is (A^2 + 3B^2 + 4AB)/8.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    terms: dict[int, int] = {}
    n1 = 0
    while True:
        A = 2 * (n1 + m) + 1
        if (A * A + 3 + 4 * A) // 8 > N:
            break
        n2 = 0
        while True:
            B = 2 * n2 + 1
            e = (A * A + 3 * B * B + 4 * A * B) // 8
            if e > N:
                break
            terms[e] = terms.get(e, 0) + (1 if (n1 + n2) % 2 == 0 else -1)
            n2 += 1
        n1 += 1
    return {e: c for e, c in terms.items() if c}


def v_m_theta_series(m: int, N: int) -> TruncSeries:
    """V_m(q) = (q)_oo U_m(q) from its indefinite-theta double sum."""
    return TruncSeries.from_terms(theta_terms(m, N), N)


# --- table sets -------------------------------------------------------------


@dataclass(frozen=True)
class UnimodalTableSet:
    """u(m, n) for 0 <= n <= N, stored column by column.

    ``columns`` maps m to the series U_m(q).  Routes that only produce m >= 0
    rely on u(-m, n) = u(m, n); the bivariate route stores both signs.
    Any m missing from ``columns`` (and whose mirror is missing) is
    identically zero up to order N.
    """

    N: int
    provenance: Route
    columns: Mapping[int, TruncSeries]

    def u(self, m: int, n: int) -> int:
        col = self.columns.get(m)
        if col is None:
            col = self.columns.get(-m)
        if col is None:
            if not 0 <= n <= self.N:
                raise IndexError(f"n={n} outside 0..{self.N}")
            return 0
        return col[n]

    def m_range(self) -> range:
        top = max(abs(m) for m in self.columns) if self.columns else 0
        return range(-top, top + 1)

    def row(self, n: int) -> StatTable:
        counts = {}
        for m in self.m_range():
            c = self.u(m, n)
            if c:
                counts[m] = c
        return StatTable(n, counts)

    def rows(self) -> list[StatTable]:
        return [self.row(n) for n in range(self.N + 1)]

    def to_triples(self, max_m: int | None = None) -> str:
        """Line format: ``n m count`` for every nonzero entry, n then m ascending."""
        lines = []
        for n in range(1, self.N + 1):
            for m, c in self.row(n).items():
                if max_m is None or abs(m) <= max_m:
                    lines.append(f"{n} {m} {c}")
        return "\n".join(lines) + ("\n" if lines else "")

    def to_json_obj(self, max_m: int | None = None) -> dict:
        rows = {}
        for n in range(1, self.N + 1):
            rows[str(n)] = {
                str(m): str(c)
                for m, c in self.row(n).items()
                if max_m is None or abs(m) <= max_m
            }
        return {"N": self.N, "rows": rows}

    def to_json(self, max_m: int | None = None) -> str:
        return json.dumps(self.to_json_obj(max_m), indent=1)


def table_set_from_json(text: str, provenance: Route = Route.THETA) -> UnimodalTableSet:
    obj = json.loads(text)
    N = int(obj["N"])
    cols: dict[int, list[int]] = {}
    for n_str, row in obj["rows"].items():
        n = int(n_str)
        for m_str, c in row.items():
            cols.setdefault(int(m_str), [0] * (N + 1))[n] = int(c)
    return UnimodalTableSet(N, provenance, {m: TruncSeries(tuple(v)) for m, v in sorted(cols.items())})


def table_set_from_triples(text: str, N: int, provenance: Route = Route.THETA) -> UnimodalTableSet:
    cols: dict[int, list[int]] = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        n, m, c = (int(x) for x in line.split())
        cols.setdefault(m, [0] * (N + 1))[n] = c
    return UnimodalTableSet(N, provenance, {m: TruncSeries(tuple(v)) for m, v in sorted(cols.items())})


def _column_job(args):
    route, m, N, P = args
    numerator = u_m_numerator(m, N) if route is Route.PER_M else theta_terms(m, N)
    return series_mul(TruncSeries.from_terms(numerator, N), P)


def unimodal_tables(N: int, route: Route | str = Route.THETA, workers: int = 1) -> UnimodalTableSet:
    """All u(m, n), n <= N, by one route.  ``workers > 1`` farms per-m columns out to processes."""
    route = Route(route)
    if N < 0:
        raise ValueError("N must be non-negative")
    if route is Route.BIVARIATE:
        B = unimodal_bivariate(N)
        lo, hi = B.support()
        return UnimodalTableSet(N, route, {m: B.column(m) for m in range(lo, hi + 1)})
    if route is Route.ORACLE:
        if N > ORACLE_MAX_N:
            raise ValueError(f"brute force is limited to N <= {ORACLE_MAX_N}")
        cols: dict[int, list[int]] = {}
        for n in range(1, N + 1):
            for m, c in oracles.rank_histogram(n).counts.items():
                cols.setdefault(m, [0] * (N + 1))[n] = c
        return UnimodalTableSet(N, route, {m: TruncSeries(tuple(v)) for m, v in sorted(cols.items())})
    P = partition_series(N)
    jobs = [(route, m, N, P) for m in range(max_rank(N) + 1)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            columns = list(pool.map(_column_job, jobs))
    else:
        columns = [_column_job(j) for j in jobs]
    return UnimodalTableSet(N, route, dict(enumerate(columns)))


def unimodal_row(n: int, partitions: TruncSeries | None = None) -> StatTable:
    """The full rank row u(., n) for a single n, without building whole columns.

    u(m, n) = sum_e V_m[e] p(n - e), with V_m from the theta double sum.
    """
    P = partition_series(n) if partitions is None else partitions
    counts = {}
    for m in range(max_rank(n) + 1):
        c = sum(v * P[n - e] for e, v in theta_terms(m, n).items())
        if c:
            counts[m] = c
            if m:
                counts[-m] = c
    return StatTable(n, counts)


def unimodal_total_series(N: int) -> TruncSeries:
    """U(q) = sum_{n>=0} (-q)_n^2 q^{n+1}: total counts u(n), independent of any rank split."""
    acc = np.zeros(N + 1, dtype=object)
    prod = np.zeros(N + 1, dtype=object)
    prod[0] = 1
    n = 0
    while n + 1 <= N:
        if n > 0:
            for _ in range(2):
                prod[n:] += prod[: N + 1 - n]
        acc[n + 1 :] += prod[: N - n]
        n += 1
    return TruncSeries(tuple(acc.tolist()))


# --- partition statistics --------------------------------------------------


def partition_stat_bivariate(which: Stat | str, N: int) -> BivarSeries:
    """R(w;q) (ranks) or C(w;q) (cranks) to order N."""
    which = Stat(which)
    width = max(N, 1)
    if which is Stat.CRANK:
        # (q)_oo / ((wq)_oo (w^{-1}q)_oo); only factors with j <= N matter
        band = BandBuilder.from_series(pochhammer(PochhammerKind.QQ, N, N), width)
        for j in range(1, N + 1):
            band.div_binomial(1, j)
            band.div_binomial(-1, j)
        return band.to_bivar()
    total = np.zeros((N + 1, 2 * width + 1), dtype=object)
    band = BandBuilder(N, width)
    band.set_one()
    n = 0
    while n * n <= N:
        if n > 0:
            top = N - n * n
            band.div_binomial(1, n, upto=top)
            band.div_binomial(-1, n, upto=top)
        band.add_shifted_into(total, n * n)
        n += 1
    return band.to_bivar(total)


def ospt_series(N: int) -> TruncSeries:
    """ospt(n) from the two-sum formula of Andrews, Chan and Kim."""
    acc = TruncSeries.zero(N)
    n = 1
    while n * (n + 1) // 2 <= N:
        sign = 1 if n % 2 else -1
        num = TruncSeries.from_terms({n * (n + 1) // 2: sign}, N)
        hi = n * (3 * n + 1) // 2
        if hi <= N:
            num = num + TruncSeries.from_terms({hi: -sign}, N)
        acc = acc + mul_geom_inverse(num, n)
        n += 1
    return series_mul(acc, partition_series(N))


def crank_zero_series(N: int) -> TruncSeries:
    """(1 - q) sum_{n>=1} q^{n^2+2n} / (q)_n^2.

    This equals M(0, n) for n >= 2.  Its q^1 coefficient is 0, not the
    conventional M(0, 1) = -1 of the crank product.
    """
    acc = TruncSeries.zero(N)
    term = TruncSeries.one(N)
    n = 1
    while n * n + 2 * n <= N:
        term = term.shift(2 * n + 1)
        term = mul_geom_inverse(mul_geom_inverse(term, n), n)
        acc = acc + term
        n += 1
    return acc - acc.shift(1)


def s_series(N: int) -> TruncSeries:
    """S(q) = 1 + sum_{n>=1} q^{n^2} / ((q)_n (q)_{n-1}), counting pairs in the set S."""
    acc = TruncSeries.one(N)
    term = TruncSeries.one(N)
    n = 1
    while n * n <= N:
        term = term.shift(2 * n - 1)
        term = mul_geom_inverse(term, n)
        if n > 1:
            term = mul_geom_inverse(term, n - 1)
        acc = acc + term
        n += 1
    return acc


def psi_series(N: int) -> TruncSeries:
    """Third-order mock theta function sum_{n>=1} q^{n^2} / (q; q^2)_n."""
    acc = TruncSeries.zero(N)
    term = TruncSeries.one(N)
    n = 1
    while n * n <= N:
        term = mul_geom_inverse(term.shift(2 * n - 1), 2 * n - 1)
        acc = acc + term
        n += 1
    return acc


# --- moments ----------------------------------------------------------------


def unimodal_moments(tables: UnimodalTableSet, r: int, signed: bool = True) -> list[int]:
    """u_r(n) = sum_m m^r u(m, n) (or |m|^r when ``signed`` is False), n = 0..N."""
    if r < 0:
        raise ValueError("moment order must be non-negative")
    acc = np.zeros(tables.N + 1, dtype=object)
    for m in tables.m_range():
        weight = m**r if signed else abs(m) ** r
        if weight == 0:
            continue
        col = tables.columns.get(m) or tables.columns.get(-m)
        if col is None:
            continue
        arr = np.empty(tables.N + 1, dtype=object)
        arr[:] = list(col.coeffs)
        acc += weight * arr
    return [int(x) for x in acc.tolist()]


def moment_series(k: int, N: int) -> TruncSeries:
    """Generating function of u_{2k}(n) as P(q) (delta_{k,0} V_0 + 2 sum_{m>=1} m^{2k} V_m)."""
    terms: dict[int, int] = {}
    if k == 0:
        terms.update(theta_terms(0, N))
    for m in range(1, max_rank(N) + 1):
        w = 2 * m ** (2 * k)
        for e, c in theta_terms(m, N).items():
            terms[e] = terms.get(e, 0) + w * c
    return series_mul(TruncSeries.from_terms(terms, N), partition_series(N))


def psi_from_ranks(tables: UnimodalTableSet, n: int) -> int:
    """Real part of U(i; q) at q^n: u(0, n) + 2 sum_{j>=1} (-1)^j u(2j, n)."""
    total = tables.u(0, n)
    j = 1
    while 2 * j <= max(abs(m) for m in tables.m_range()):
        total += 2 * (-1) ** j * tables.u(2 * j, n)
        j += 1
    return total


def rows_agree(a: UnimodalTableSet, b: UnimodalTableSet, n_range: Iterable[int], m_range: Iterable[int]):
    """First (m, n, a-value, b-value) where the two tables differ, else None."""
    ms = list(m_range)
    for n in n_range:
        for m in ms:
            x, y = a.u(m, n), b.u(m, n)
            if x != y:
                return (m, n, x, y)
    return None
