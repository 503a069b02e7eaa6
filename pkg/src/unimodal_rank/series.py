"""Exact truncated power series in q, and in (w, q) with Laurent coefficients in w.

Every coefficient is a Python int, so nothing overflows.  A series of
truncation order ``N`` knows the coefficients of ``q**0 .. q**N`` and nothing
else: asking for ``q**(N+1)`` is an error rather than a silent zero, and every
binary operation returns the smaller of the two orders.

Vector work is done on numpy ``object`` arrays, which keeps big-int
arithmetic exact while moving the inner loops into C.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping

import numpy as np


def _obj(values) -> np.ndarray:
    arr = np.empty(len(values), dtype=object)
    arr[:] = list(values)
    return arr


@dataclass(frozen=True)
class TruncSeries:
    """Power series in q known exactly up to ``q**trunc_order``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the q^0 coefficient")

    @property
    def trunc_order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        if not isinstance(k, (int, np.integer)):
            raise TypeError("series index must be an integer exponent")
        if k < 0 or k > self.trunc_order:
            raise IndexError(
                f"coefficient of q^{k} is not known (trunc_order={self.trunc_order})"
            )
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    @classmethod
    def zero(cls, N: int) -> "TruncSeries":
        return cls((0,) * (N + 1))

    @classmethod
    def one(cls, N: int) -> "TruncSeries":
        return cls((1,) + (0,) * N)

    @classmethod
    def from_terms(cls, terms: Mapping[int, int], N: int) -> "TruncSeries":
        """Build from a sparse ``{exponent: coefficient}`` map; exponents above N are dropped."""
        c = [0] * (N + 1)
        for e, v in terms.items():
            if e < 0:
                raise ValueError("negative q-exponents are not representable")
            if e <= N:
                c[e] += v
        return cls(tuple(c))

    def truncate(self, N: int) -> "TruncSeries":
        if N > self.trunc_order:
            raise ValueError(f"cannot extend a series of order {self.trunc_order} to {N}")
        return TruncSeries(self.coeffs[: N + 1])

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by ``q**k`` keeping the same truncation order."""
        if k < 0:
            raise ValueError("shift must be non-negative")
        N = self.trunc_order
        if k > N:
            return TruncSeries.zero(N)
        return TruncSeries((0,) * k + self.coeffs[: N + 1 - k])

    def nonzero_terms(self) -> dict[int, int]:
        return {e: c for e, c in enumerate(self.coeffs) if c}

    def __add__(self, other):
        if isinstance(other, int):
            return TruncSeries((self.coeffs[0] + other,) + self.coeffs[1:])
        N = min(self.trunc_order, other.trunc_order)
        return TruncSeries(tuple(a + b for a, b in zip(self.coeffs[: N + 1], other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncSeries(tuple(other * a for a in self.coeffs))
        return series_mul(self, other)

    __rmul__ = __mul__


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Schoolbook Cauchy product truncated at the smaller order.

    The loop runs over the nonzero coefficients of the sparser operand and
    adds scaled slices of the other one, which is what makes products with
    theta-type series (a few percent nonzero) cheap.
    """
    N = min(a.trunc_order, b.trunc_order)
    ta = [(i, c) for i, c in enumerate(a.coeffs[: N + 1]) if c]
    tb = [(i, c) for i, c in enumerate(b.coeffs[: N + 1]) if c]
    if len(tb) < len(ta):
        ta, other = tb, a
    else:
        other = b
    dense = _obj(other.coeffs[: N + 1])
    out = np.zeros(N + 1, dtype=object)
    for i, c in ta:
        if c == 1:
            out[i:] += dense[: N + 1 - i]
        elif c == -1:
            out[i:] -= dense[: N + 1 - i]
        else:
            out[i:] += c * dense[: N + 1 - i]
    return TruncSeries(tuple(out.tolist()))


def _geom_inverse_inplace(arr: np.ndarray, j: int) -> None:
    # c_k += c_{k-j} for increasing k is a running sum along each residue class mod j
    for r in range(min(j, len(arr))):
        arr[r::j] = np.cumsum(arr[r::j])


def mul_geom_inverse(a: TruncSeries, j: int) -> TruncSeries:
    """Return ``a / (1 - q**j)`` to the same truncation order."""
    if j < 1:
        raise ValueError("1 - q^j is not invertible for j < 1")
    arr = _obj(a.coeffs)
    _geom_inverse_inplace(arr, j)
    return TruncSeries(tuple(arr.tolist()))


def partition_series(N: int) -> TruncSeries:
    """1/(q;q)_oo via Euler's pentagonal recurrence, p(0..N)."""
    if N < 0:
        raise ValueError("N must be non-negative")
    pentagonal = []
    k = 1
    while k * (3 * k - 1) // 2 <= N:
        sign = 1 if k % 2 else -1
        pentagonal.append((k * (3 * k - 1) // 2, sign))
        pentagonal.append((k * (3 * k + 1) // 2, sign))
        k += 1
    p = [0] * (N + 1)
    p[0] = 1
    for n in range(1, N + 1):
        s = 0
        for g, sign in pentagonal:
            if g > n:
                break
            s += p[n - g] if sign > 0 else -p[n - g]
        p[n] = s
    return TruncSeries(tuple(p))


class PochhammerKind(Enum):
    QQ = "(q;q)_n"
    NegQ = "(-q;q)_n"
    QOdd = "(q;q^2)_n"


def pochhammer(kind: PochhammerKind, n: int, N: int) -> TruncSeries:
    """The finite product for ``kind`` with n factors, truncated at q**N."""
    if n < 0 or N < 0:
        raise ValueError("n and N must be non-negative")
    arr = np.zeros(N + 1, dtype=object)
    arr[0] = 1
    for i in range(n):
        if kind is PochhammerKind.QQ:
            e, sign = i + 1, -1
        elif kind is PochhammerKind.NegQ:
            e, sign = i + 1, 1
        else:
            e, sign = 2 * i + 1, -1
        if e > N:
            break
        if sign > 0:
            arr[e:] += arr[: N + 1 - e]
        else:
            arr[e:] -= arr[: N + 1 - e]
    return TruncSeries(tuple(arr.tolist()))


@dataclass(frozen=True)
class BivarSeries:
    """Series in q whose coefficients are Laurent polynomials in w.

    ``rows[n]`` maps a w-exponent m to the coefficient of ``w**m q**n``.
    Absent keys are zero.  Rows are plain dicts; treat them as read-only.
    """

    trunc_order: int
    rows: tuple[dict[int, int], ...]

    def __post_init__(self):
        if len(self.rows) != self.trunc_order + 1:
            raise ValueError("rows must cover q^0 .. q^trunc_order")

    def coeff(self, m: int, n: int) -> int:
        if n < 0 or n > self.trunc_order:
            raise IndexError(f"row q^{n} is not known (trunc_order={self.trunc_order})")
        return self.rows[n].get(m, 0)

    def row(self, n: int) -> dict[int, int]:
        if n < 0 or n > self.trunc_order:
            raise IndexError(f"row q^{n} is not known (trunc_order={self.trunc_order})")
        return dict(self.rows[n])

    def column(self, m: int) -> TruncSeries:
        """The coefficient of w**m as a series in q."""
        return TruncSeries(tuple(r.get(m, 0) for r in self.rows))

    def support(self) -> tuple[int, int]:
        keys = [m for r in self.rows for m in r]
        if not keys:
            return (0, 0)
        return (min(keys), max(keys))

    def specialize(self, w: int) -> TruncSeries:
        """Set w = 1 or w = -1, which keeps the result an integer series."""
        if w not in (1, -1):
            raise ValueError("only w = 1 and w = -1 give integer series")
        out = []
        for r in self.rows:
            out.append(sum(c if w == 1 or m % 2 == 0 else -c for m, c in r.items()))
        return TruncSeries(tuple(out))

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int], int], N: int) -> "BivarSeries":
        """Build from ``{(m, n): coefficient}``; rows above N are dropped."""
        rows: list[dict[int, int]] = [dict() for _ in range(N + 1)]
        for (m, n), c in terms.items():
            if 0 <= n <= N and c:
                rows[n][m] = rows[n].get(m, 0) + c
        return cls(N, tuple({m: c for m, c in r.items() if c} for r in rows))


def bivar_mul(A: BivarSeries, B: BivarSeries) -> BivarSeries:
    N = min(A.trunc_order, B.trunc_order)
    rows: list[dict[int, int]] = [dict() for _ in range(N + 1)]
    for n1 in range(N + 1):
        ra = A.rows[n1]
        if not ra:
            continue
        for n2 in range(N + 1 - n1):
            rb = B.rows[n2]
            if not rb:
                continue
            target = rows[n1 + n2]
            for m1, c1 in ra.items():
                for m2, c2 in rb.items():
                    target[m1 + m2] = target.get(m1 + m2, 0) + c1 * c2
    return BivarSeries(N, tuple({m: c for m, c in r.items() if c} for r in rows))


class BandBuilder:
    """Mutable dense workspace for building a BivarSeries.

    Stores the coefficients of ``w**m q**n`` for ``|m| <= width`` in an
    (N+1) x (2*width+1) object array.  Callers choose ``width`` from a
    support bound they can prove; anything shifted past the band edge is
    asserted to be zero.
    """

    def __init__(self, N: int, width: int):
        self.N = N
        self.width = width
        self.arr = np.zeros((N + 1, 2 * width + 1), dtype=object)

    @classmethod
    def from_series(cls, a: TruncSeries, width: int) -> "BandBuilder":
        b = cls(a.trunc_order, width)
        b.arr[:, width] = _obj(a.coeffs)
        return b

    def set_one(self):
        self.arr[:] = 0
        self.arr[0, self.width] = 1

    def _shifted(self, rows: slice, s: int) -> np.ndarray:
        # w**s times the given rows, as a new array of the same shape
        block = self.arr[rows]
        out = np.zeros_like(block)
        if s == 0:
            out[:] = block
        elif s > 0:
            assert not any(block[:, -s:].ravel()), "band overflow"
            out[:, s:] = block[:, :-s]
        else:
            assert not any(block[:, :-s].ravel()), "band overflow"
            out[:, :s] = block[:, -s:]
        return out

    def mul_binomial(self, s: int, j: int, sign: int = 1, upto: int | None = None):
        """Multiply by ``1 + sign * w**s q**j`` (rows above ``upto`` are left stale)."""
        top = self.N if upto is None else min(upto, self.N)
        if j > top:
            return
        add = self._shifted(slice(0, top + 1 - j), s)
        if sign > 0:
            self.arr[j : top + 1] += add
        else:
            self.arr[j : top + 1] -= add

    def div_binomial(self, s: int, j: int, upto: int | None = None):
        """Multiply by ``1 / (1 - w**s q**j)``, j >= 1."""
        top = self.N if upto is None else min(upto, self.N)
        for k in range(j, top + 1):
            row = self.arr[k - j]
            if not any(row):
                continue
            if s == 0:
                self.arr[k] += row
            elif s > 0:
                assert not any(row[-s:]), "band overflow"
                self.arr[k, s:] += row[:-s]
            else:
                assert not any(row[:-s]), "band overflow"
                self.arr[k, :s] += row[-s:]

    def add_shifted_into(self, target: np.ndarray, qshift: int, upto: int | None = None):
        """target += q**qshift * self, over rows 0..upto of self."""
        top = self.N - qshift if upto is None else min(upto, self.N - qshift)
        if top < 0:
            return
        target[qshift : qshift + top + 1] += self.arr[: top + 1]

    def to_bivar(self, arr: np.ndarray | None = None) -> BivarSeries:
        arr = self.arr if arr is None else arr
        rows = []
        for n in range(self.N + 1):
            r = arr[n]
            rows.append({m - self.width: int(c) for m, c in enumerate(r.tolist()) if c})
        return BivarSeries(self.N, tuple(rows))


def triangular_bound(N: int) -> int:
    """Largest r with r(r+1)/2 <= N: the most distinct positive parts fitting in N."""
    r = 0
    while (r + 1) * (r + 2) // 2 <= N:
        r += 1
    return r

