import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unimodal_rank.series import (
    BivarSeries,
    PochhammerKind,
    TruncSeries,
    bivar_mul,
    mul_geom_inverse,
    partition_series,
    pochhammer,
    series_mul,
)
from unimodal_rank.genfun import unimodal_bivariate


def S(*coeffs):
    return TruncSeries(tuple(coeffs))


def test_mul_identity_and_telescoping():
    assert series_mul(S(1, 1), S(1, 0)).coeffs == (1, 1)
    assert series_mul(S(1, -1, 0, 0), S(1, 1, 1, 1)).coeffs == (1, 0, 0, 0)


def test_q_pochhammer_three():
    N = 8
    prod = TruncSeries.one(N)
    for j in (1, 2, 3):
        prod = prod * TruncSeries.from_terms({0: 1, j: -1}, N)
    assert prod.nonzero_terms() == {0: 1, 1: -1, 2: -1, 4: 1, 5: 1, 6: -1}
    assert pochhammer(PochhammerKind.QQ, 3, N) == prod


def test_result_order_is_min_of_operands():
    a = TruncSeries.one(10)
    b = TruncSeries.one(4)
    assert series_mul(a, b).trunc_order == 4
    assert (a + b).trunc_order == 4


def test_reading_past_order_is_an_error():
    a = partition_series(5)
    with pytest.raises(IndexError):
        a[6]
    with pytest.raises(IndexError):
        a[-1]
    with pytest.raises(ValueError):
        a.truncate(9)


@pytest.mark.parametrize(
    "a, j, expected",
    [
        (S(1, 0, 0, 0, 0), 1, (1, 1, 1, 1, 1)),
        (S(1, 0, 0, 0, 0, 0, 0, 0), 3, (1, 0, 0, 1, 0, 0, 1, 0)),
        (S(1, -1, 0, 0, 0, 0), 1, (1, 0, 0, 0, 0, 0)),
    ],
)
def test_mul_geom_inverse_examples(a, j, expected):
    assert mul_geom_inverse(a, j).coeffs == expected


def test_mul_geom_inverse_rejects_zero():
    with pytest.raises(ValueError):
        mul_geom_inverse(TruncSeries.one(3), 0)


def test_partition_series_values():
    assert partition_series(5).coeffs == (1, 1, 2, 3, 5, 7)
    assert partition_series(0).coeffs == (1,)
    assert partition_series(10)[10] == 42
    assert len(str(partition_series(500)[500])) == 22


def test_partition_series_matches_product_chain():
    N = 60
    chain = TruncSeries.one(N)
    for j in range(1, N + 1):
        chain = mul_geom_inverse(chain, j)
    assert chain == partition_series(N)


@pytest.mark.parametrize(
    "kind, n, N, expected",
    [
        (PochhammerKind.QQ, 0, 10, {0: 1}),
        (PochhammerKind.NegQ, 2, 4, {0: 1, 1: 1, 2: 1, 3: 1}),
        (PochhammerKind.QOdd, 2, 5, {0: 1, 1: -1, 3: -1, 4: 1}),
    ],
)
def test_pochhammer_examples(kind, n, N, expected):
    assert pochhammer(kind, n, N).nonzero_terms() == expected


small_series = st.integers(0, 50).flatmap(
    lambda N: st.lists(st.integers(-5, 5), min_size=N + 1, max_size=N + 1).map(
        lambda c: TruncSeries(tuple(c))
    )
)


@settings(max_examples=60, deadline=None)
@given(small_series, small_series, small_series)
def test_ring_axioms(a, b, c):
    assert series_mul(a, b) == series_mul(b, a)
    assert series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c))
    one = TruncSeries.one(a.trunc_order)
    assert series_mul(one, a) == a == series_mul(a, one)


@settings(max_examples=60, deadline=None)
@given(small_series, st.integers(1, 12))
def test_geom_inverse_round_trip(a, j):
    binom = TruncSeries.from_terms({0: 1, j: -1}, a.trunc_order)
    assert mul_geom_inverse(series_mul(a, binom), j) == a


def test_bivar_mul_examples():
    A = BivarSeries.from_terms({(1, 1): 1}, 4)
    B = BivarSeries.from_terms({(-1, 1): 1}, 4)
    assert bivar_mul(A, B).rows[2] == {0: 1}
    A = BivarSeries.from_terms({(0, 0): 1, (1, 1): 1}, 4)
    B = BivarSeries.from_terms({(0, 0): 1, (-1, 1): 1}, 4)
    C = bivar_mul(A, B)
    assert C.rows[:3] == ({0: 1}, {1: 1, -1: 1}, {0: 1})
    A = BivarSeries.from_terms({(0, 0): 1, (1, 1): 1}, 4)
    B = BivarSeries.from_terms({(0, 0): 1, (1, 2): 1}, 4)
    assert bivar_mul(A, B).rows[3] == {2: 1}


def test_bivar_specialize_and_support():
    U = unimodal_bivariate(60)
    for n, row in enumerate(U.rows):
        assert all(abs(m) <= n for m in row)
    assert U.specialize(1)[5] == 6
    with pytest.raises(ValueError):
        U.specialize(2)


def test_shift_and_scalar():
    a = S(1, 2, 3)
    assert a.shift(1).coeffs == (0, 1, 2)
    assert (3 * a).coeffs == (3, 6, 9)
    assert (a - a) == TruncSeries.zero(2)
