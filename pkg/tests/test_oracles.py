import pytest

from unimodal_rank import oracles
from unimodal_rank.oracles import Partition, StatTable, UnimodalSeq
from unimodal_rank.series import partition_series


def test_unimodal_rank_examples():
    assert oracles.unimodal_rank(UnimodalSeq((5,), 1)) == 0
    assert oracles.unimodal_rank(UnimodalSeq((4, 1), 1)) == 1
    assert oracles.unimodal_rank(UnimodalSeq((1, 3, 1), 2)) == 0


def test_invalid_sequences_rejected():
    for parts, k in [((1, 1), 1), ((2, 3), 1), ((1, 2, 2), 3), ((), 1), ((0, 2), 2)]:
        with pytest.raises(ValueError):
            UnimodalSeq(parts, k)


def test_enumeration_counts():
    assert len(oracles.enumerate_unimodal(5)) == 6
    assert oracles.enumerate_unimodal(1) == [UnimodalSeq((1,), 1)]
    seqs = oracles.enumerate_unimodal(8)
    assert len(seqs) == 21
    assert oracles.rank_histogram(8).items() == [(-2, 2), (-1, 5), (0, 7), (1, 5), (2, 2)]
    with pytest.raises(ValueError):
        oracles.enumerate_unimodal(0)


def test_rank_histogram_columns():
    assert oracles.rank_histogram(6).counts == {0: 4, 1: 2, -1: 2, 2: 1, -2: 1}
    assert oracles.rank_histogram(2).counts == {0: 1}
    assert oracles.rank_histogram(20).get(0) == 183


def test_enumeration_has_no_duplicates_and_is_symmetric():
    for n in range(1, 21):
        seqs = oracles.enumerate_unimodal(n)
        assert len({s.parts for s in seqs}) == len(seqs)
        hist = oracles.rank_histogram(n)
        assert hist.is_symmetric()
        assert hist.total() == len(seqs)
        assert max(abs(m) for m in hist.counts) == oracles.max_unimodal_rank(n)


def test_partition_stats_at_four():
    rank, crank = oracles.partition_stats(4)
    assert rank.counts == {3: 1, 1: 1, 0: 1, -1: 1, -3: 1}
    assert crank.counts == {4: 1, 2: 1, 0: 1, -2: 1, -4: 1}


def test_crank_convention_at_one():
    _, crank = oracles.partition_stats(1)
    assert crank.counts == {1: 1, -1: 1, 0: -1}
    crank.check(conventional=True)
    with pytest.raises(ValueError):
        crank.check()
    with pytest.raises(ValueError):
        oracles.partition_crank((1,))


def test_partition_totals_and_conjugation():
    P = partition_series(25)
    for n in range(2, 26):
        rank, crank = oracles.partition_stats(n)
        assert rank.total() == crank.total() == P[n]
    for lam in oracles.iter_partitions(12):
        conj = Partition(lam).conjugate().parts
        assert oracles.partition_rank(conj) == -oracles.partition_rank(lam)


def test_s_pairs():
    assert oracles.count_S_pairs(0) == 1
    assert oracles.count_S_pairs(4) == 2
    P = partition_series(12)
    for n in range(2, 13):
        _, crank = oracles.partition_stats(n)
        assert 2 * oracles.count_S_pairs(n) == P[n] - crank.get(0)


def test_ospt_bruteforce_small():
    assert oracles.ospt_bruteforce(4) == 2
    assert oracles.ospt_bruteforce(5) == 2


def test_stat_table_helpers():
    t = StatTable(3, {1: 2, -1: 2, 0: 0})
    assert t.items() == [(-1, 2), (1, 2)]
    assert t.reflected().counts == {-1: 2, 1: 2, 0: 0}
    assert StatTable(3, {2: 1}).is_symmetric() is False
