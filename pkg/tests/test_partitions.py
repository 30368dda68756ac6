import pytest
from hypothesis import given, settings, strategies as st

from idealizer_lab.partitions import (
    EMPTY,
    BFileError,
    Partition,
    bundled_bfile_path,
    degree,
    enumerate_partitions,
    load_bfile,
    max_part,
    parse_bfile,
    partition_counts,
    restricted_counts,
    weight,
)
from oracles import brute_partitions, parts_to_mults


@pytest.mark.parametrize(
    "mults, w, d, m",
    [
        ({}, 0, 0, 0),
        ({1: 3}, 3, 3, 1),
        ({1: 2, 3: 1}, 5, 3, 3),
        ({2: 1}, 2, 1, 2),
        ({1: 5, 4: 2}, 13, 7, 4),
    ],
)
def test_weight_degree_max_part(mults, w, d, m):
    p = Partition(mults)
    assert (weight(p), degree(p), max_part(p)) == (w, d, m)


def test_zero_multiplicities_are_dropped():
    assert Partition({1: 0, 2: 1}) == Partition({2: 1})
    assert Partition({3: 0}) == EMPTY
    assert not EMPTY


@pytest.mark.parametrize("bad", [{0: 1}, {-2: 1}, {1: -1}])
def test_invalid_partition_rejected(bad):
    with pytest.raises(ValueError):
        Partition(bad)


def test_shifted_refuses_negative():
    with pytest.raises(ValueError):
        Partition({1: 1}).shifted({1: -2})
    assert Partition({1: 1}).shifted({1: -1, 3: 2}) == Partition({3: 2})


def test_enumerate_unary():
    assert enumerate_partitions(1, 3) == [EMPTY, Partition({1: 1}), Partition({1: 2}), Partition({1: 3})]


def test_enumerate_small_windows():
    got = enumerate_partitions(2, 3)
    assert len(got) == 6
    assert set(got) == {EMPTY, Partition({1: 1}), Partition({1: 2}), Partition({2: 1}), Partition({1: 3}), Partition({1: 1, 2: 1})}
    assert len(enumerate_partitions(5, 4)) == 1 + 1 + 2 + 3 + 5


def test_enumerate_canonical_order():
    # weight-major, then lexicographic on (lambda_1, lambda_2, ...)
    got = enumerate_partitions(3, 4)
    keys = [(p.weight, p.vector(3)) for p in got]
    assert keys == sorted(keys)
    assert len(set(got)) == len(got)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6), st.integers(0, 12))
def test_enumeration_matches_brute_force(m, w):
    got = enumerate_partitions(m, w)
    expected = {Partition(parts_to_mults(p)) for p in brute_partitions(m, w)}
    assert len(got) == len(expected)
    assert set(got) == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 8), st.integers(0, 25))
def test_enumeration_counts_match_dp(m, w):
    per_weight = [0] * (w + 1)
    for p in enumerate_partitions(m, w):
        per_weight[p.weight] += 1
    assert per_weight == restricted_counts(m, w)


def test_partition_counts_first_values():
    counts = partition_counts(6)
    assert counts.a == (1, 1, 2, 3, 5, 7, 11)
    assert counts.b[:6] == (1, 2, 4, 7, 12, 19)
    assert counts.c[:5] == (1, 3, 7, 14, 26)


def test_counts_agree_with_enumeration_up_to_30():
    counts = partition_counts(30)
    for n in range(31):
        assert counts.a[n] == sum(1 for p in enumerate_partitions(n, n) if p.weight == n)


def test_partial_sum_recurrences():
    counts = partition_counts(40)
    for n in range(1, 41):
        assert counts.b[n] - counts.b[n - 1] == counts.a[n]
        assert counts.c[n] - counts.c[n - 1] == counts.b[n]
        assert counts.a[n] >= counts.a[n - 1] or n == 1
    assert counts.b_at(-1) == 0 and counts.c_at(-3) == 0


def test_bundled_snapshot_matches_counts():
    snap = load_bfile(bundled_bfile_path())
    assert len(snap) >= 50
    counts = partition_counts(max(snap))
    assert all(counts.a[i] == v for i, v in snap.items())
    assert [snap[i] for i in range(15)] == list(counts.a[:15])


def test_parse_bfile_basic(tmp_path):
    f = tmp_path / "seq.txt"
    f.write_text("0 1\n1 1\n2 2")
    assert load_bfile(f) == {0: 1, 1: 1, 2: 2}
    assert parse_bfile("# comment\n3 3") == {3: 3}
    assert parse_bfile("\n\n5 7\n\n") == {5: 7}


@pytest.mark.parametrize("text, line", [("x y", 1), ("0 1\n1", 2), ("0 1\n0 2", 2), ("# c\n1 2 3", 2)])
def test_parse_bfile_errors(text, line):
    with pytest.raises(BFileError) as info:
        parse_bfile(text)
    assert info.value.lineno == line
    assert f"line {line}" in str(info.value)
