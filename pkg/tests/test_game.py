import pytest
from hypothesis import given
from hypothesis import strategies as st

from imark.errors import EmptySet, InvalidDivisor, InvalidSubtraction, Overflow
from imark.game import (
    MAX_PILE,
    GameSpec,
    General,
    PeriodicOutcome,
    Theorem1,
    Theorem2,
    Theorem3,
    classify_family,
    options,
    spec_for,
    validate_spec,
)

specs = st.builds(
    validate_spec,
    st.sets(st.integers(1, 12), min_size=1, max_size=4),
    st.sets(st.integers(2, 12), min_size=1, max_size=3),
)


def test_validate_spec_examples():
    assert validate_spec([1], [2, 3]) == GameSpec((1,), (2, 3))
    assert validate_spec([2, 2], [5]) == GameSpec((2,), (5,))
    assert validate_spec({3, 1, 2}, [7, 3]).S == (1, 2, 3)
    assert validate_spec({3, 1, 2}, [7, 3]).D == (3, 7)


@pytest.mark.parametrize(
    "S, D, exc",
    [
        ([1], [1], InvalidDivisor),
        ([1], [0], InvalidDivisor),
        ([0], [2], InvalidSubtraction),
        ([-3], [2], InvalidSubtraction),
        ([], [2], EmptySet),
        ([1], [], EmptySet),
    ],
)
def test_validate_spec_errors(S, D, exc):
    with pytest.raises(exc):
        validate_spec(S, D)


def test_options_examples(mark123):
    assert options(mark123, 6) == [2, 3, 5]
    assert options(mark123, 0) == []
    assert options(validate_spec([2], [5]), 5) == [1, 3]
    assert options(validate_spec([2], [5]), 1) == []


def test_division_from_zero_excluded():
    spec = validate_spec([5], [2, 3])
    assert options(spec, 0) == []


def test_options_deduplicated():
    # 4 - 2 == 4 / 2
    assert options(validate_spec([2], [2]), 4) == [2]


def test_options_reject_huge_and_negative(mark123):
    with pytest.raises(Overflow):
        options(mark123, MAX_PILE + 1)
    with pytest.raises(ValueError):
        options(mark123, -1)
    assert options(mark123, MAX_PILE) == [MAX_PILE - 1]


@given(specs, st.integers(0, 10**12))
def test_options_acyclic_and_bounded(spec, n):
    opts = options(spec, n)
    assert all(0 <= w < n for w in opts)
    assert len(opts) <= len(spec.S) + len(spec.D)
    assert opts == sorted(set(opts))


@given(st.integers(6, 10**15))
def test_mark123_options_follow_residue_table(n):
    spec = validate_spec([1], [2, 3])
    expected = {
        0: [n - 1, n // 2, n // 3],
        1: [n - 1],
        2: [n - 1, n // 2],
        3: [n - 1, n // 3],
        4: [n - 1, n // 2],
        5: [n - 1],
    }[n % 6]
    assert options(spec, n) == sorted(expected)


@pytest.mark.parametrize(
    "S, D, tag",
    [
        ([1, 2, 3, 4], [11], Theorem1(5, 11)),
        ([1], [3], Theorem1(2, 3)),
        ([2], [7], Theorem2(7)),
        ([2], [5], Theorem3(5)),
        ([1], [2, 3], General()),
        ([1], [2], PeriodicOutcome(2, 2)),
        ([1, 2], [6], PeriodicOutcome(3, 6)),
        ([2], [4], General()),
        ([1, 3], [5], General()),
        ([3], [5], General()),
    ],
)
def test_classify_family(S, D, tag):
    assert classify_family(validate_spec(S, D)) == tag


def test_spec_for_roundtrip():
    for tag in [Theorem1(5, 11), Theorem2(3), Theorem3(9), PeriodicOutcome(4, 6)]:
        assert classify_family(spec_for(tag)) == tag
    with pytest.raises(ValueError):
        spec_for(General())


def test_spec_is_immutable():
    spec = validate_spec([1], [2])
    with pytest.raises(Exception):
        spec.S = (2,)
