"""Tests for the legacy word codec and the exact integer helpers."""

import pytest
from hypothesis import given, strategies as st

from moc.exactnum import (
    FormatError,
    divmod_euclid,
    legacy_decode,
    legacy_decode_stream,
    legacy_encode,
    legacy_encode_stream,
    xgcd,
)


def test_worked_examples():
    assert legacy_encode(123456789) == [1, 2345, 16789]
    assert legacy_encode(-123456789) == [1, 2345, 26789]
    assert legacy_encode(0) == [10000]
    assert legacy_encode(7) == [10007]
    assert legacy_encode(-7) == [20007]
    assert legacy_encode(9999) == [19999]
    assert legacy_encode(10000) == [1, 10000]


def test_decode_worked_examples():
    assert legacy_decode([1, 2345, 16789]) == 123456789
    assert legacy_decode([1, 2345, 26789]) == -123456789
    assert legacy_decode([10000]) == 0
    assert legacy_decode([1, 10000]) == 10000


@given(st.integers(min_value=-(10 ** 40), max_value=10 ** 40))
def test_round_trip(n):
    words = legacy_encode(n)
    assert legacy_decode(words) == n
    # every word but the last is a plain digit, the last carries the sign
    assert all(0 <= w <= 9999 for w in words[:-1])
    assert 10000 <= words[-1] <= 29999


def test_decode_rejects_bad_words():
    with pytest.raises(FormatError):
        legacy_decode([123])  # no terminator
    with pytest.raises(FormatError):
        legacy_decode([10001, 10000])  # interior word out of range
    with pytest.raises(FormatError):
        legacy_decode([1, 10000, 10000])  # trailing garbage
    with pytest.raises(FormatError):
        legacy_decode([])
    with pytest.raises(FormatError):
        legacy_decode([20000])  # negative zero
    with pytest.raises(FormatError):
        legacy_decode([0, 10007])  # leading zero word


@given(st.lists(st.integers(min_value=-(10 ** 30), max_value=10 ** 30), max_size=30))
def test_stream_round_trip(values):
    words = legacy_encode_stream(values)
    assert legacy_decode_stream(words) == values


def test_stream_is_self_delimiting():
    words = legacy_encode_stream([123456789, -5, 0])
    assert words == [1, 2345, 16789, 20005, 10000]


@given(st.integers(), st.integers().filter(lambda b: b != 0))
def test_divmod_euclid(a, b):
    q, r = divmod_euclid(a, b)
    assert a == q * b + r
    assert 0 <= r < abs(b)


@given(st.integers(min_value=-(10 ** 12), max_value=10 ** 12),
       st.integers(min_value=-(10 ** 12), max_value=10 ** 12))
def test_xgcd(a, b):
    import math
    g, x, y = xgcd(a, b)
    assert g == math.gcd(a, b)
    assert a * x + b * y == g
