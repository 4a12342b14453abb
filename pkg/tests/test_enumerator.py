import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from closedfactors import ingest, oracle
from closedfactors.counter import count_online
from closedfactors.enumerator import (
    ClosedFactor,
    closed_prefix_flags,
    enumerate_distinct,
    enumerate_occurrences,
    oc_array,
)
from closedfactors.text import EmptyInputError


def rule_used(s) -> bool:
    """The rule the occurrence enumerator relies on."""
    if len(s) == 1:
        return True
    b = len(oracle.longest_border(s))
    return b > 0 and len(oracle.lrs(s[1:])) < b


def rule_border_equals_lrs(s) -> bool:
    """Tempting but wrong: longest border as long as the longest repeating suffix."""
    if len(s) == 1:
        return True
    b = len(oracle.longest_border(s))
    return b > 0 and len(oracle.lrs(s)) == b


def test_characterization_gate(small_words):
    for w in small_words:
        assert rule_used(w) == oracle.is_closed(w), w


def test_border_equals_lrs_rule_is_wrong():
    # "a" is both the longest border and the lrs of "abaca" but occurs three times
    assert rule_border_equals_lrs(b"abaca")
    assert not oracle.is_closed(b"abaca")
    assert not rule_used(b"abaca")


@pytest.mark.parametrize("s, bits", [(b"aa", [1, 1]), (b"ab", [0, 1]), (b"x", [1])])
def test_oc_examples(s, bits):
    assert oc_array(s).tolist() == bits
    assert str(oc_array(s)) == "".join(map(str, bits))


def test_oc_empty():
    with pytest.raises(EmptyInputError):
        oc_array(b"")
    with pytest.raises(EmptyInputError):
        closed_prefix_flags(b"")


@pytest.mark.parametrize(
    "s, occ",
    [(b"aa", {(1, 1), (2, 2), (1, 2)}), (b"ab", {(1, 1), (2, 2)}), (b"a", {(1, 1)})],
)
def test_occurrence_examples(s, occ):
    got = list(enumerate_occurrences(s))
    assert len(got) == len(set(got)) and set(got) == occ


def test_occurrences_of_empty():
    assert list(enumerate_occurrences(b"")) == []
    assert list(enumerate_distinct(b"")) == []


def test_distinct_abaab():
    got = list(enumerate_distinct(b"abaab"))
    assert len(got) == 6
    assert [f for f in got if f.end == 5] == [ClosedFactor(2, 5, 1), ClosedFactor(1, 5, 2)]
    assert {b"abaab"[f.start - 1 : f.end] for f in got} == oracle.distinct_closed_factors(b"abaab")


@pytest.mark.parametrize(
    "s, expected",
    [
        (b"a", [ClosedFactor(1, 1, 0)]),
        (b"aaaa", [ClosedFactor(1, 1, 0), ClosedFactor(1, 2, 1), ClosedFactor(1, 3, 2), ClosedFactor(1, 4, 3)]),
    ],
)
def test_distinct_examples(s, expected):
    assert list(enumerate_distinct(s)) == expected


def check_all(s: bytes):
    n = len(s)
    assert oc_array(s).tolist() == [int(oracle.is_closed(s[i:])) for i in range(n)]
    occ = list(enumerate_occurrences(s))
    assert occ == sorted(oracle.closed_occurrences(s))
    found = list(enumerate_distinct(s))
    factors = [s[f.start - 1 : f.end] for f in found]
    assert len(factors) == len(set(factors)) == count_online(s).total
    assert set(factors) == oracle.distinct_closed_factors(s)
    assert [(f.end, f.border_len) for f in found] == sorted((f.end, f.border_len) for f in found)
    for f in found:
        w = s[f.start - 1 : f.end]
        assert 1 <= f.start <= f.end <= n and f.border_len < len(w)
        assert f.border_len == len(oracle.longest_border(w))
        if f.border_len:
            b = w[: f.border_len]
            assert w.endswith(b) and len(oracle.occurrences(w, b)) == 2


def test_exhaustive_small(small_words):
    for w in small_words:
        check_all(w)


@given(st.binary(min_size=1, max_size=40).map(lambda b: bytes(97 + x % 3 for x in b)))
def test_random(s):
    check_all(s)


def test_longer_random_strings():
    rng = random.Random(8)
    for _ in range(10):
        s = bytes(rng.choice(b"ab") for _ in range(150))
        check_all(s)


def test_small_batches():
    s = bytes(random.Random(1).choice(b"abc") for _ in range(300))
    assert list(enumerate_distinct(s, batch=7)) == list(enumerate_distinct(s))


def test_generic_text():
    words = ingest(["x", "y", "x", "x", "y"])
    got = list(enumerate_distinct(words))
    assert len(got) == 6
    assert oc_array(words).tolist() == oc_array(b"abaab").tolist()
