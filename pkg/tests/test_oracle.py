from hypothesis import given
from hypothesis import strategies as st

from closedfactors import oracle
from closedfactors.text import ingest

from conftest import all_words

words = st.binary(min_size=1, max_size=10).map(lambda b: bytes(97 + x % 3 for x in b))


def test_occurrences():
    assert oracle.occurrences(b"abaab", b"ab") == [1, 4]
    assert oracle.occurrences(b"abaab", b"a") == [1, 3, 4]
    assert oracle.occurrences(b"abaab", b"") == [1, 2, 3, 4, 5, 6]


def test_longest_border():
    assert oracle.longest_border(b"abaab") == b"ab"
    assert oracle.longest_border(b"ab") == b""
    assert oracle.longest_border(b"aabaa") == b"aa"


def test_is_closed():
    assert oracle.is_closed(b"abaab")
    assert oracle.is_closed(b"a")
    assert not oracle.is_closed(b"ab")
    assert not oracle.is_closed(b"")
    # the longest border "a" occurs three times
    assert not oracle.is_closed(b"abaca")


def test_lrs():
    assert oracle.lrs(b"babcab") == b"ab"
    assert oracle.lrs(b"ab") == b""
    assert oracle.lrs(b"abaab") == b"ab"
    assert oracle.lrs2(b"babcab") == b""
    assert oracle.lrs2(b"aaaa") == b"aa"


def test_distinct_closed_factors():
    assert oracle.distinct_closed_factors(b"abaab") == {b"a", b"b", b"aa", b"aba", b"baab", b"abaab"}
    assert oracle.distinct_closed_factors(b"a") == {b"a"}
    assert oracle.distinct_closed_factors(b"ab") == {b"a", b"b"}


def test_closed_occurrences():
    assert oracle.closed_occurrences(b"aa") == [(1, 1), (2, 2), (1, 2)]
    assert oracle.closed_occurrences(b"ab") == [(1, 1), (2, 2)]
    assert oracle.closed_occurrences(b"a") == [(1, 1)]


def test_accepts_text_objects():
    t = ingest(b"abaab")
    assert len(oracle.distinct_closed_factors(t)) == 6
    assert len(oracle.lrs(t)) == 2


@given(words)
def test_repeating_suffixes_are_those_up_to_lrs(t):
    k = len(oracle.lrs(t))
    for m in range(1, len(t) + 1):
        assert (len(oracle.occurrences(t, t[len(t) - m :])) >= 2) == (m <= k)


@given(words)
def test_longest_border_is_longest(s):
    b = oracle.longest_border(s)
    assert s.startswith(b) and s.endswith(b) and len(b) < len(s)
    assert all(s[:k] != s[len(s) - k :] for k in range(len(b) + 1, len(s)))


def test_closed_suffixes_have_distinct_border_lengths():
    for s in all_words(b"abc", 7):
        lengths = [len(oracle.longest_border(s[i:])) for i in range(len(s)) if oracle.is_closed(s[i:])]
        assert len(lengths) == len(set(lengths)), s


@given(words)
def test_closed_set_matches_filter(t):
    factors = oracle.distinct_factors(t)
    assert oracle.distinct_closed_factors(t) == {f for f in factors if oracle.is_closed(f)}


def test_shape_of_small_trees():
    # leaves of "aab": suffixes aab and ab; b is a leaf too
    assert oracle.suffix_tree_shape(b"aab") == [
        (1, (97,), None),
        (2, (97, 98), 0),
        (2, (98,), 1),
        (1, (98,), 2),
    ]
    # implicit form: "a" is a prefix of "aa" and gets no leaf
    assert oracle.suffix_tree_shape(b"aa") == [(1, (97, 97), 0)]
