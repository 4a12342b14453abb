"""Brute-force reference implementations.

Everything here works on plain sequences (``str``, ``bytes``, tuples of ids)
by direct comparison of slices. Nothing is shared with the tree code, so the
functions can serve as ground truth in tests. Complexity is polynomial but
high; keep inputs short.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .text import Text


def _seq(t):
    if isinstance(t, Text):
        return tuple(int(x) for x in t.symbols[: t.raw_len])
    if isinstance(t, (bytes, bytearray)):
        return bytes(t)
    return t


def occurrences(t: Sequence, s: Sequence) -> list[int]:
    """1-based starting positions of ``s`` in ``t``; the empty string occurs
    at all ``len(t) + 1`` positions."""
    t, s = _seq(t), _seq(s)
    m = len(s)
    return [i + 1 for i in range(len(t) - m + 1) if t[i : i + m] == s]


def longest_border(s: Sequence) -> Sequence:
    """Longest proper prefix of ``s`` that is also a suffix."""
    s = _seq(s)
    for k in range(len(s) - 1, 0, -1):
        if s[:k] == s[len(s) - k :]:
            return s[:k]
    return s[:0]


def borders(s: Sequence) -> list:
    s = _seq(s)
    return [s[:k] for k in range(len(s)) if s[:k] == s[len(s) - k :]]


@lru_cache(maxsize=1 << 20)
def _is_closed(s) -> bool:
    if len(s) == 1:
        return True
    return any(len(occurrences(s, b)) == 2 for b in borders(s))


def is_closed(s: Sequence) -> bool:
    """True iff ``|s| == 1`` or some border of ``s`` occurs exactly twice."""
    s = _seq(s)
    if len(s) == 0:
        return False
    return _is_closed(s)


def lrs(s: Sequence) -> Sequence:
    """Longest suffix of ``s`` occurring at least twice in ``s``."""
    s = _seq(s)
    for k in range(len(s), 0, -1):
        if len(occurrences(s, s[len(s) - k :])) >= 2:
            return s[len(s) - k :]
    return s[:0]


def lrs2(s: Sequence) -> Sequence:
    return lrs(lrs(s))


def distinct_factors(t: Sequence) -> set:
    t = _seq(t)
    n = len(t)
    return {t[i:j] for i in range(n) for j in range(i + 1, n + 1)}


def distinct_closed_factors(t: Sequence) -> frozenset:
    """The set of distinct closed factors, deduplicated by content."""
    return frozenset(f for f in distinct_factors(t) if is_closed(f))


def closed_occurrences(t: Sequence) -> list[tuple[int, int]]:
    """All 1-based ``(p, q)`` with ``t[p..q]`` closed, ordered by length then start."""
    t = _seq(t)
    n = len(t)
    return [
        (i + 1, i + length)
        for length in range(1, n + 1)
        for i in range(n - length + 1)
        if is_closed(t[i : i + length])
    ]


def suffix_tree_shape(t: Sequence) -> list[tuple]:
    """Implicit suffix tree of ``t`` from first principles.

    Internal nodes are the right-branching factors; leaves are the suffixes
    occurring once. The result uses the preorder format of
    :func:`closedfactors._tree.canonical_dump`: ``(level, label, leaf)`` with
    children in symbol order and ``leaf`` the 0-based suffix start.
    """
    t = tuple(_seq(t))
    n = len(t)
    ext: dict = {}
    for i in range(n):
        for k in range(i, n):
            ext.setdefault(t[i:k], set()).add(t[k])
    nodes = {x: None for x, follow in ext.items() if len(follow) >= 2 and x}
    for s in range(n):
        if len(occurrences(t, t[s:])) == 1:
            nodes[t[s:]] = s
    children: dict = {(): []}
    for x in nodes:
        parent = next(x[:k] for k in range(len(x) - 1, -1, -1) if k == 0 or x[:k] in nodes)
        children.setdefault(parent, []).append(x)
    out = []

    def walk(x, level):
        for y in sorted(children.get(x, []), key=lambda y: y[len(x)]):
            out.append((level, y[len(x):], nodes[y]))
            walk(y, level + 1)

    walk((), 1)
    return out
