"""Enumerating closed factors.

All occurrences. A string ``s`` with ``|s| >= 2`` is closed iff its longest
border ``b`` is non-empty and ``b`` occurs only twice in ``s``. The second
condition fails exactly when ``b`` is a repeating suffix of ``s[2..]``, that is
when ``|lrs(s[2..])| >= |b|``. So for each start ``p`` one failure-function
pass over ``T[p..n]`` and one online suffix tree over ``T[p+1..n]`` classify
every prefix ``T[p..q]``, in O(n) per start.

Distinct factors. The factors counted at step ``j`` are ``T[p..j]`` where
``T[j-l+1..j]`` is a border of length ``l`` in ``(z_j, t_j]`` and ``p`` is the
nearest earlier occurrence of that border, found by a range predecessor query
over the leaves below the border's locus in the static suffix tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np
from numba import njit

from . import _tree
from .counter import count_offline
from .static import StaticIndex, _wm_predecessor, waq
from .text import SYMBOL_DTYPE, EmptyInputError, Text, ingest


@dataclass(frozen=True)
class ClosedFactor:
    """``T[start..end]`` (1-based, inclusive) with its longest border length."""

    start: int
    end: int
    border_len: int

    def __len__(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True)
class OCArray:
    """``bits[i]`` tells whether the suffix starting at ``i + 1`` is closed."""

    bits: np.ndarray

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i):
        return self.bits[i]

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    def tolist(self) -> list[int]:
        return [int(b) for b in self.bits]


def _as_symbols(data) -> np.ndarray:
    if isinstance(data, Text):
        return np.ascontiguousarray(data.symbols[: data.raw_len], dtype=SYMBOL_DTYPE)
    if isinstance(data, np.ndarray):
        return np.ascontiguousarray(data, dtype=SYMBOL_DTYPE)
    return ingest(data, allow_empty=True).symbols


# ----------------------------------------------------------- closed prefixes

@njit(cache=True)
def _closed_prefixes(tr, text, p, fail, out):
    """``out[k]`` is set iff ``text[p .. p+k]`` is closed."""
    n = len(text)
    m = n - p
    out[0] = True
    if m == 1:
        return
    _tree.reset(tr)
    fail[0] = 0
    k = 0
    for q in range(1, m):
        c = text[p + q]
        while k > 0 and text[p + k] != c:
            k = fail[k - 1]
        if text[p + k] == c:
            k += 1
        fail[q] = k
        # lrs of text[p+1 .. p+q]
        r = _tree.extend(tr, text, p + q)
        out[q] = k > 0 and r < k


class _PrefixScanner:
    def __init__(self, symbols: np.ndarray):
        self.text = symbols
        n = len(symbols)
        self.tree = _tree.allocate(n, 2 * n + 2, False)
        self.fail = np.zeros(max(n, 1), dtype=np.int64)

    def flags(self, p: int) -> np.ndarray:
        out = np.zeros(len(self.text) - p, dtype=np.bool_)
        _closed_prefixes(self.tree, self.text, p, self.fail, out)
        return out


def closed_prefix_flags(s) -> np.ndarray:
    """``flags[k]`` is True iff the prefix of length ``k + 1`` is closed."""
    symbols = _as_symbols(s)
    if len(symbols) == 0:
        raise EmptyInputError("empty string")
    return _PrefixScanner(symbols).flags(0)


def oc_array(s) -> OCArray:
    """Open-close array: which suffixes of ``s`` are closed.

    Closedness survives reversal, so suffix ``s[i..]`` is closed iff the
    matching prefix of the reversed string is.
    """
    symbols = _as_symbols(s)
    if len(symbols) == 0:
        raise EmptyInputError("empty string")
    flags = closed_prefix_flags(np.ascontiguousarray(symbols[::-1]))
    return OCArray(flags[::-1].copy())


def enumerate_occurrences(t) -> Iterator[tuple[int, int]]:
    """All 1-based ``(p, q)`` with ``T[p..q]`` closed, by start then end."""
    symbols = _as_symbols(t)
    if len(symbols) == 0:
        return
    scanner = _PrefixScanner(symbols)
    for p in range(len(symbols)):
        for k in np.flatnonzero(scanner.flags(p)):
            yield p + 1, p + 1 + int(k)


# ---------------------------------------------------------- distinct factors

@njit(cache=True)
def _distinct_batch(B, ones, zeros, levels, t_log, z_log, jlo, jhi, out_p, out_j, out_l):
    k = 0
    for j in range(jlo, jhi):
        t = t_log[j]
        if t == 0:
            out_p[k] = j
            out_j[k] = j
            out_l[k] = 0
            k += 1
            continue
        for l in range(z_log[j] + 1, t + 1):
            i = j - l + 1
            v = waq(B, B.leaf_of[i], l)
            p = _wm_predecessor(ones, zeros, levels, B.rank_lo[v], B.rank_hi[v] + 1, i)
            out_p[k] = p
            out_j[k] = j
            out_l[k] = l
            k += 1
    return k


def enumerate_distinct(
    t, index: StaticIndex | None = None, batch: int = 1 << 20
) -> Iterator[ClosedFactor]:
    """One occurrence of every distinct closed factor, by end then border length."""
    if index is None:
        symbols = _as_symbols(t)
        if len(symbols) == 0:
            return
        index = StaticIndex.from_symbols(symbols)
    report = count_offline(None, per_step=True, index=index)
    t_log = np.array([s.t_len for s in report.per_step], dtype=np.int64)
    z_log = np.array([s.z_len for s in report.per_step], dtype=np.int64)
    d = np.where(t_log > 0, t_log - z_log, 1)
    ends = np.cumsum(d)
    ones, zeros, levels = index._wavelet()
    n = index.n
    jlo = 0
    while jlo < n:
        base = ends[jlo - 1] if jlo else 0
        # grow the batch of steps until it holds about `batch` factors
        jhi = max(jlo + 1, int(np.searchsorted(ends, base + batch, side="right")))
        size = int(ends[jhi - 1] - base)
        out_p = np.empty(size, dtype=np.int64)
        out_j = np.empty(size, dtype=np.int64)
        out_l = np.empty(size, dtype=np.int64)
        k = _distinct_batch(
            index.arrays, ones, zeros, levels, t_log, z_log, jlo, jhi, out_p, out_j, out_l
        )
        for p, j, l in zip(out_p[:k].tolist(), out_j[:k].tolist(), out_l[:k].tolist()):
            yield ClosedFactor(p + 1, j + 1, l)
        jlo = jhi
