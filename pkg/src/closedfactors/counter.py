"""Counting distinct closed factors.

Going left to right, position ``j`` adds ``d_j`` new distinct closed factors,
all ending at ``j``. With ``t = |lrs(T[1..j])|`` and ``z = |lrs(lrs(T[1..j]))|``
we have ``d_j = t - z`` when ``t > 0`` and ``d_j = 1`` otherwise. ``t`` comes
from a suffix tree of the prefix; ``z`` from a second suffix tree whose window
is slid to the lrs of the prefix at every step. Window starts never move
left, so the window needs at most ``2n`` sliding operations in total.

Two drivers share this scheme. The online one uses dynamic suffix trees with
hashed children and accepts the text in chunks. The offline one builds the
static suffix tree of ``T$`` first (which also yields every ``t``) and runs
the window through :mod:`closedfactors.simulated`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from numba import njit

from . import _tree, simulated
from ._tree import EDITS, LRS, START, STAT_NAMES
from .static import StaticIndex
from .text import SYMBOL_DTYPE, EmptyInputError, Text

# accumulator slots
SUM_T, SUM_Z, J_SIZE, STEPS = range(4)
# the window tree makes at most this many structural edits per text symbol
EDIT_BUDGET = 6


@dataclass(frozen=True)
class Step:
    j: int
    t_len: int
    z_len: int
    d: int


@dataclass
class CountReport:
    """Result of a counting run; ``total = sum_lrs - sum_lrs2 + n - j_set_size``."""

    total: int
    n: int
    j_set_size: int
    sum_lrs: int
    sum_lrs2: int
    per_step: list[Step] | None = None
    window_stats: dict[str, int] = field(default_factory=dict)

    @property
    def d(self) -> tuple[int, ...] | None:
        return None if self.per_step is None else tuple(s.d for s in self.per_step)


def _report(n, acc, t_log, z_log, stats) -> CountReport:
    if stats[EDITS] > EDIT_BUDGET * n:
        raise AssertionError(f"window tree made {int(stats[EDITS])} edits for {n} symbols")
    sum_t, sum_z, jsize = int(acc[SUM_T]), int(acc[SUM_Z]), int(acc[J_SIZE])
    per_step = None
    if t_log is not None:
        per_step = [
            Step(j + 1, int(t), int(z), int(t - z) if t > 0 else 1)
            for j, (t, z) in enumerate(zip(t_log, z_log))
        ]
    return CountReport(
        total=sum_t - sum_z + n - jsize,
        n=n,
        j_set_size=jsize,
        sum_lrs=sum_t,
        sum_lrs2=sum_z,
        per_step=per_step,
        window_stats={name: int(stats[k]) for k, name in enumerate(STAT_NAMES)},
    )


def _symbols(data, alphabet: dict | None = None) -> np.ndarray:
    """Symbol ids for one chunk. Bytes map to byte values, str to code points,
    ints to themselves; anything else goes through ``alphabet`` so that ids
    stay consistent across chunks."""
    if isinstance(data, Text):
        return np.ascontiguousarray(data.symbols[: data.raw_len], dtype=SYMBOL_DTYPE)
    if isinstance(data, (bytes, bytearray, memoryview)):
        return np.frombuffer(bytes(data), dtype=np.uint8).astype(SYMBOL_DTYPE)
    if isinstance(data, np.ndarray):
        return np.ascontiguousarray(data, dtype=SYMBOL_DTYPE)
    if isinstance(data, str):
        return np.array([ord(ch) for ch in data], dtype=SYMBOL_DTYPE)
    items = list(data)
    if all(isinstance(x, (int, np.integer)) for x in items):
        return np.array(items, dtype=SYMBOL_DTYPE)
    if alphabet is None:
        alphabet = {}
    return np.array([alphabet.setdefault(x, len(alphabet)) for x in items], dtype=SYMBOL_DTYPE)


# ------------------------------------------------------------------ drivers

@njit(cache=True)
def _online_steps(prefix, window, text, lo, hi, acc, t_log, z_log, record):
    for j in range(lo, hi):
        t = _tree.extend(prefix, text, j)
        _tree.extend(window, text, j)
        target = j - t + 1
        while window.state[START] < target:
            _tree.delete_left(window, text)
        z = 0
        if t > 0:
            z = window.state[LRS]
            acc[SUM_T] += t
            acc[SUM_Z] += z
            acc[J_SIZE] += 1
        if record:
            t_log[j] = t
            z_log[j] = z
        acc[STEPS] += 1


@njit(cache=True)
def _offline_steps(S, B, t_all, n, acc, t_log, z_log, record):
    for j in range(n):
        t = t_all[j]
        simulated.extend(S, B, j)
        target = j - t + 1
        while S.state[START] < target:
            simulated.delete_left(S, B)
        z = 0
        if t > 0:
            z = S.state[LRS]
            acc[SUM_T] += t
            acc[SUM_Z] += z
            acc[J_SIZE] += 1
        if record:
            t_log[j] = t
            z_log[j] = z
        acc[STEPS] += 1


class OnlineCounter:
    """Streaming counter: feed chunks of symbols, read the count at any time."""

    def __init__(self, per_step: bool = False, capacity: int = 1 << 12):
        self._text = np.zeros(capacity, dtype=SYMBOL_DTYPE)
        self._n = 0
        self._prefix = _tree.allocate(capacity, 2 * capacity + 2, False)
        self._window = _tree.allocate(capacity, 2 * capacity + 2, True)
        self._acc = np.zeros(8, dtype=np.int64)
        self._record = per_step
        self._t_log = np.zeros(capacity if per_step else 0, dtype=np.int64)
        self._z_log = np.zeros(capacity if per_step else 0, dtype=np.int64)
        self._alphabet: dict = {}

    def __len__(self) -> int:
        return self._n

    def _reserve(self, need: int) -> None:
        if need <= len(self._text):
            return
        size = max(need, 2 * len(self._text))
        grown = np.zeros(size, dtype=SYMBOL_DTYPE)
        grown[: self._n] = self._text[: self._n]
        self._text = grown
        self._prefix = _tree.reserve(self._prefix, size, 2 * size + 2)
        self._window = _tree.reserve(self._window, size, 2 * size + 2)
        if self._record:
            self._t_log = np.concatenate([self._t_log, np.zeros(size - len(self._t_log), np.int64)])
            self._z_log = np.concatenate([self._z_log, np.zeros(size - len(self._z_log), np.int64)])

    def feed(self, chunk) -> None:
        symbols = _symbols(chunk, self._alphabet)
        if len(symbols) and symbols.min() < 0:
            raise ValueError("symbol ids must be non-negative")
        k = len(symbols)
        if k == 0:
            return
        self._reserve(self._n + k)
        lo = self._n
        self._text[lo : lo + k] = symbols
        self._n += k
        _online_steps(
            self._prefix, self._window, self._text, lo, self._n,
            self._acc, self._t_log, self._z_log, self._record,
        )

    def push(self, symbol: int) -> None:
        self.feed(np.array([symbol], dtype=SYMBOL_DTYPE))

    @property
    def window_tree(self) -> _tree.TreeArrays:
        return self._window

    def report(self) -> CountReport:
        if self._n == 0:
            raise EmptyInputError("nothing to count")
        logs = (self._t_log[: self._n], self._z_log[: self._n]) if self._record else (None, None)
        return _report(self._n, self._acc, *logs, self._window.stats)


def count_online(data: Text | bytes | str | Iterable, per_step: bool = False) -> CountReport:
    """Count distinct closed factors with the streaming driver."""
    counter = OnlineCounter(per_step)
    if isinstance(data, (Text, bytes, bytearray, memoryview, np.ndarray, str, list, tuple)):
        counter.feed(data)
    else:
        for chunk in data:
            counter.feed(chunk if isinstance(chunk, (bytes, bytearray, np.ndarray)) else [chunk])
    return counter.report()


def count_offline(
    data: Text | bytes | str | Iterable,
    per_step: bool = False,
    index: StaticIndex | None = None,
) -> CountReport:
    """Count distinct closed factors through the static index of ``T$``."""
    if index is None:
        symbols = _symbols(data)
        if len(symbols) == 0:
            raise EmptyInputError("nothing to count")
        index = StaticIndex.from_symbols(symbols)
    n = index.n
    if n == 0:
        raise EmptyInputError("nothing to count")
    S = simulated.allocate(index)
    acc = np.zeros(8, dtype=np.int64)
    t_log = np.zeros(n if per_step else 0, dtype=np.int64)
    z_log = np.zeros(n if per_step else 0, dtype=np.int64)
    _offline_steps(S, index.arrays, index.prefix_lrs, n, acc, t_log, z_log, per_step)
    logs = (t_log, z_log) if per_step else (None, None)
    return _report(n, acc, *logs, S.stats)
