"""Ukkonen-style online suffix tree that reports the longest repeating suffix.

Typical use::

    tree = SuffixTree()
    for sym in symbols:
        tree.extend(sym)        # returns |lrs(T[1..i])|
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _tree
from ._tree import ACT, ALEN, END, LEAF, LRS, ROOT
from .text import SYMBOL_DTYPE, SentinelError, Text


@dataclass(frozen=True)
class ActivePoint:
    """Locus of the longest repeating suffix: a node, and optionally an edge
    (by first symbol) with the number of symbols consumed along it."""

    node: int
    edge_symbol: int | None
    offset: int


class SuffixTree:
    """Suffix tree of a growing text.

    Before :meth:`finalize` the tree is implicit: suffixes that repeat may end
    in the middle of an edge. Node ids are stable for the tree's lifetime.
    """

    def __init__(self, capacity: int = 64, track_labels: bool = False):
        self._text = np.zeros(max(capacity, 4), dtype=SYMBOL_DTYPE)
        self._n = 0
        self._arrays = _tree.allocate(len(self._text), 2 * len(self._text) + 2, track_labels)
        self._finalized = False

    @classmethod
    def new(cls, capacity: int = 64) -> "SuffixTree":
        return cls(capacity)

    @classmethod
    def build(cls, text: Text | Iterable[int]) -> "SuffixTree":
        """Tree of a whole text; the tree is left implicit (see :meth:`finalize`)."""
        symbols = text.symbols if isinstance(text, Text) else np.asarray(list(text), dtype=SYMBOL_DTYPE)
        tree = cls(len(symbols) + 1)
        tree.extend_many(symbols)
        return tree

    # -- growth ----------------------------------------------------------

    def _reserve(self, extra: int) -> None:
        need = self._n + extra
        if need > len(self._text):
            grown = np.zeros(max(need, 2 * len(self._text)), dtype=SYMBOL_DTYPE)
            grown[: self._n] = self._text[: self._n]
            self._text = grown
        self._arrays = _tree.reserve(self._arrays, len(self._text), 2 * need + 2)

    def extend(self, symbol: int) -> int:
        """Append one symbol; returns ``|lrs|`` of the text so far."""
        if self._finalized:
            raise RuntimeError("tree is finalized")
        self._reserve(1)
        self._text[self._n] = symbol
        self._n += 1
        return int(_tree.extend(self._arrays, self._text, self._n - 1))

    def extend_many(self, symbols) -> np.ndarray:
        """Append a batch of symbols; returns the lrs length after each."""
        if self._finalized:
            raise RuntimeError("tree is finalized")
        symbols = np.asarray(symbols, dtype=SYMBOL_DTYPE)
        k = len(symbols)
        self._reserve(k)
        lo = self._n
        self._text[lo : lo + k] = symbols
        self._n += k
        out = np.zeros(self._n, dtype=np.int64)
        _tree.extend_range(self._arrays, self._text, lo, self._n, out)
        return out[lo:]

    def finalize(self) -> "SuffixTree":
        """Make the tree explicit. The last symbol must be unique (a sentinel)."""
        if self._n == 0 or self.lrs_len() != 0:
            raise SentinelError("last symbol is not unique; append a sentinel first")
        self._finalized = True
        return self

    # -- queries -----------------------------------------------------------

    def __len__(self) -> int:
        return self._n

    @property
    def text(self) -> np.ndarray:
        return self._text[: self._n]

    @property
    def arrays(self) -> _tree.TreeArrays:
        return self._arrays

    @property
    def finalized(self) -> bool:
        return self._finalized

    @property
    def root(self) -> int:
        return ROOT

    def lrs_len(self) -> int:
        return int(self._arrays.state[LRS])

    def lrs_start(self) -> int:
        """1-based start of the lrs as a suffix (``len + 1`` when it is empty)."""
        return self._n - self.lrs_len() + 1

    def active_point(self) -> ActivePoint:
        st = self._arrays.state
        node, alen = int(st[ACT]), int(st[ALEN])
        if alen == 0:
            return ActivePoint(node, None, 0)
        return ActivePoint(node, int(self._text[self._n - alen]), alen)

    def active_string(self) -> tuple[int, ...]:
        """Symbols spelled from the root to the active point."""
        ap = self.active_point()
        path = self.path(ap.node)
        if ap.edge_symbol is None:
            return path
        child = self.child(ap.node, ap.edge_symbol)
        start = int(self._arrays.pos[child]) + len(path)
        return path + tuple(int(x) for x in self._text[start : start + ap.offset])

    @property
    def node_count(self) -> int:
        return int(self._arrays.state[_tree.LIVE])

    @property
    def leaf_count(self) -> int:
        nodes = _tree.live_nodes(self._arrays)
        return int(np.count_nonzero(self._arrays.depth[nodes] == LEAF))

    def is_leaf(self, v: int) -> bool:
        return int(self._arrays.depth[v]) == LEAF

    def parent(self, v: int) -> int:
        return int(self._arrays.parent[v])

    def suffix_link(self, v: int) -> int | None:
        link = int(self._arrays.slink[v])
        return None if v == ROOT or self.is_leaf(v) or link < 0 else link

    def strlen(self, v: int) -> int:
        return int(_tree.strlen(self._arrays, v, int(self._arrays.state[END])))

    def label(self, v: int) -> tuple[int, int]:
        """1-based inclusive text interval spelling the edge into ``v``."""
        if v == ROOT:
            raise ValueError("the root has no incoming edge")
        start = int(self._arrays.pos[v]) + self.strlen(self.parent(v))
        return start + 1, int(self._arrays.pos[v]) + self.strlen(v)

    def path(self, v: int) -> tuple[int, ...]:
        """``str(v)``: symbols on the path from the root to ``v``."""
        p = int(self._arrays.pos[v])
        return tuple(int(x) for x in self._text[p : p + self.strlen(v)])

    def child(self, v: int, symbol: int) -> int | None:
        c = int(_tree.hget(self._arrays, v, symbol))
        return None if c < 0 else c

    def children(self, v: int) -> list[tuple[int, int]]:
        """``(first symbol, child)`` pairs in symbol order."""
        return _tree.children_sorted(self._arrays, self._text, v)

    def leaf(self, i: int) -> int:
        """Leaf of the suffix starting at 1-based position ``i``."""
        v = int(self._arrays.leaf_at[i - 1])
        if v < 0 or not 1 <= i <= self._n:
            raise KeyError(f"suffix {i} has no leaf")
        return v

    def leaf_start(self, v: int) -> int:
        if not self.is_leaf(v):
            raise ValueError(f"node {v} is not a leaf")
        return int(self._arrays.pos[v]) + 1

    def stats(self) -> dict[str, int]:
        return {name: int(self._arrays.stats[k]) for k, name in enumerate(_tree.STAT_NAMES)}

    def serialize(self) -> list[tuple]:
        """Canonical preorder dump; see :func:`closedfactors._tree.canonical_dump`."""
        return _tree.canonical_dump(self._arrays, self._text)

    def dump(self) -> str:
        lines = []
        for level, label, leaf in self.serialize():
            tail = f"  [{leaf + 1}]" if leaf is not None else ""
            lines.append("  " * (level - 1) + " ".join(map(str, label)) + tail)
        return "\n".join(lines)

    def fingerprint(self) -> np.ndarray:
        """Compiled equivalent of :meth:`serialize` as one flat int array."""
        return _tree.flat_dump(self._arrays, self._text, 0)
