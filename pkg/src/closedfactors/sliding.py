"""Suffix tree of a sliding window ``T[i..j]``.

The window grows on the right (:meth:`SlidingTree.append_right`) and shrinks
on the left (:meth:`SlidingTree.delete_left`); both report the length of the
longest repeating suffix of the window.

Deleting the leftmost symbol removes the longest suffix of the window. Its leaf
either disappears (and a parent left with one child is merged into that child)
or, when the active point sits on the leaf's edge, the leaf is handed over to
the longest repeating suffix, which just became unique.

Edge labels point into the text buffer. Every internal node keeps the start of
one occurrence of its string inside the window: fresh leaves push their start
up the tree along a binary-counter chain, and nodes still anchored at a
position that expires are moved to their freshest child.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from . import _tree
from ._tree import END, LEAF, LRS, START
from .online import SuffixTree
from .text import EmptyInputError, Window


class SlidingTree(SuffixTree):
    """Window suffix tree; node storage is recycled so it stays O(max width)."""

    def __init__(self, capacity: int = 64):
        super().__init__(capacity, track_labels=True)

    def append_right(self, symbol: int) -> int:
        return self.extend(symbol)

    def delete_left(self) -> int:
        if self.window.empty:
            raise EmptyInputError("cannot delete from an empty window")
        return int(_tree.delete_left(self._arrays, self._text))

    @property
    def window(self) -> Window:
        st = self._arrays.state
        return Window(int(st[START]) + 1, int(st[END]) + 1)

    def window_symbols(self) -> np.ndarray:
        w = self.window
        return self._text[w.start - 1 : w.end]

    def finalize(self):
        raise NotImplementedError("a sliding window tree is never finalized")

    def serialize(self) -> list[tuple]:
        """Canonical dump with leaf starts relative to the window start."""
        return _tree.canonical_dump(self._arrays, self._text, int(self._arrays.state[START]))

    def fingerprint(self) -> np.ndarray:
        return _tree.flat_dump(self._arrays, self._text, int(self._arrays.state[START]))

    def check_labels(self) -> bool:
        """True iff every stored label occurrence lies inside the window."""
        tr = self._arrays
        w = self.window
        nodes = _tree.live_nodes(tr)
        nodes = nodes[nodes != _tree.ROOT]
        depth = tr.depth[nodes].astype(np.int64)
        start = tr.pos[nodes].astype(np.int64)
        stop = np.where(depth == LEAF, w.end, start + depth)
        return bool(np.all(start >= w.start - 1) and np.all(stop <= w.end))


@njit(cache=True)
def _replay(window, fresh, text, ops):
    # ops[k] == 1 appends the next symbol, 0 deletes; returns the first bad step
    j = 0
    for k in range(len(ops)):
        if ops[k] == 1:
            _tree.extend(window, text, j)
            j += 1
        else:
            _tree.delete_left(window, text)
        i = window.state[START]
        _tree.reset(fresh)
        for t in range(i, j):
            _tree.extend(fresh, text, t)
        if window.state[LRS] != fresh.state[LRS]:
            return k
        a = _tree.flat_dump(window, text, i)
        b = _tree.flat_dump(fresh, text, i)
        if len(a) != len(b) or not np.all(a == b):
            return k
    return -1


def audit_against_fresh_build(symbols, ops) -> int:
    """Replay ``ops`` (1 = append next symbol, 0 = delete) on a sliding tree and
    compare it after every step with a tree built from scratch on the window.

    Returns the index of the first mismatching step, or -1.
    """
    text = np.ascontiguousarray(symbols, dtype=np.int32)
    ops = np.ascontiguousarray(ops, dtype=np.int8)
    n = len(text)
    window = _tree.allocate(n, 2 * n + 2, True)
    fresh = _tree.allocate(n, 2 * n + 2, False)
    return int(_replay(window, fresh, text, ops))
