"""Window suffix tree over a fixed text, steered by the static suffix tree.

The small tree of the window ``w = T[i..j]`` keeps no child dictionaries.
Every node ``u`` is tied to the big-tree node with the same string, and every
small edge to the big edge with the same first symbol. To find the child of
``u`` along a string known to occur at position ``s`` of ``T``, ask the big
tree for ``waq(leaf_T(s), strlen(u) + 1)`` and look up which small edge, if
any, is tied to the big edge found. Edge symbols are read through occurrences
taken from the big tree, so labels never refer to expired window positions.
"""

from __future__ import annotations

from collections import namedtuple

import numpy as np
from numba import njit

from . import _tree
from ._tree import (
    ACT, ALEN, EDITS, END, FREE, FREE_HEAD, LEAF, LEAVES_GONE, LEAVES_MADE, LIVE,
    LRS, MERGES, MOVES, NNODES, RELABELS, ROOT, SPLITS, START, STAT_NAMES,
    STATE_SIZE, STATS_SIZE,
)
from .static import StaticIndex, waq
from .text import EmptyInputError, Window

SmallArrays = namedtuple(
    "SmallArrays",
    [
        "parent", "depth", "slink",
        "first_child", "next_sib", "prev_sib", "nchild",
        "leaf_start",   # suffix start of a leaf, -1 for internal nodes
        "big",          # big node spelling the same string (leaf: leaf of T[k..n])
        "big_child",    # lower end of the big edge tied to the incoming edge
        "reverse_link",  # big node -> small node whose incoming edge is tied to it
        "leaf_at",
        "state", "stats",
    ],
)


def allocate(big: StaticIndex, node_capacity: int | None = None) -> SmallArrays:
    size = len(big.arrays.text)
    cap = max(4, node_capacity if node_capacity is not None else 2 * size + 2)
    fields = {f: np.full(cap, -1, dtype=np.int32) for f in SmallArrays._fields[:10]}
    fields["nchild"][:] = 0
    S = SmallArrays(
        **fields,
        reverse_link=np.full(big.node_count, -1, dtype=np.int32),
        leaf_at=np.full(size, -1, dtype=np.int32),
        state=np.zeros(STATE_SIZE, dtype=np.int64),
        stats=np.zeros(STATS_SIZE, dtype=np.int64),
    )
    S.depth[ROOT] = 0
    S.big[ROOT] = ROOT
    S.state[NNODES] = 1
    S.state[FREE_HEAD] = -1
    S.state[END] = -1
    S.state[LIVE] = 1
    return S


# ------------------------------------------------------------ node plumbing

@njit(cache=True)
def _new_node(S):
    st = S.state
    v = st[FREE_HEAD]
    if v >= 0:
        st[FREE_HEAD] = S.slink[v]
    else:
        v = st[NNODES]
        st[NNODES] = v + 1
    st[LIVE] += 1
    S.slink[v] = -1
    S.first_child[v] = -1
    S.next_sib[v] = -1
    S.prev_sib[v] = -1
    S.nchild[v] = 0
    S.leaf_start[v] = -1
    return v


@njit(cache=True)
def _free_node(S, v):
    S.parent[v] = FREE
    S.slink[v] = S.state[FREE_HEAD]
    S.state[FREE_HEAD] = v
    S.state[LIVE] -= 1


@njit(cache=True)
def _link(S, p, v):
    S.parent[v] = p
    head = S.first_child[p]
    S.next_sib[v] = head
    S.prev_sib[v] = -1
    if head >= 0:
        S.prev_sib[head] = v
    S.first_child[p] = v
    S.nchild[p] += 1


@njit(cache=True)
def _unlink(S, p, v):
    a = S.prev_sib[v]
    b = S.next_sib[v]
    if a >= 0:
        S.next_sib[a] = b
    else:
        S.first_child[p] = b
    if b >= 0:
        S.prev_sib[b] = a
    S.nchild[p] -= 1


@njit(cache=True)
def _replace(S, p, old, new):
    S.parent[new] = p
    a = S.prev_sib[old]
    b = S.next_sib[old]
    S.prev_sib[new] = a
    S.next_sib[new] = b
    if a >= 0:
        S.next_sib[a] = new
    else:
        S.first_child[p] = new
    if b >= 0:
        S.prev_sib[b] = new


@njit(cache=True, inline="always")
def _slen(S, v):
    d = S.depth[v]
    if d == LEAF:
        return S.state[END] - S.leaf_start[v] + 1
    return d


@njit(cache=True, inline="always")
def _occ(S, B, v):
    # start of an occurrence in T of the string of v
    k = S.leaf_start[v]
    if k >= 0:
        return k
    return B.pos[S.big[v]]


@njit(cache=True, inline="always")
def _tie(S, v, x):
    S.big_child[v] = x
    S.reverse_link[x] = v


# ----------------------------------------------------------- window updates

@njit(cache=True)
def _canonize(S, B, act, alen, r, last):
    while alen > 0:
        dact = r - alen
        x = waq(B, B.leaf_of[last - r + 1], dact + 1)
        v = S.reverse_link[x]
        el = _slen(S, v) - dact
        if el > alen:
            break
        act = v
        alen -= el
        S.stats[MOVES] += 1
    return act, alen


@njit(cache=True)
def _add_leaf(S, B, p, s, x):
    leaf = _new_node(S)
    S.depth[leaf] = LEAF
    S.leaf_start[leaf] = s
    S.big[leaf] = B.leaf_of[s]
    _link(S, p, leaf)
    _tie(S, leaf, x)
    S.leaf_at[s] = leaf
    S.stats[EDITS] += 2
    S.stats[LEAVES_MADE] += 1


@njit(cache=True)
def extend(S, B, j):
    """Grow the window by ``T[j]`` (0-based); returns the window's lrs length."""
    st = S.state
    text = B.text
    c = text[j]
    act = st[ACT]
    alen = st[ALEN]
    r = st[LRS]
    st[END] = j
    last = -1
    while True:
        s = j - r
        dact = r - alen
        x = waq(B, B.leaf_of[s], dact + 1)
        if alen == 0:
            if last >= 0:
                S.slink[last] = act
                last = -1
            if S.reverse_link[x] >= 0:
                alen = 1
                r += 1
                break
            _add_leaf(S, B, act, s, x)
        else:
            v = S.reverse_link[x]
            nxt = text[_occ(S, B, v) + r]
            if nxt == c:
                if last >= 0:
                    S.slink[last] = act
                    last = -1
                alen += 1
                r += 1
                break
            m = _new_node(S)
            S.depth[m] = r
            S.big[m] = waq(B, B.leaf_of[s], r)
            _replace(S, act, v, m)
            _tie(S, m, x)
            _link(S, m, v)
            _tie(S, v, waq(B, S.big[v], r + 1))
            S.stats[EDITS] += 1
            S.stats[SPLITS] += 1
            _add_leaf(S, B, m, s, waq(B, B.leaf_of[s], r + 1))
            if last >= 0:
                S.slink[last] = m
            last = m
        if r == 0:
            break
        r -= 1
        S.stats[MOVES] += 1
        if act == ROOT:
            alen -= 1
        else:
            act = S.slink[act]
        act, alen = _canonize(S, B, act, alen, r, j - 1)
    act, alen = _canonize(S, B, act, alen, r, j)
    st[ACT] = act
    st[ALEN] = alen
    st[LRS] = r
    return r


@njit(cache=True)
def delete_left(S, B):
    """Drop the leftmost window symbol; returns the new lrs length."""
    st = S.state
    text = B.text
    i = st[START]
    j = st[END]
    act = st[ACT]
    alen = st[ALEN]
    r = st[LRS]
    leaf = S.leaf_at[i]
    p = S.parent[leaf]
    dp = S.depth[p]
    S.leaf_at[i] = -1
    if alen > 0 and act == p and text[j - alen + 1] == text[i + dp]:
        # the lrs ends on this leaf's edge and becomes the leaf's suffix;
        # the tied big edge stays the same since the first symbol agrees
        s2 = j - r + 1
        S.leaf_start[leaf] = s2
        S.big[leaf] = B.leaf_of[s2]
        S.leaf_at[s2] = leaf
        S.stats[RELABELS] += 1
        r -= 1
        S.stats[MOVES] += 1
        if act == ROOT:
            alen -= 1
        else:
            act = S.slink[act]
        act, alen = _canonize(S, B, act, alen, r, j)
    else:
        S.reverse_link[S.big_child[leaf]] = -1
        _unlink(S, p, leaf)
        _free_node(S, leaf)
        S.stats[EDITS] += 2
        S.stats[LEAVES_GONE] += 1
        if p != ROOT and S.nchild[p] == 1:
            c = S.first_child[p]
            g = S.parent[p]
            _unlink(S, p, c)
            _replace(S, g, p, c)
            S.reverse_link[S.big_child[c]] = -1
            _tie(S, c, S.big_child[p])
            if act == p:
                act = g
                alen += dp - S.depth[g]
            _free_node(S, p)
            S.stats[EDITS] += 1
            S.stats[MERGES] += 1
    st[START] = i + 1
    st[ACT] = act
    st[ALEN] = alen
    st[LRS] = r
    return r


# ------------------------------------------------------------------- wrapper

class LinkedWindowTree:
    """Sliding window over the text of a :class:`StaticIndex`.

    ``append_right`` takes the next symbol of that text, so the window always
    equals ``T[i..j]`` for the fixed ``T`` behind the index.
    """

    def __init__(self, big: StaticIndex):
        self.big = big
        self.arrays = allocate(big)

    @property
    def window(self) -> Window:
        st = self.arrays.state
        return Window(int(st[START]) + 1, int(st[END]) + 1)

    def append_right(self, symbol: int | None = None) -> int:
        j = int(self.arrays.state[END]) + 1
        if j >= self.big.n:
            raise IndexError("window cannot grow past the end of the text")
        if symbol is not None and symbol != int(self.big.arrays.text[j]):
            raise ValueError(f"symbol {symbol} differs from T[{j + 1}]")
        return int(extend(self.arrays, self.big.arrays, j))

    def delete_left(self) -> int:
        if self.window.empty:
            raise EmptyInputError("cannot delete from an empty window")
        return int(delete_left(self.arrays, self.big.arrays))

    def lrs_len(self) -> int:
        return int(self.arrays.state[LRS])

    @property
    def node_count(self) -> int:
        return int(self.arrays.state[LIVE])

    def stats(self) -> dict[str, int]:
        return {name: int(self.arrays.stats[k]) for k, name in enumerate(STAT_NAMES)}

    def _live(self) -> np.ndarray:
        n = int(self.arrays.state[NNODES])
        return np.flatnonzero(self.arrays.parent[:n] != FREE)

    def _occ(self, v: int) -> int:
        S = self.arrays
        k = int(S.leaf_start[v])
        return k if k >= 0 else int(self.big.arrays.pos[S.big[v]])

    def _slen(self, v: int) -> int:
        S = self.arrays
        if S.depth[v] == LEAF:
            return int(S.state[END]) - int(S.leaf_start[v]) + 1
        return int(S.depth[v])

    def _children_sorted(self, v: int) -> list[tuple[int, int]]:
        S = self.arrays
        text = self.big.arrays.text
        out = []
        c = int(S.first_child[v])
        while c >= 0:
            out.append((int(text[self._occ(c) + int(S.depth[v])]), c))
            c = int(S.next_sib[c])
        out.sort()
        return out

    def serialize(self) -> list[tuple]:
        """Canonical dump in the same format as the other dynamic trees."""
        S = self.arrays
        text = self.big.arrays.text
        start = int(S.state[START])
        out = []
        stack = [(ROOT, 0)]
        while stack:
            v, level = stack.pop()
            if v != ROOT:
                p = int(S.parent[v])
                occ = self._occ(v)
                label = tuple(int(x) for x in text[occ + int(S.depth[p]) : occ + self._slen(v)])
                leaf = int(S.leaf_start[v]) - start if S.depth[v] == LEAF else None
                out.append((level, label, leaf))
            for _, c in reversed(self._children_sorted(v)):
                stack.append((c, level + 1))
        return out

    def check_links(self) -> bool:
        """Verify that every node and edge is tied to its big-tree counterpart."""
        S = self.arrays
        B = self.big
        text = B.arrays.text
        tied = 0
        for v in self._live():
            v = int(v)
            if v == ROOT:
                continue
            p = int(S.parent[v])
            x = int(S.big_child[v])
            if S.reverse_link[x] != v or B.parent(x) != int(S.big[p]):
                return False
            if text[B.arrays.pos[x] + int(S.depth[p])] != text[self._occ(v) + int(S.depth[p])]:
                return False
            if S.depth[v] == LEAF:
                if int(S.big[v]) != B.leaf_of(int(S.leaf_start[v]) + 1):
                    return False
            else:
                occ = self._occ(v)
                w = tuple(text[occ : occ + int(S.depth[v])])
                if B.strlen(int(S.big[v])) != int(S.depth[v]) or B.path(int(S.big[v])) != w:
                    return False
            tied += 1
        return tied == int(np.count_nonzero(S.reverse_link >= 0))
