"""Static suffix tree of a sentineled text with ancestor and predecessor queries.

The tree is built with the online construction and then frozen into flat
arrays. Two query structures sit on top:

* weighted ancestor queries (WAQ) with ``strlen`` as the weight, answered by
  binary search along a heavy-path decomposition;
* range predecessor over the left-to-right leaf sequence, answered with a
  wavelet matrix that is built on first use.

Public positions and leaf ranks are 1-based; node ids are plain ints.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numba import njit

from . import _tree
from .text import SYMBOL_DTYPE, SentinelError, Text

FORMAT_VERSION = 1
ROOT = 0

StaticArrays = namedtuple(
    "StaticArrays",
    [
        "text",       # symbols including the sentinel
        "parent",
        "strlen",
        "pos",        # 0-based start of an occurrence of str(v); suffix start for leaves
        "is_leaf",
        "leaf_of",    # 0-based suffix start -> leaf
        "child_ptr",  # CSR over children sorted by first symbol
        "child_list",
        "rank_leaf",  # rank (0-based) -> leaf node
        "leaf_rank",
        "rank_lo",    # subtree leaf ranks, inclusive, 0-based
        "rank_hi",
        "head",       # heavy-path decomposition
        "hpos",
        "hnode",
        "hweight",
    ],
)


@dataclass(frozen=True)
class Locus:
    """Locus of a factor: ``node`` is the highest node whose string has the
    factor as a prefix; ``offset`` counts symbols consumed on its incoming edge."""

    node: int
    offset: int


# ------------------------------------------------------------------ kernels

@njit(cache=True)
def _preorder(child_ptr, child_list, is_leaf, n_nodes):
    n_leaves = 0
    for v in range(n_nodes):
        if is_leaf[v]:
            n_leaves += 1
    leaf_order = np.empty(n_leaves, dtype=np.int32)
    rank_lo = np.empty(n_nodes, dtype=np.int32)
    rank_hi = np.empty(n_nodes, dtype=np.int32)
    stack = np.empty(2 * n_nodes + 2, dtype=np.int64)
    top = 0
    stack[top] = ROOT
    top += 1
    rank = 0
    while top > 0:
        top -= 1
        item = stack[top]
        if item < 0:
            rank_hi[-item - 1] = rank - 1
            continue
        v = item
        rank_lo[v] = rank
        if is_leaf[v]:
            leaf_order[rank] = v
            rank_hi[v] = rank
            rank += 1
            continue
        stack[top] = -v - 1
        top += 1
        for k in range(child_ptr[v + 1] - 1, child_ptr[v] - 1, -1):
            stack[top] = child_list[k]
            top += 1
    return leaf_order, rank_lo, rank_hi


@njit(cache=True)
def _heavy_paths(child_ptr, child_list, rank_lo, rank_hi, strlen, n_nodes):
    head = np.empty(n_nodes, dtype=np.int32)
    hpos = np.empty(n_nodes, dtype=np.int32)
    hnode = np.empty(n_nodes, dtype=np.int32)
    hweight = np.empty(n_nodes, dtype=np.int64)
    stack = np.empty(n_nodes + 1, dtype=np.int64)
    top = 0
    stack[top] = ROOT
    top += 1
    head[ROOT] = ROOT
    k = 0
    while top > 0:
        top -= 1
        v = stack[top]
        hpos[v] = k
        hnode[k] = v
        hweight[k] = strlen[v]
        k += 1
        a, b = child_ptr[v], child_ptr[v + 1]
        if a == b:
            continue
        heavy = child_list[a]
        for t in range(a + 1, b):
            c = child_list[t]
            if rank_hi[c] - rank_lo[c] > rank_hi[heavy] - rank_lo[heavy]:
                heavy = c
        for t in range(a, b):
            c = child_list[t]
            if c != heavy:
                head[c] = c
                stack[top] = c
                top += 1
        # pushed last so the path continues contiguously
        head[heavy] = head[v]
        stack[top] = heavy
        top += 1
    return head, hpos, hnode, hweight


@njit(cache=True)
def waq(S, u, t):
    """Highest ancestor of ``u`` (inclusive) with ``strlen >= t``; needs
    ``1 <= t <= strlen[u]``."""
    v = u
    while True:
        h = S.head[v]
        if h == ROOT or S.strlen[S.parent[h]] < t:
            lo = S.hpos[h]
            hi = S.hpos[v]
            while lo < hi:
                mid = (lo + hi) >> 1
                if S.hweight[mid] >= t:
                    hi = mid
                else:
                    lo = mid + 1
            return S.hnode[lo]
        v = S.parent[h]


@njit(cache=True)
def _wm_build(values, levels):
    n = len(values)
    ones = np.zeros((levels, n + 1), dtype=np.int32)
    zeros = np.zeros(levels, dtype=np.int64)
    cur = values.copy()
    nxt = np.empty_like(cur)
    for lv in range(levels):
        bit = levels - 1 - lv
        acc = 0
        for i in range(n):
            acc += (cur[i] >> bit) & 1
            ones[lv, i + 1] = acc
        z = n - acc
        zeros[lv] = z
        a, b = 0, z
        for i in range(n):
            if (cur[i] >> bit) & 1:
                nxt[b] = cur[i]
                b += 1
            else:
                nxt[a] = cur[i]
                a += 1
        cur, nxt = nxt, cur
    return ones, zeros


@njit(cache=True)
def _wm_predecessor(ones, zeros, levels, lo, hi, x):
    """Largest value ``< x`` among ``values[lo:hi]``, or -1."""
    # count values < x in the range
    l, r, less = lo, hi, 0
    if x >= (1 << levels):
        less = hi - lo
        l = r
    for lv in range(levels):
        if l == r:
            break
        bit = levels - 1 - lv
        ol, orr = ones[lv, l], ones[lv, r]
        if (x >> bit) & 1:
            less += (r - orr) - (l - ol)
            l, r = zeros[lv] + ol, zeros[lv] + orr
        else:
            l, r = l - ol, r - orr
    if less == 0:
        return -1
    # the less-th smallest value of the range
    k = less - 1
    l, r, val = lo, hi, 0
    for lv in range(levels):
        bit = levels - 1 - lv
        ol, orr = ones[lv, l], ones[lv, r]
        nz = (r - orr) - (l - ol)
        if k < nz:
            l, r = l - ol, r - orr
        else:
            k -= nz
            val |= 1 << bit
            l, r = zeros[lv] + ol, zeros[lv] + orr
    return val


# --------------------------------------------------------------------- index

class StaticIndex:
    """Frozen suffix tree of ``T$`` with WAQ and range predecessor support."""

    def __init__(self, arrays: StaticArrays, sigma: int, prefix_lrs: np.ndarray | None = None):
        self.arrays = arrays
        self.sigma = sigma
        self.prefix_lrs = prefix_lrs
        self._wm = None

    @classmethod
    def build(cls, t: Text) -> "StaticIndex":
        if not t.sentinel_present:
            raise SentinelError("static index needs a sentineled text")
        return cls._build(np.ascontiguousarray(t.symbols, dtype=SYMBOL_DTYPE), t.sigma)

    @classmethod
    def from_symbols(cls, symbols: np.ndarray) -> "StaticIndex":
        """Index of raw non-negative ids; appends ``max + 1`` as the sentinel."""
        symbols = np.asarray(symbols, dtype=SYMBOL_DTYPE)
        top = int(symbols.max()) if len(symbols) else -1
        sigma = len(np.unique(symbols)) + 1
        return cls._build(np.append(symbols, SYMBOL_DTYPE(top + 1)).astype(SYMBOL_DTYPE), sigma)

    @classmethod
    def _build(cls, text: np.ndarray, sigma: int) -> "StaticIndex":
        size = len(text)
        tr = _tree.allocate(size, 2 * size + 2, False)
        lrs = np.zeros(size, dtype=np.int64)
        _tree.extend_range(tr, text, 0, size, lrs)
        if lrs[-1] != 0:
            raise SentinelError("last symbol is not unique")
        return cls(_freeze(tr, text), sigma, lrs[:-1].copy())

    # -- sizes and node accessors ----------------------------------------

    @property
    def n(self) -> int:
        """Length of the text without the sentinel."""
        return len(self.arrays.text) - 1

    @property
    def node_count(self) -> int:
        return len(self.arrays.parent)

    @property
    def leaf_count(self) -> int:
        return len(self.arrays.rank_leaf)

    @property
    def root(self) -> int:
        return ROOT

    def parent(self, v: int) -> int:
        return int(self.arrays.parent[v])

    def strlen(self, v: int) -> int:
        return int(self.arrays.strlen[v])

    def is_leaf(self, v: int) -> bool:
        return bool(self.arrays.is_leaf[v])

    def children(self, v: int) -> list[int]:
        a = self.arrays
        return [int(c) for c in a.child_list[a.child_ptr[v] : a.child_ptr[v + 1]]]

    def path(self, v: int) -> tuple[int, ...]:
        a = self.arrays
        p = int(a.pos[v])
        return tuple(int(x) for x in a.text[p : p + int(a.strlen[v])])

    def leaf_of(self, i: int) -> int:
        if not 1 <= i <= self.n + 1:
            raise IndexError(f"position {i} outside [1, {self.n + 1}]")
        return int(self.arrays.leaf_of[i - 1])

    def leaf_start(self, v: int) -> int:
        if not self.is_leaf(v):
            raise ValueError(f"node {v} is not a leaf")
        return int(self.arrays.pos[v]) + 1

    @property
    def leaf_order(self) -> np.ndarray:
        """1-based suffix starts in left-to-right leaf order."""
        return self.arrays.pos[self.arrays.rank_leaf].astype(np.int64) + 1

    def leaf_rank(self, i: int) -> int:
        return int(self.arrays.leaf_rank[i - 1]) + 1

    # -- queries ----------------------------------------------------------

    def waq(self, u: int, t: int) -> int:
        if not 1 <= t <= self.strlen(u):
            raise ValueError(f"threshold {t} outside [1, {self.strlen(u)}]")
        return int(waq(self.arrays, u, t))

    def locus(self, i: int, length: int) -> Locus:
        if length < 1 or i < 1 or i + length - 1 > self.n + 1:
            raise IndexError(f"factor ({i}, {length}) outside the text")
        v = self.waq(self.leaf_of(i), length)
        return Locus(v, length - self.strlen(self.parent(v)))

    def subtree_leaf_range(self, v: int) -> tuple[int, int]:
        a = self.arrays
        return int(a.rank_lo[v]) + 1, int(a.rank_hi[v]) + 1

    def _wavelet(self):
        if self._wm is None:
            values = self.arrays.pos[self.arrays.rank_leaf].astype(np.int64)
            levels = max(1, int(values.max()).bit_length())
            ones, zeros = _wm_build(values, levels)
            self._wm = (ones, zeros, levels)
        return self._wm

    def range_predecessor(self, rank_lo: int, rank_hi: int, pos: int) -> int | None:
        """Largest suffix start ``p < pos`` whose leaf rank is in the range."""
        if not 1 <= rank_lo <= rank_hi <= self.leaf_count:
            raise ValueError(f"invalid rank range [{rank_lo}, {rank_hi}]")
        ones, zeros, levels = self._wavelet()
        p = _wm_predecessor(ones, zeros, levels, rank_lo - 1, rank_hi, pos - 1)
        return None if p < 0 else int(p) + 1

    # -- persistence ------------------------------------------------------

    def save(self, path: str | Path) -> None:
        header = np.array([FORMAT_VERSION, self.n, self.sigma], dtype=np.int64)
        extra = {} if self.prefix_lrs is None else {"prefix_lrs": self.prefix_lrs}
        with open(path, "wb") as fh:
            np.savez(fh, header=header, **self.arrays._asdict(), **extra)

    @classmethod
    def load(cls, path: str | Path) -> "StaticIndex":
        with np.load(path) as data:
            version, n, sigma = (int(x) for x in data["header"])
            if version != FORMAT_VERSION:
                raise ValueError(f"unsupported index format version {version}")
            arrays = StaticArrays(**{f: data[f] for f in StaticArrays._fields})
            prefix_lrs = data["prefix_lrs"] if "prefix_lrs" in data.files else None
        if len(arrays.text) != n + 1:
            raise ValueError("index header does not match its arrays")
        return cls(arrays, sigma, prefix_lrs)


def _freeze(tr: _tree.TreeArrays, text: np.ndarray) -> StaticArrays:
    size = len(text)
    n_nodes = int(tr.state[_tree.NNODES])
    parent = tr.parent[:n_nodes].copy()
    pos = tr.pos[:n_nodes].copy()
    depth = tr.depth[:n_nodes].astype(np.int64)
    is_leaf = depth == _tree.LEAF
    strlen = np.where(is_leaf, size - pos, depth)
    strlen[ROOT] = 0

    nonroot = np.arange(1, n_nodes)
    first = text[pos[nonroot] + strlen[parent[nonroot]]]
    order = np.lexsort((first, parent[nonroot]))
    child_list = nonroot[order].astype(np.int32)
    child_ptr = np.zeros(n_nodes + 1, dtype=np.int64)
    np.cumsum(np.bincount(parent[nonroot], minlength=n_nodes), out=child_ptr[1:])

    leaf_nodes, rank_lo, rank_hi = _preorder(child_ptr, child_list, is_leaf, n_nodes)
    leaf_rank = np.empty(size, dtype=np.int32)
    leaf_rank[pos[leaf_nodes]] = np.arange(size, dtype=np.int32)
    head, hpos, hnode, hweight = _heavy_paths(child_ptr, child_list, rank_lo, rank_hi, strlen, n_nodes)
    parent[ROOT] = ROOT
    return StaticArrays(
        text=text,
        parent=parent,
        strlen=strlen,
        pos=pos,
        is_leaf=is_leaf,
        leaf_of=tr.leaf_at[:size].copy(),
        child_ptr=child_ptr,
        child_list=child_list,
        rank_leaf=leaf_nodes,
        leaf_rank=leaf_rank,
        rank_lo=rank_lo,
        rank_hi=rank_hi,
        head=head,
        hpos=hpos,
        hnode=hnode,
        hweight=hweight,
    )
