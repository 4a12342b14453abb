"""Array storage and kernels shared by the dynamic suffix trees.

A tree lives in a :class:`TreeArrays` bundle of flat numpy arrays so that the
hot loops can be compiled with numba. Node 0 is the root. For every non-root
node ``v``:

* ``parent[v]`` is its parent (``FREE`` once the slot is recycled);
* ``depth[v]`` is ``strlen(v)`` for internal nodes and ``LEAF`` for leaves,
  whose length grows implicitly with the current end of the text;
* ``pos[v]`` is the 0-based start of an occurrence of ``str(v)``. For a leaf
  it is the start of the suffix the leaf stands for. The incoming edge label
  is ``text[pos[v] + strlen(parent) : pos[v] + strlen(v)]``.

Children are found through an open-addressing table keyed by
``(node, first symbol)`` and enumerated through doubly linked sibling lists.

When ``state[TRACK]`` is set (sliding windows) every internal node also sits
in a per-position watch list keyed by ``pos[v]``, so that nodes whose label
occurrence is about to leave the window can be re-anchored.

``stats[EDITS]`` counts structural edits: a leaf arrives with its edge (2), a
split places one branching node on an existing edge (1), and removals mirror
these. At most one leaf is ever made per text position, splits never outnumber
leaves made and removals never outnumber insertions, so a run over ``n``
symbols makes at most ``6n`` edits.
"""

from __future__ import annotations

from collections import namedtuple

import numpy as np
from numba import njit

ROOT = 0
LEAF = -1
FREE = -2
EMPTY_KEY = -1

# state slots
NNODES, FREE_HEAD, ACT, ALEN, LRS, END, START, LIVE, TRACK, HSHIFT = range(10)
STATE_SIZE = 16

# stats slots
EDITS, SPLITS, LEAVES_MADE, LEAVES_GONE, MERGES, RELABELS, MOVES, REPAIRS, CHAIN = range(9)
STATS_SIZE = 16
STAT_NAMES = (
    "edits", "splits", "leaves_made", "leaves_gone", "merges",
    "relabels", "moves", "repairs", "chain",
)

TreeArrays = namedtuple(
    "TreeArrays",
    [
        "parent", "depth", "pos", "slink",
        "first_child", "next_sib", "prev_sib", "nchild",
        "hkeys", "hvals",
        "leaf_at",
        "cred", "w_head", "w_next", "w_prev",
        "state", "stats",
    ],
)

_NODE_FIELDS = ("parent", "depth", "pos", "slink", "first_child", "next_sib", "prev_sib", "nchild")
_TRACK_NODE_FIELDS = ("cred", "w_next", "w_prev")


def _table_bits(node_capacity: int) -> int:
    return max(4, int(2 * node_capacity - 1).bit_length())


def allocate(text_capacity: int, node_capacity: int, track: bool) -> TreeArrays:
    """Fresh arrays holding a root-only tree."""
    node_capacity = max(node_capacity, 4)
    bits = _table_bits(node_capacity)
    nodes = {f: np.full(node_capacity, -1, dtype=np.int32) for f in _NODE_FIELDS}
    nodes["nchild"][:] = 0
    tracked_nodes = node_capacity if track else 0
    tr = TreeArrays(
        **nodes,
        hkeys=np.full(1 << bits, EMPTY_KEY, dtype=np.int64),
        hvals=np.full(1 << bits, -1, dtype=np.int32),
        leaf_at=np.full(text_capacity, -1, dtype=np.int32),
        cred=np.zeros(tracked_nodes, dtype=np.int8),
        w_head=np.full(text_capacity if track else 0, -1, dtype=np.int32),
        w_next=np.full(tracked_nodes, -1, dtype=np.int32),
        w_prev=np.full(tracked_nodes, -1, dtype=np.int32),
        state=np.zeros(STATE_SIZE, dtype=np.int64),
        stats=np.zeros(STATS_SIZE, dtype=np.int64),
    )
    tr.depth[ROOT] = 0
    tr.pos[ROOT] = 0
    st = tr.state
    st[NNODES] = 1
    st[FREE_HEAD] = -1
    st[ACT] = ROOT
    st[END] = -1
    st[LIVE] = 1
    st[TRACK] = int(track)
    st[HSHIFT] = 64 - bits
    return tr


def _grow(arr: np.ndarray, size: int, fill) -> np.ndarray:
    out = np.full(size, fill, dtype=arr.dtype)
    out[: len(arr)] = arr
    return out


def reserve(tr: TreeArrays, text_capacity: int, node_capacity: int) -> TreeArrays:
    """Return arrays with room for the given capacities (may be ``tr`` itself)."""
    fields = tr._asdict()
    changed = False
    track = bool(tr.state[TRACK])
    if text_capacity > len(tr.leaf_at):
        size = max(text_capacity, 2 * len(tr.leaf_at))
        fields["leaf_at"] = _grow(tr.leaf_at, size, -1)
        if track:
            fields["w_head"] = _grow(tr.w_head, size, -1)
        changed = True
    if node_capacity > len(tr.parent):
        size = max(node_capacity, 2 * len(tr.parent))
        for f in _NODE_FIELDS:
            fields[f] = _grow(fields[f], size, 0 if f == "nchild" else -1)
        if track:
            for f in _TRACK_NODE_FIELDS:
                fields[f] = _grow(fields[f], size, 0 if f == "cred" else -1)
        bits = _table_bits(size)
        if (1 << bits) > len(tr.hkeys):
            keys = np.full(1 << bits, EMPTY_KEY, dtype=np.int64)
            vals = np.full(1 << bits, -1, dtype=np.int32)
            _rehash(tr.hkeys, tr.hvals, keys, vals, 64 - bits)
            fields["hkeys"], fields["hvals"] = keys, vals
            tr.state[HSHIFT] = 64 - bits
        changed = True
    return TreeArrays(**fields) if changed else tr


# ---------------------------------------------------------------- hash table

@njit(cache=True, inline="always")
def _slot(key, shift):
    return np.int64((np.uint64(key) * np.uint64(0x9E3779B97F4A7C15)) >> np.uint64(shift))


@njit(cache=True)
def _rehash(old_keys, old_vals, keys, vals, shift):
    mask = len(keys) - 1
    for k in range(len(old_keys)):
        key = old_keys[k]
        if key == EMPTY_KEY:
            continue
        i = _slot(key, shift)
        while keys[i] != EMPTY_KEY:
            i = (i + 1) & mask
        keys[i] = key
        vals[i] = old_vals[k]


@njit(cache=True, inline="always")
def _key(v, sym):
    return (np.int64(v) << 32) | np.int64(sym)


@njit(cache=True)
def hget(tr, v, sym):
    key = _key(v, sym)
    keys = tr.hkeys
    mask = len(keys) - 1
    i = _slot(key, tr.state[HSHIFT])
    while keys[i] != EMPTY_KEY:
        if keys[i] == key:
            return tr.hvals[i]
        i = (i + 1) & mask
    return -1


@njit(cache=True)
def _hput(tr, v, sym, child):
    key = _key(v, sym)
    keys = tr.hkeys
    mask = len(keys) - 1
    i = _slot(key, tr.state[HSHIFT])
    while keys[i] != EMPTY_KEY and keys[i] != key:
        i = (i + 1) & mask
    keys[i] = key
    tr.hvals[i] = child


@njit(cache=True)
def _hdel(tr, v, sym):
    key = _key(v, sym)
    keys = tr.hkeys
    vals = tr.hvals
    mask = len(keys) - 1
    shift = tr.state[HSHIFT]
    i = _slot(key, shift)
    while keys[i] != key:
        i = (i + 1) & mask
    # backward-shift deletion keeps probe sequences intact without tombstones
    j = i
    while True:
        j = (j + 1) & mask
        if keys[j] == EMPTY_KEY:
            break
        home = _slot(keys[j], shift)
        if i <= j:
            stays = i < home <= j
        else:
            stays = home > i or home <= j
        if stays:
            continue
        keys[i] = keys[j]
        vals[i] = vals[j]
        i = j
    keys[i] = EMPTY_KEY
    vals[i] = -1


# ------------------------------------------------------------ node plumbing

@njit(cache=True)
def new_node(tr):
    st = tr.state
    v = st[FREE_HEAD]
    if v >= 0:
        st[FREE_HEAD] = tr.slink[v]
    else:
        v = st[NNODES]
        st[NNODES] = v + 1
    st[LIVE] += 1
    tr.slink[v] = -1
    tr.first_child[v] = -1
    tr.next_sib[v] = -1
    tr.prev_sib[v] = -1
    tr.nchild[v] = 0
    if st[TRACK]:
        tr.cred[v] = 0
        tr.w_next[v] = -1
        tr.w_prev[v] = -1
    return v


@njit(cache=True)
def free_node(tr, v):
    st = tr.state
    tr.parent[v] = FREE
    tr.slink[v] = st[FREE_HEAD]
    st[FREE_HEAD] = v
    st[LIVE] -= 1


@njit(cache=True)
def link_child(tr, p, sym, v):
    _hput(tr, p, sym, v)
    tr.parent[v] = p
    head = tr.first_child[p]
    tr.next_sib[v] = head
    tr.prev_sib[v] = -1
    if head >= 0:
        tr.prev_sib[head] = v
    tr.first_child[p] = v
    tr.nchild[p] += 1


@njit(cache=True)
def unlink_child(tr, p, sym, v):
    _hdel(tr, p, sym)
    a = tr.prev_sib[v]
    b = tr.next_sib[v]
    if a >= 0:
        tr.next_sib[a] = b
    else:
        tr.first_child[p] = b
    if b >= 0:
        tr.prev_sib[b] = a
    tr.nchild[p] -= 1


@njit(cache=True)
def replace_child(tr, p, sym, old, new):
    _hput(tr, p, sym, new)
    tr.parent[new] = p
    a = tr.prev_sib[old]
    b = tr.next_sib[old]
    tr.prev_sib[new] = a
    tr.next_sib[new] = b
    if a >= 0:
        tr.next_sib[a] = new
    else:
        tr.first_child[p] = new
    if b >= 0:
        tr.prev_sib[b] = new


@njit(cache=True, inline="always")
def strlen(tr, v, end):
    d = tr.depth[v]
    if d == LEAF:
        return end - tr.pos[v] + 1
    return d


# ------------------------------------------------------- label re-anchoring

@njit(cache=True)
def _watch(tr, v, k):
    head = tr.w_head[k]
    tr.w_prev[v] = -1
    tr.w_next[v] = head
    if head >= 0:
        tr.w_prev[head] = v
    tr.w_head[k] = v


@njit(cache=True)
def _unwatch(tr, v):
    a = tr.w_prev[v]
    b = tr.w_next[v]
    if a >= 0:
        tr.w_next[a] = b
    else:
        tr.w_head[tr.pos[v]] = b
    if b >= 0:
        tr.w_prev[b] = a


@njit(cache=True)
def _setpos(tr, v, k):
    _unwatch(tr, v)
    tr.pos[v] = k
    _watch(tr, v, k)


@njit(cache=True)
def _credit(tr, v, k):
    # binary-counter propagation of a fresh occurrence towards the root
    while v != ROOT:
        tr.stats[CHAIN] += 1
        if tr.pos[v] < k:
            _setpos(tr, v, k)
        if tr.cred[v] == 0:
            tr.cred[v] = 1
            return
        tr.cred[v] = 0
        v = tr.parent[v]


@njit(cache=True)
def _repair(tr, i):
    # every node anchored at the expiring position i moves to its freshest
    # child; such nodes lie on one root path, so fix the deepest first
    k = 0
    v = tr.w_head[i]
    while v >= 0:
        k += 1
        v = tr.w_next[v]
    if k == 0:
        return
    order = np.empty(k, dtype=np.int64)
    keys = np.empty(k, dtype=np.int64)
    v = tr.w_head[i]
    for t in range(k):
        order[t] = v
        keys[t] = -tr.depth[v]
        v = tr.w_next[v]
    order = order[np.argsort(keys)]
    for t in range(k):
        v = order[t]
        best = -1
        c = tr.first_child[v]
        while c >= 0:
            if tr.pos[c] > best:
                best = tr.pos[c]
            c = tr.next_sib[c]
        _setpos(tr, v, best)
        tr.stats[REPAIRS] += 1


# ------------------------------------------------------------- Ukkonen step

@njit(cache=True)
def _canonize(tr, text, act, alen, r, last):
    """Descend so that ``act`` is the deepest node above the locus of
    ``text[last - r + 1 .. last]``; returns the new ``(act, alen)``."""
    while alen > 0:
        v = hget(tr, act, text[last - alen + 1])
        el = strlen(tr, v, tr.state[END]) - (r - alen)
        if el > alen:
            break
        act = v
        alen -= el
        tr.stats[MOVES] += 1
    return act, alen


@njit(cache=True)
def _add_leaf(tr, p, sym, s):
    leaf = new_node(tr)
    tr.depth[leaf] = LEAF
    tr.pos[leaf] = s
    link_child(tr, p, sym, leaf)
    tr.leaf_at[s] = leaf
    tr.stats[EDITS] += 2
    tr.stats[LEAVES_MADE] += 1
    if tr.state[TRACK] and p != ROOT:
        _credit(tr, p, s)
    return leaf


@njit(cache=True)
def extend(tr, text, j):
    """Append ``text[j]`` to a tree over ``text[start .. j-1]``.

    Returns the length of the longest repeating suffix afterwards.
    """
    st = tr.state
    track = st[TRACK] != 0
    c = text[j]
    act = st[ACT]
    alen = st[ALEN]
    r = st[LRS]
    st[END] = j
    last = -1
    while True:
        s = j - r
        if alen == 0:
            if last >= 0:
                tr.slink[last] = act
                last = -1
            if hget(tr, act, c) >= 0:
                alen = 1
                r += 1
                break
            _add_leaf(tr, act, c, s)
        else:
            sym = text[j - alen]
            v = hget(tr, act, sym)
            dact = r - alen
            nxt = text[tr.pos[v] + dact + alen]
            if nxt == c:
                if last >= 0:
                    tr.slink[last] = act
                    last = -1
                alen += 1
                r += 1
                break
            m = new_node(tr)
            tr.depth[m] = r
            tr.pos[m] = s
            replace_child(tr, act, sym, v, m)
            link_child(tr, m, nxt, v)
            tr.stats[EDITS] += 1
            tr.stats[SPLITS] += 1
            if track:
                _watch(tr, m, s)
            _add_leaf(tr, m, c, s)
            if last >= 0:
                tr.slink[last] = m
            last = m
        if r == 0:
            break
        r -= 1
        tr.stats[MOVES] += 1
        if act == ROOT:
            alen -= 1
        else:
            act = tr.slink[act]
        act, alen = _canonize(tr, text, act, alen, r, j - 1)
    act, alen = _canonize(tr, text, act, alen, r, j)
    st[ACT] = act
    st[ALEN] = alen
    st[LRS] = r
    return r


@njit(cache=True)
def extend_range(tr, text, lo, hi, out):
    """Run :func:`extend` for ``j`` in ``[lo, hi)``, recording lrs lengths."""
    for j in range(lo, hi):
        out[j] = extend(tr, text, j)


@njit(cache=True)
def delete_left(tr, text):
    """Drop the leftmost symbol of the window; returns the new lrs length."""
    st = tr.state
    track = st[TRACK] != 0
    i = st[START]
    j = st[END]
    act = st[ACT]
    alen = st[ALEN]
    r = st[LRS]
    leaf = tr.leaf_at[i]
    p = tr.parent[leaf]
    dp = tr.depth[p]
    first = text[i + dp]
    tr.leaf_at[i] = -1
    if alen > 0 and act == p and text[j - alen + 1] == first:
        # the lrs ends inside this leaf's edge: the leaf now stands for it
        s2 = j - r + 1
        tr.pos[leaf] = s2
        tr.leaf_at[s2] = leaf
        tr.stats[RELABELS] += 1
        if track and p != ROOT:
            _credit(tr, p, s2)
        r -= 1
        tr.stats[MOVES] += 1
        if act == ROOT:
            alen -= 1
        else:
            act = tr.slink[act]
        act, alen = _canonize(tr, text, act, alen, r, j)
    else:
        unlink_child(tr, p, first, leaf)
        free_node(tr, leaf)
        tr.stats[EDITS] += 2
        tr.stats[LEAVES_GONE] += 1
        if p != ROOT and tr.nchild[p] == 1:
            c = tr.first_child[p]
            g = tr.parent[p]
            dg = tr.depth[g]
            unlink_child(tr, p, text[tr.pos[c] + dp], c)
            replace_child(tr, g, text[tr.pos[p] + dg], p, c)
            if act == p:
                act = g
                alen += dp - dg
            if track:
                _unwatch(tr, p)
            free_node(tr, p)
            tr.stats[EDITS] += 1
            tr.stats[MERGES] += 1
    st[START] = i + 1
    if track:
        _repair(tr, i)
    st[ACT] = act
    st[ALEN] = alen
    st[LRS] = r
    return r


@njit(cache=True)
def reset(tr):
    """Turn ``tr`` back into a root-only tree without reallocating."""
    tr.hkeys[:] = EMPTY_KEY
    tr.hvals[:] = -1
    tr.leaf_at[:] = -1
    st = tr.state
    st[NNODES] = 1
    st[FREE_HEAD] = -1
    st[ACT] = ROOT
    st[ALEN] = 0
    st[LRS] = 0
    st[END] = -1
    st[START] = 0
    st[LIVE] = 1
    tr.first_child[ROOT] = -1
    tr.nchild[ROOT] = 0
    tr.stats[:] = 0
    if st[TRACK]:
        tr.w_head[:] = -1


@njit(cache=True)
def flat_dump(tr, text, offset):
    """:func:`canonical_dump` packed into one int64 array.

    Each node contributes ``level, label length, leaf start - offset (or -1)``
    followed by its label symbols; equal arrays mean equal trees.
    """
    end = tr.state[END]
    n = tr.state[NNODES]
    size = 0
    for v in range(1, n):
        if tr.parent[v] != FREE:
            size += 3 + strlen(tr, v, end) - strlen(tr, tr.parent[v], end)
    out = np.empty(size, dtype=np.int64)
    k = 0
    stack = np.empty(2 * n + 2, dtype=np.int64)
    levels = np.empty(2 * n + 2, dtype=np.int64)
    kids = np.empty(n, dtype=np.int64)
    keys = np.empty(n, dtype=np.int64)
    top = 1
    stack[0] = ROOT
    levels[0] = 0
    while top > 0:
        top -= 1
        v = stack[top]
        level = levels[top]
        dv = strlen(tr, v, end)
        if v != ROOT:
            dp = strlen(tr, tr.parent[v], end)
            out[k] = level
            out[k + 1] = dv - dp
            out[k + 2] = tr.pos[v] - offset if tr.depth[v] == LEAF else -1
            k += 3
            for t in range(tr.pos[v] + dp, tr.pos[v] + dv):
                out[k] = text[t]
                k += 1
        m = 0
        c = tr.first_child[v]
        while c >= 0:
            kids[m] = c
            keys[m] = text[tr.pos[c] + dv]
            m += 1
            c = tr.next_sib[c]
        order = np.argsort(keys[:m])
        for t in range(m - 1, -1, -1):
            stack[top] = kids[order[t]]
            levels[top] = level + 1
            top += 1
    return out


# ---------------------------------------------------------- Python helpers

def live_nodes(tr: TreeArrays) -> np.ndarray:
    n = int(tr.state[NNODES])
    return np.flatnonzero(tr.parent[:n] != FREE)


def first_symbol(tr: TreeArrays, text: np.ndarray, v: int) -> int:
    p = int(tr.parent[v])
    return int(text[int(tr.pos[v]) + int(tr.depth[p])])


def children_sorted(tr: TreeArrays, text: np.ndarray, v: int) -> list[tuple[int, int]]:
    out = []
    c = int(tr.first_child[v])
    while c >= 0:
        out.append((first_symbol(tr, text, c), c))
        c = int(tr.next_sib[c])
    out.sort()
    return out


def canonical_dump(tr: TreeArrays, text: np.ndarray, offset: int = 0) -> list[tuple]:
    """Preorder listing ``(level, label, leaf_start)`` with edge-sorted children.

    Labels are resolved to symbol tuples, and leaf starts are shifted by
    ``-offset`` so trees over equal strings at different positions compare
    equal. Internal nodes report ``None`` as leaf start.
    """
    end = int(tr.state[END])
    out = []
    stack = [(ROOT, 0)]
    while stack:
        v, level = stack.pop()
        if v != ROOT:
            p = int(tr.parent[v])
            a = int(tr.pos[v]) + int(tr.depth[p])
            b = int(tr.pos[v]) + int(strlen(tr, v, end))
            leaf = int(tr.pos[v]) - offset if tr.depth[v] == LEAF else None
            out.append((level, tuple(int(x) for x in text[a:b]), leaf))
        for _, c in reversed(children_sorted(tr, text, v)):
            stack.append((c, level + 1))
    return out
