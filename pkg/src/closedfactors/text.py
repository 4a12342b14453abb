"""Input text, alphabet remapping and the sentinel policy.

Every tree in the package works over dense integer symbol ids. Positions in
the public API are 1-based and inclusive; arrays are 0-based internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np

SYMBOL_DTYPE = np.int32


class EmptyInputError(ValueError):
    """Raised when an operation that needs a non-empty string gets none."""


class SentinelError(ValueError):
    """Raised on a missing or duplicated end-of-text sentinel."""


@dataclass(frozen=True)
class Window:
    """Closed interval ``[start, end]`` of 1-based positions.

    The empty window is encoded as ``start == end + 1``.
    """

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 1 or self.start > self.end + 1:
            raise ValueError(f"invalid window [{self.start}, {self.end}]")

    def __len__(self) -> int:
        return self.end - self.start + 1

    @property
    def empty(self) -> bool:
        return self.start == self.end + 1


@dataclass
class Text:
    """A symbol sequence with a dense alphabet.

    ``symbols`` holds ids in ``[0, sigma)``; ids are handed out in order of
    first occurrence. When a sentinel is present it is the id ``sigma - 1``
    and sits at the last position.
    """

    symbols: np.ndarray
    alphabet: dict = field(default_factory=dict)
    sentinel_present: bool = False

    @property
    def sigma(self) -> int:
        return len(self.alphabet) + int(self.sentinel_present)

    @property
    def raw_len(self) -> int:
        return len(self.symbols) - int(self.sentinel_present)

    @property
    def sentinel(self) -> int | None:
        return len(self.alphabet) if self.sentinel_present else None

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, p: int) -> int:
        if not 1 <= p <= len(self.symbols):
            raise IndexError(f"position {p} outside [1, {len(self.symbols)}]")
        return int(self.symbols[p - 1])

    def factor(self, i: int, j: int) -> tuple[int, ...]:
        """Symbol ids of ``T[i..j]`` (empty when ``i > j``)."""
        if i > j:
            return ()
        if i < 1 or j > len(self.symbols):
            raise IndexError(f"factor [{i}, {j}] outside the text")
        return tuple(int(x) for x in self.symbols[i - 1 : j])

    def decode(self, symbols: Iterable[int] | None = None) -> list:
        """Map ids back to the original items; the sentinel is dropped."""
        inverse = {v: k for k, v in self.alphabet.items()}
        if symbols is None:
            symbols = self.symbols[: self.raw_len]
        return [inverse[int(s)] for s in symbols if int(s) in inverse]

    def decode_bytes(self, symbols: Iterable[int] | None = None) -> bytes:
        return bytes(self.decode(symbols))

    def register(self, item: Hashable) -> int:
        """Return the id of ``item``, assigning the next free id if new."""
        if self.sentinel_present:
            raise SentinelError("cannot grow the alphabet after the sentinel")
        sid = self.alphabet.get(item)
        if sid is None:
            sid = len(self.alphabet)
            self.alphabet[item] = sid
        return sid


def _items(data: bytes | str | Sequence[Hashable]) -> Sequence[Hashable]:
    if isinstance(data, (bytes, bytearray, memoryview)):
        return bytes(data)
    return data


def ingest(data: bytes | str | Sequence[Hashable], allow_empty: bool = False) -> Text:
    """Build a :class:`Text` from bytes, a str, or any sequence of hashables."""
    items = _items(data)
    if len(items) == 0 and not allow_empty:
        raise EmptyInputError("input string is empty")
    if isinstance(items, bytes):
        raw = np.frombuffer(items, dtype=np.uint8)
        # first-occurrence order without a Python-level loop over the input
        values, first = np.unique(raw, return_index=True)
        order = values[np.argsort(first, kind="stable")]
        table = np.zeros(256, dtype=SYMBOL_DTYPE)
        table[order] = np.arange(len(order), dtype=SYMBOL_DTYPE)
        alphabet = {int(b): i for i, b in enumerate(order)}
        return Text(table[raw], alphabet)
    alphabet: dict = {}
    ids = np.empty(len(items), dtype=SYMBOL_DTYPE)
    for k, item in enumerate(items):
        sid = alphabet.get(item)
        if sid is None:
            sid = alphabet[item] = len(alphabet)
        ids[k] = sid
    return Text(ids, alphabet)


def append_sentinel(t: Text) -> Text:
    """Return a copy of ``t`` with a fresh, strictly largest id appended."""
    if t.sentinel_present:
        raise SentinelError("sentinel already present")
    sentinel = len(t.alphabet)
    symbols = np.append(t.symbols, SYMBOL_DTYPE(sentinel)).astype(SYMBOL_DTYPE)
    return Text(symbols, dict(t.alphabet), sentinel_present=True)
