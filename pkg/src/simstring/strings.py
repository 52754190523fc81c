"""Symbol strings and the primitive operations every feature builds on.

A symbol string is an immutable sequence of non-negative integer symbols:
Unicode code points for character data, vocabulary ids for tokenized text.
Symbols compare by identifier only; there is no case or collation logic here.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Tuple


class SymbolString(tuple):
    """Immutable sequence of int symbols. Plain tuple semantics, plus text helpers."""

    __slots__ = ()

    @classmethod
    def from_text(cls, text: str) -> "SymbolString":
        return cls(ord(ch) for ch in text)

    @classmethod
    def from_ids(cls, ids: Iterable[int]) -> "SymbolString":
        w = cls(ids)
        for c in w:
            if not isinstance(c, int) or c < 0:
                raise ValueError(f"symbols must be non-negative integers, got {c!r}")
        return w

    @property
    def text(self) -> str:
        """Rendered as characters; ids beyond the code-point range use <id> escapes."""
        return "".join(chr(c) if c <= 0x10FFFF else f"<{c}>" for c in self)

    def __repr__(self) -> str:
        if all(c <= 0x10FFFF for c in self):
            return f"SymbolString({self.text!r})"
        return f"SymbolString({tuple(self)!r})"


def substring(w: SymbolString, start: int, stop: int) -> SymbolString:
    """Symbols at positions [start, stop); start == stop gives the empty string."""
    if not (0 <= start <= stop <= len(w)):
        raise IndexError(f"substring range [{start}, {stop}) out of bounds for length {len(w)}")
    return SymbolString(tuple.__getitem__(w, slice(start, stop)))


def char_at(w: SymbolString, p: int) -> int:
    if not (0 <= p < len(w)):
        raise IndexError(f"position {p} out of bounds for length {len(w)}")
    return tuple.__getitem__(w, p)


def pop_at(w: SymbolString, p: int) -> Tuple[int, SymbolString]:
    """Return (symbol at p, string with position p spliced out)."""
    if not (0 <= p < len(w)):
        raise IndexError(f"position {p} out of bounds for length {len(w)}")
    t = tuple(w)
    return t[p], SymbolString(t[:p] + t[p + 1 :])


def drop_last(w: SymbolString) -> SymbolString:
    """The string without its final symbol."""
    if len(w) < 1:
        raise IndexError("cannot drop the last symbol of an empty string")
    return SymbolString(tuple(w)[:-1])


def concat(w1: SymbolString, w2: SymbolString) -> SymbolString:
    return SymbolString(tuple(w1) + tuple(w2))


def shared_symbols(w1: SymbolString, w2: SymbolString) -> Counter:
    """Multiset intersection: each symbol min(count in w1, count in w2) times."""
    return Counter(w1) & Counter(w2)


def count_occurrences(pattern: SymbolString, w: SymbolString) -> int:
    """Number of (possibly overlapping) start positions where pattern matches in w."""
    if len(pattern) == 0:
        raise ValueError("pattern must be non-empty")
    m = len(pattern)
    pat = tuple(pattern)
    src = tuple(w)
    return sum(1 for p in range(len(src) - m + 1) if src[p : p + m] == pat)


def replace_at(w: SymbolString, p: int, c: int) -> SymbolString:
    if not (0 <= p < len(w)):
        raise IndexError(f"position {p} out of bounds for length {len(w)}")
    t = tuple(w)
    return SymbolString(t[:p] + (c,) + t[p + 1 :])


def prepend(w: SymbolString, c: int) -> SymbolString:
    return SymbolString((c,) + tuple(w))


def prepend_or_append(w: SymbolString, c: int, rng) -> SymbolString:
    """Put c at the front or the back, each with probability 1/2 (one rng draw)."""
    if rng.random() < 0.5:
        return SymbolString((c,) + tuple(w))
    return SymbolString(tuple(w) + (c,))


def rotate(w: SymbolString, d: int) -> SymbolString:
    """Left rotation: the first d symbols move to the end. d is taken modulo |w|."""
    if d < 0:
        raise ValueError("rotation distance must be non-negative")
    n = len(w)
    if n == 0:
        return w
    d %= n
    if d == 0:
        return w
    t = tuple(w)
    return SymbolString(t[d:] + t[:d])
