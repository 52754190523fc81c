"""Pair-dataset file format.

UTF-8 text, header line "#simstring-pairs v1", then one record per line with
three tab-separated fields: w1, w2, label.  Backslash escaping covers exactly
tab, newline, and backslash inside the string fields, so a raw tab only ever
separates fields and a raw newline only ever ends a record.
"""

from __future__ import annotations

from typing import Iterable, Iterator, List, TextIO

from .generator import ComparisonPair
from .strings import SymbolString

HEADER = "#simstring-pairs v1"


def escape_field(text: str) -> str:
    return text.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def unescape_field(text: str) -> str:
    out: List[str] = []
    it = iter(text)
    for ch in it:
        if ch != "\\":
            out.append(ch)
            continue
        nxt = next(it, None)
        if nxt == "\\":
            out.append("\\")
        elif nxt == "t":
            out.append("\t")
        elif nxt == "n":
            out.append("\n")
        else:
            raise ValueError(f"bad escape sequence \\{nxt!r} in field")
    return "".join(out)


def write_pairs(handle: TextIO, pairs: Iterable[ComparisonPair]) -> int:
    """Stream pairs to an open text handle; returns the record count."""
    handle.write(HEADER + "\n")
    n = 0
    for p in pairs:
        handle.write(
            f"{escape_field(p.w1.text)}\t{escape_field(p.w2.text)}\t{p.label}\n"
        )
        n += 1
    return n


def save_pairs(path: str, pairs: Iterable[ComparisonPair]) -> int:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        return write_pairs(handle, pairs)


def read_pairs(handle: TextIO) -> Iterator[ComparisonPair]:
    first = handle.readline().rstrip("\n")
    if first != HEADER:
        raise ValueError(f"not a pair dataset: expected header {HEADER!r}, got {first!r}")
    for lineno, line in enumerate(handle, start=2):
        line = line.rstrip("\n")
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 3 tab-separated fields, got {len(parts)}")
        w1, w2, label = parts
        yield ComparisonPair(
            SymbolString.from_text(unescape_field(w1)),
            SymbolString.from_text(unescape_field(w2)),
            label,
        )


def load_pairs(path: str) -> List[ComparisonPair]:
    with open(path, "r", encoding="utf-8", newline="\n") as handle:
        return list(read_pairs(handle))
