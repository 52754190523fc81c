"""Tabular output for feature rows: CSV (primary) and a typed ARFF-style export.

Floats are rendered in shortest round-trip decimal form, so reading a written
file reproduces every value bit-exactly.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, TextIO, Tuple

from .features import FeatureVector


def write_csv(handle: TextIO, names: Sequence[str], rows: Iterable[FeatureVector]) -> int:
    handle.write(",".join(list(names) + ["label"]) + "\n")
    n = 0
    for row in rows:
        label = row.label if row.label is not None else ""
        handle.write(",".join(repr(v) for v in row.values) + f",{label}\n")
        n += 1
    return n


def save_csv(path: str, names: Sequence[str], rows: Iterable[FeatureVector]) -> int:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        return write_csv(handle, names, rows)


def read_csv(handle: TextIO) -> Tuple[Tuple[str, ...], List[FeatureVector]]:
    header = handle.readline().rstrip("\n")
    if not header:
        raise ValueError("empty CSV: missing header")
    columns = header.split(",")
    if columns[-1] != "label":
        raise ValueError("last CSV column must be 'label'")
    names = tuple(columns[:-1])
    rows: List[FeatureVector] = []
    for lineno, line in enumerate(handle, start=2):
        line = line.rstrip("\n")
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != len(columns):
            raise ValueError(f"line {lineno}: expected {len(columns)} fields, got {len(parts)}")
        values = tuple(float(v) for v in parts[:-1])
        label: Optional[str] = parts[-1] if parts[-1] else None
        rows.append(FeatureVector(names, values, label))
    return names, rows


def load_csv(path: str) -> Tuple[Tuple[str, ...], List[FeatureVector]]:
    with open(path, "r", encoding="utf-8", newline="\n") as handle:
        return read_csv(handle)


def write_arff(
    handle: TextIO,
    names: Sequence[str],
    rows: Sequence[FeatureVector],
    relation: str = "simstring",
) -> int:
    """Typed header variant; class values listed in first-seen order."""
    labels: List[str] = []
    for row in rows:
        if row.label is not None and row.label not in labels:
            labels.append(row.label)
    handle.write(f"@relation {relation}\n")
    for name in names:
        handle.write(f"@attribute {name} numeric\n")
    handle.write("@attribute label {" + ",".join(labels) + "}\n")
    handle.write("@data\n")
    for row in rows:
        label = row.label if row.label is not None else "?"
        handle.write(",".join(repr(v) for v in row.values) + f",{label}\n")
    return len(rows)
