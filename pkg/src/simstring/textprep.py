"""Document-to-symbol preprocessing and plagiarism-corpus ingestion.

A document becomes a word-level SymbolString: characters that are neither
letters nor whitespace are dropped, letters are lowercased (optional), the
result is split on whitespace runs, and each distinct word is assigned the
next integer id by a shared Vocabulary in first-seen order.
"""

from __future__ import annotations

import os
from typing import Dict, List, NamedTuple, Tuple

from .strings import SymbolString

NEAR_COPY = "near"
LIGHT = "light"
HEAVY = "heavy"
NON = "non"

_LABELS = (NEAR_COPY, LIGHT, HEAVY, NON)


class Vocabulary:
    """Injective word -> symbol map; ids assigned in first-seen order."""

    __slots__ = ("_ids",)

    def __init__(self):
        self._ids: Dict[str, int] = {}

    def symbol(self, word: str) -> int:
        return self._ids.setdefault(word, len(self._ids))

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, word: str) -> bool:
        return word in self._ids


def preprocess_text(raw: str, vocab: Vocabulary, keep_case: bool = False) -> SymbolString:
    kept = []
    for ch in raw:
        if ch.isalpha():
            kept.append(ch if keep_case else ch.lower())
        elif ch.isspace():
            kept.append(" ")
    words = "".join(kept).split()
    if not words:
        raise ValueError("document normalizes to zero words")
    return SymbolString(tuple(vocab.symbol(w) for w in words))


class PlagiarismInstance(NamedTuple):
    answer: SymbolString
    source: SymbolString
    label: str


def parse_label(text: str) -> str:
    """Case-insensitive prefix match on {near, light, heavy, non}."""
    folded = text.strip().lower()
    for label in _LABELS:
        if folded.startswith(label):
            return label
    raise ValueError(f"unknown plagiarism label {text!r}")


def load_plagiarism_corpus(
    root: str, index_path: str, keep_case: bool = False
) -> Tuple[List[PlagiarismInstance], List[str]]:
    """Reads a tab-separated index (answerPath, taskId, sourcePath, label) with
    paths relative to root.  Returns (instances, per-record error messages);
    raises if more than 10% of records fail."""
    with open(index_path, "r", encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    records = [
        (no, line) for no, line in enumerate(lines, start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    vocab = Vocabulary()
    doc_cache: Dict[str, SymbolString] = {}

    def load_doc(rel_path: str) -> SymbolString:
        if rel_path not in doc_cache:
            with open(os.path.join(root, rel_path), "r", encoding="utf-8") as f:
                doc_cache[rel_path] = preprocess_text(f.read(), vocab, keep_case)
        return doc_cache[rel_path]

    instances: List[PlagiarismInstance] = []
    errors: List[str] = []
    for no, line in records:
        parts = line.split("\t")
        if len(parts) != 4:
            errors.append(f"index line {no}: expected 4 tab-separated fields, got {len(parts)}")
            continue
        answer_path, _task_id, source_path, label_text = parts
        try:
            label = parse_label(label_text)
            answer = load_doc(answer_path)
            source = load_doc(source_path)
        except (OSError, ValueError) as exc:
            errors.append(f"index line {no}: {exc}")
            continue
        instances.append(PlagiarismInstance(answer, source, label))
    if records and len(errors) > 0.10 * len(records):
        raise ValueError(
            f"{len(errors)} of {len(records)} corpus records failed (over the 10% limit): "
            + "; ".join(errors[:5])
        )
    return instances, errors
