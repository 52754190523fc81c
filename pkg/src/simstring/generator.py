"""Seeded synthetic comparison-pair generator.

Each instance pairs a fresh uniform-random string w1 with either another fresh
string (label DIFFERENT) or a mutated copy of itself (label SAME).  The
mutation chain applies, in order: a possible tail truncation, repeated symbol
replacement, a possible full shuffle, repeated edge insertion, and repeated
move-a-symbol-to-the-back steps.  Branch probabilities rise with the
``randomness`` knob; repeated stages run max(1, floor(len/2)) times, with the
length re-read at the start of each stage.

All draws come from one RandomSource (Mersenne Twister via random.Random,
which yields identical sequences for identical integer seeds on every
platform); draw order inside each step is part of the contract and is frozen
by golden-file tests.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .strings import (
    SymbolString,
    concat,
    pop_at,
    prepend,
    prepend_or_append,
    replace_at,
    substring,
)

SAME = "SAME"
DIFFERENT = "DIFFERENT"


class RandomSource:
    """Deterministic uniform draws; `real` is [0,1), `integer` is inclusive."""

    __slots__ = ("seed", "_rng")

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = random.Random(seed)

    def real(self) -> float:
        return self._rng.random()

    def integer(self, lo: int, hi: int) -> int:
        return self._rng.randint(lo, hi)

    # stand-in for random.Random-style objects (string helpers call .random())
    def random(self) -> float:
        return self.real()


@dataclass(frozen=True)
class GenConfig:
    max_len: int
    randomness: float
    count: int
    seed: int
    alphabet_lo: int = 65  # 'A'
    alphabet_hi: int = 122  # 'z'; the range includes the punctuation between

    def __post_init__(self):
        if self.max_len < 1:
            raise ValueError("max_len must be >= 1")
        if not 0.0 <= self.randomness <= 1.0:
            raise ValueError("randomness must lie in [0, 1]")
        if self.count < 0:
            raise ValueError("count must be >= 0")
        if self.alphabet_lo > self.alphabet_hi:
            raise ValueError("alphabet_lo must not exceed alphabet_hi")


class ComparisonPair(NamedTuple):
    w1: SymbolString
    w2: SymbolString
    label: str


def random_symbol(rng: RandomSource, cfg: GenConfig) -> int:
    return rng.integer(cfg.alphabet_lo, cfg.alphabet_hi)


def truncate_tail(w: SymbolString, randomness: float, rng: RandomSource) -> SymbolString:
    """Cut to a random prefix with probability 0.1 + randomness; never empties."""
    if rng.real() >= 0.9 - randomness:
        keep = max(rng.integer(0, len(w)), 1)
        return substring(w, 0, keep)
    return w


def replace_symbol(
    w: SymbolString, randomness: float, rng: RandomSource, cfg: GenConfig
) -> SymbolString:
    """Overwrite one random position with probability = randomness."""
    if rng.real() >= 1.0 - randomness:
        p = rng.integer(0, len(w) - 1)
        return replace_at(w, p, random_symbol(rng, cfg))
    return w


def shuffle_symbols(w: SymbolString, randomness: float, rng: RandomSource) -> SymbolString:
    """With probability 0.4 + sqrt(randomness), rebuild the string by repeatedly
    removing either a random symbol (60%) or the head (40%) and pushing it onto
    the front of the output.  Always a permutation of the input."""
    if rng.real() >= 0.6 - math.sqrt(randomness):
        out = SymbolString(())
        rest = w
        while len(rest):
            if rng.real() <= 0.6:
                c, rest = pop_at(rest, rng.integer(0, len(rest) - 1))
            else:
                c, rest = pop_at(rest, 0)
            out = prepend(out, c)
        return out
    return w


def extend_edge(
    w: SymbolString, randomness: float, rng: RandomSource, cfg: GenConfig
) -> SymbolString:
    """Two gates, then a fresh symbol lands at the front or back (one more draw
    picks which).  Net insertion probability at randomness 0 is 0.6 * 0.1."""
    if rng.real() >= 0.4 - randomness:
        if rng.real() >= 0.9 - randomness:
            return prepend_or_append(w, random_symbol(rng, cfg), rng)
    return w


def move_to_back(w: SymbolString, randomness: float, rng: RandomSource) -> SymbolString:
    """With probability 0.6 + randomness, remove one random symbol and append it."""
    if rng.real() >= 0.4 - randomness:
        c, rest = pop_at(w, rng.integer(0, len(w) - 1))
        return concat(rest, SymbolString((c,)))
    return w


def mutate(w: SymbolString, randomness: float, rng: RandomSource, cfg: GenConfig) -> SymbolString:
    w = truncate_tail(w, randomness, rng)
    for _ in range(max(1, len(w) // 2)):
        w = replace_symbol(w, randomness, rng, cfg)
    w = shuffle_symbols(w, randomness, rng)
    for _ in range(max(1, len(w) // 2)):
        w = extend_edge(w, randomness, rng, cfg)
    for _ in range(max(1, len(w) // 2)):
        w = move_to_back(w, randomness, rng)
    return w


def fresh_string(cfg: GenConfig, rng: RandomSource) -> SymbolString:
    n = rng.integer(1, cfg.max_len)
    return SymbolString(tuple(random_symbol(rng, cfg) for _ in range(n)))


def paired_string(w1: SymbolString, cfg: GenConfig, rng: RandomSource):
    """Partner for w1: strictly above 0.5 draws a fresh DIFFERENT string,
    otherwise a SAME mutation of w1."""
    if rng.real() > 0.5:
        return fresh_string(cfg, rng), DIFFERENT
    return mutate(w1, cfg.randomness, rng, cfg), SAME


def generate_pairs(cfg: GenConfig) -> Iterator[ComparisonPair]:
    rng = RandomSource(cfg.seed)
    for _ in range(cfg.count):
        w1 = fresh_string(cfg, rng)
        w2, label = paired_string(w1, cfg, rng)
        yield ComparisonPair(w1, w2, label)
