import itertools
import random

import pytest

from chiralwords.words import Word, reduce_syllables


def random_reduced_word(rng: random.Random, rank: int, max_len: int) -> Word:
    """Random reduced word of length <= max_len (may shrink under reduction)."""
    raw = [(rng.randint(1, rank), rng.choice([1, -1]) * rng.randint(1, 2))
           for _ in range(rng.randint(0, max_len))]
    w = reduce_syllables(raw, rank)
    while w.length > max_len:
        w = reduce_syllables(w.syllables[:-1], rank)
    return w


def brute_force_reduced_words(rank: int, max_len: int) -> set:
    """Generate-and-reduce oracle: reduce every letter string of length <= max_len."""
    letters = [(g, s) for g in range(1, rank + 1) for s in (1, -1)]
    seen = set()
    for length in range(max_len + 1):
        for combo in itertools.product(letters, repeat=length):
            seen.add(reduce_syllables(combo, rank).syllables)
    return seen


@pytest.fixture
def rng():
    return random.Random(20240817)
