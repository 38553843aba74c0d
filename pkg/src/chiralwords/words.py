"""Reduced words in a free group F_d, with substitution and Nielsen automorphisms.

Words are kept in run-length normal form: a tuple of (generator, exponent)
syllables with nonzero exponents and no two adjacent syllables on the same
generator. Generators are indexed 1..rank. All values here are immutable.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple

Syllable = Tuple[int, int]  # (generator index 1..rank, nonzero exponent)


class WordSyntaxError(ValueError):
    """Word text does not conform to the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Word:
    """A reduced word in F_rank, as run-length encoded syllables."""

    rank: int
    syllables: Tuple[Syllable, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")
        prev_gen = None
        for gen, exp in self.syllables:
            if not 1 <= gen <= self.rank:
                raise ValueError(f"generator x{gen} outside 1..{self.rank}")
            if exp == 0:
                raise ValueError("syllable with exponent 0")
            if gen == prev_gen:
                raise ValueError(f"adjacent syllables on x{gen}; word not in normal form")
            prev_gen = gen

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    @property
    def length(self) -> int:
        """Reduced word length: sum of |exponent| over syllables."""
        return sum(abs(e) for _, e in self.syllables)

    @property
    def support_rank(self) -> int:
        """Largest generator index actually used (0 for the identity word)."""
        return max((g for g, _ in self.syllables), default=0)

    def letters(self) -> Iterator[Tuple[int, int]]:
        """Yield the word letter by letter as (generator, +1 or -1)."""
        for gen, exp in self.syllables:
            sign = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield (gen, sign)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __str__(self) -> str:
        return render_word(self)


def identity_word(rank: int) -> Word:
    return Word(rank, ())


def reduce_syllables(syllables: Iterable[Syllable], rank: int) -> Word:
    """Freely reduce a raw syllable list into normal form. Idempotent."""
    stack: list[list[int]] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return Word(rank, tuple((g, e) for g, e in stack))


def parse_word(text: str, rank: int) -> Word:
    """Parse word text like "x1 x3^2" or "x1*x3^-2"; "e" is the identity.

    Terms are separated by whitespace or '*'. Raises WordSyntaxError with the
    offending position on malformed input.
    """
    if rank < 1:
        raise ValueError(f"rank must be positive, got {rank}")
    if text.strip() == "e":
        return identity_word(rank)
    syllables: list[Syllable] = []
    i, n = 0, len(text)
    while i < n:
        if text[i].isspace() or text[i] == "*":
            i += 1
            continue
        if text[i] != "x":
            raise WordSyntaxError(f"expected 'x', found {text[i]!r}", i)
        i += 1
        start = i
        while i < n and text[i].isdigit():
            i += 1
        if i == start:
            raise WordSyntaxError("expected generator index after 'x'", i)
        gen = int(text[start:i])
        if gen == 0:
            raise WordSyntaxError("generator index 0 is not allowed", start)
        if gen > rank:
            raise WordSyntaxError(f"generator x{gen} exceeds rank {rank}", start)
        exp = 1
        if i < n and text[i] == "^":
            i += 1
            start = i
            if i < n and text[i] in "+-":
                i += 1
            while i < n and text[i].isdigit():
                i += 1
            if i == start or not text[start:i].lstrip("+-"):
                raise WordSyntaxError("expected integer exponent after '^'", start)
            exp = int(text[start:i])
            if exp == 0:
                raise WordSyntaxError("exponent 0 is not allowed", start)
        syllables.append((gen, exp))
    return reduce_syllables(syllables, rank)


def render_word(w: Word) -> str:
    """Canonical text: "x1*x3^2", or "e" for the identity word."""
    if w.is_identity:
        return "e"
    return "*".join(f"x{g}" if e == 1 else f"x{g}^{e}" for g, e in w.syllables)


def invert(w: Word) -> Word:
    return Word(w.rank, tuple((g, -e) for g, e in reversed(w.syllables)))


def concat(a: Word, b: Word) -> Word:
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")
    return reduce_syllables(a.syllables + b.syllables, a.rank)


@dataclass(frozen=True)
class FreeGroupEndo:
    """Endomorphism of F_rank by generator images.

    When inverse_images is set, the endo is automorphism-witnessed: it was
    built from Nielsen generators and carries the images of its inverse.
    """

    rank: int
    images: Tuple[Word, ...]
    inverse_images: Optional[Tuple[Word, ...]] = None

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise ValueError("need one image per generator")
        for img in self.images:
            if img.rank != self.rank:
                raise ValueError("image rank mismatch")

    @property
    def is_automorphism_witnessed(self) -> bool:
        return self.inverse_images is not None

    def inverse(self) -> "FreeGroupEndo":
        if self.inverse_images is None:
            raise ValueError("endomorphism carries no invertibility witness")
        return FreeGroupEndo(self.rank, self.inverse_images, self.images)

    def __call__(self, w: Word) -> Word:
        return substitute(w, self)


def identity_endo(rank: int) -> FreeGroupEndo:
    gens = tuple(Word(rank, ((i, 1),)) for i in range(1, rank + 1))
    return FreeGroupEndo(rank, gens, gens)


def substitute(w: Word, e: FreeGroupEndo) -> Word:
    """Apply an endomorphism: replace each x_i by its image, then reduce."""
    if w.rank != e.rank:
        raise ValueError(f"rank mismatch: word {w.rank} vs endo {e.rank}")
    out: list[Syllable] = []
    for gen, exp in w.syllables:
        img = e.images[gen - 1]
        piece = img.syllables if exp > 0 else invert(img).syllables
        for _ in range(abs(exp)):
            out.extend(piece)
    return reduce_syllables(out, w.rank)


def compose(e1: FreeGroupEndo, e2: FreeGroupEndo) -> FreeGroupEndo:
    """(e1 . e2)(x) = e1 applied to e2's image of x.

    Hence substitute(w, compose(e1, e2)) == substitute(substitute(w, e2), e1).
    """
    if e1.rank != e2.rank:
        raise ValueError("rank mismatch")
    images = tuple(substitute(img, e1) for img in e2.images)
    inv_images = None
    if e1.inverse_images is not None and e2.inverse_images is not None:
        e2_inv = e2.inverse()
        inv_images = tuple(substitute(img, e2_inv) for img in e1.inverse_images)
    return FreeGroupEndo(e1.rank, images, inv_images)


def _word(rank: int, *sylls: Syllable) -> Word:
    return Word(rank, sylls)


def nielsen_generators(rank: int) -> list[FreeGroupEndo]:
    """The standard Nielsen generating set of Aut(F_rank).

    Adjacent generator swaps, inversion of x1, and (for rank >= 2) the
    transvection x1 -> x1*x2. Each carries its inverse images.
    """
    if rank < 1:
        raise ValueError("rank must be positive")
    gens: list[FreeGroupEndo] = []
    base = identity_endo(rank)
    for i in range(1, rank):
        images = list(base.images)
        images[i - 1], images[i] = images[i], images[i - 1]
        swapped = tuple(images)
        gens.append(FreeGroupEndo(rank, swapped, swapped))
    images = list(base.images)
    images[0] = _word(rank, (1, -1))
    inverted = tuple(images)
    gens.append(FreeGroupEndo(rank, inverted, inverted))
    if rank >= 2:
        fwd = list(base.images)
        fwd[0] = _word(rank, (1, 1), (2, 1))
        bwd = list(base.images)
        bwd[0] = _word(rank, (1, 1), (2, -1))
        gens.append(FreeGroupEndo(rank, tuple(fwd), tuple(bwd)))
    return gens


def random_automorphism(rank: int, length: int, seed: int) -> FreeGroupEndo:
    """Compose `length` Nielsen generators chosen by a seeded RNG."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    rng = random.Random(seed)
    gens = nielsen_generators(rank)
    endo = identity_endo(rank)
    for _ in range(length):
        endo = compose(endo, rng.choice(gens))
    return endo


@dataclass(frozen=True)
class FreeAntiAuto:
    """Anti-automorphism of F_rank, represented as w -> theta(w^-1)."""

    theta: FreeGroupEndo

    def __post_init__(self):
        if not self.theta.is_automorphism_witnessed:
            raise ValueError("theta must be automorphism-witnessed")

    @property
    def rank(self) -> int:
        return self.theta.rank

    def __call__(self, w: Word) -> Word:
        return apply_anti(w, self)


def inversion_anti(rank: int) -> FreeAntiAuto:
    """The anti-automorphism w -> w^-1."""
    return FreeAntiAuto(identity_endo(rank))


def apply_anti(w: Word, gamma: FreeAntiAuto) -> Word:
    if w.rank != gamma.rank:
        raise ValueError(f"rank mismatch: word {w.rank} vs anti {gamma.rank}")
    return substitute(invert(w), gamma.theta)


def _letter_index(gen: int, sign: int) -> int:
    # Letter ordering x1 < x1^-1 < x2 < x2^-1 < ...
    return (gen - 1) * 2 + (0 if sign > 0 else 1)


def _letter_from_index(idx: int) -> Tuple[int, int]:
    return idx // 2 + 1, 1 if idx % 2 == 0 else -1


def _word_from_letters(letters: Sequence[Tuple[int, int]], rank: int) -> Word:
    return reduce_syllables([(g, s) for g, s in letters], rank)


def enumerate_words(rank: int, max_len: int) -> Iterator[Word]:
    """All reduced words of length <= max_len, once each, length-lex order.

    Within a length, words are ordered lexicographically by letters under
    x1 < x1^-1 < x2 < x2^-1 < ...
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    yield identity_word(rank)
    num_letters = 2 * rank
    seq: list[int] = []

    def rec(remaining: int) -> Iterator[Word]:
        if remaining == 0:
            yield _word_from_letters([_letter_from_index(i) for i in seq], rank)
            return
        for letter in range(num_letters):
            if seq and seq[-1] ^ 1 == letter:
                continue  # would cancel with the previous letter
            seq.append(letter)
            yield from rec(remaining - 1)
            seq.pop()

    for length in range(1, max_len + 1):
        yield from rec(length)


def _enumeration_key(letters: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    return (len(letters), tuple(letters))


def canonical_form(w: Word) -> Word:
    """Least orbit member under signed generator permutations and inversion.

    The orbit group is the finite subgroup of Aut(F_d) that permutes
    generators and inverts them, together with inversion of the whole word.
    Orbit-mates have identical chirality behavior, so this is a sound dedup
    key for searches.
    """
    d = w.rank
    letters = [_letter_index(g, s) for g, s in w.letters()]
    reversed_neg = [idx ^ 1 for idx in reversed(letters)]  # letters of w^-1
    best: Optional[Tuple[int, Tuple[int, ...]]] = None
    for perm in itertools.permutations(range(d)):
        for signs in itertools.product((0, 1), repeat=d):
            for base in (letters, reversed_neg):
                mapped = tuple(
                    perm[idx // 2] * 2 + ((idx % 2) ^ signs[idx // 2])
                    for idx in base
                )
                key = _enumeration_key(mapped)
                if best is None or key < best:
                    best = key
    assert best is not None
    return _word_from_letters([_letter_from_index(i) for i in best[1]], d)
