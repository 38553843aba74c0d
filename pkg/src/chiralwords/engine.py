"""Word-map evaluation over G^d: images, fibers, and chirality verdicts.

The optimized image computation iterates tuples odometer-style (rightmost
coordinate fastest) and caches prefix products of the word's syllables, so
an increment of coordinate k only recomputes the syllables that read a
changed coordinate. `naive_image` is the independent reference path.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import List, Optional, Sequence, Tuple

from .groups import (
    ANTI_AUTOMORPHISM,
    FiniteGroup,
    GroupError,
    GroupMap,
)
from .words import FreeAntiAuto, Word, apply_anti, render_word

DEFAULT_BUDGET = 2 ** 24


class BudgetExceededError(RuntimeError):
    """The tuple-space size exceeds the configured evaluation budget."""


@dataclass(frozen=True)
class WordImage:
    """The image G_w of a word map, as a dense membership set."""

    group: FiniteGroup
    word: Word
    arity: int
    members: Tuple[bool, ...]

    @property
    def member_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, m in enumerate(self.members) if m)

    @property
    def size(self) -> int:
        return sum(self.members)


@dataclass(frozen=True)
class FiberDistribution:
    """Per-element preimage counts of a word map; sums to |G|^arity."""

    group: FiniteGroup
    word: Word
    arity: int
    counts: Tuple[int, ...]


def evaluate(g: FiniteGroup, w: Word, tup: Sequence[int]) -> int:
    """Evaluate w at a tuple of element indices; w may use x_1..x_len(tup)."""
    if w.support_rank > len(tup):
        raise ValueError(
            f"word uses x{w.support_rank} but tuple has arity {len(tup)}")
    acc = 0
    for gen, exp in w.syllables:
        a = tup[gen - 1]
        if not 0 <= a < g.order:
            raise ValueError(f"element index {a} out of range")
        acc = g.mul(acc, g.power(a, exp))
    return acc


def evaluate_twisted(g: FiniteGroup, w: Word, gamma: GroupMap,
                     tup: Sequence[int]) -> int:
    """Evaluate the twisted map w_gamma = gamma(w(...))."""
    if gamma.group != g:
        raise GroupError("gamma belongs to a different group")
    if gamma.kind != ANTI_AUTOMORPHISM:
        raise GroupError("gamma must be an anti-automorphism")
    return gamma.images[evaluate(g, w, tup)]


def _resolve_arity(w: Word, arity: Optional[int]) -> int:
    if arity is None:
        return w.rank
    if arity < w.support_rank:
        raise ValueError(
            f"arity {arity} below the word's largest generator "
            f"x{w.support_rank}")
    return arity


def _check_budget(g: FiniteGroup, arity: int, budget: int) -> int:
    total = g.order ** arity
    if total > budget:
        raise BudgetExceededError(
            f"{g.order}^{arity} = {total} tuples exceed budget {budget}; "
            "lower the arity or group order, or raise --budget")
    return total


def _scan_counts(g: FiniteGroup, w: Word, arity: int,
                 lo: int, hi: int) -> List[int]:
    """Fiber counts over tuples whose first coordinate lies in [lo, hi)."""
    n = g.order
    counts = [0] * n
    if lo >= hi:
        return counts
    if arity == 0:
        counts[0] += 1  # the empty tuple maps to the identity
        return counts
    sylls = w.syllables
    m = len(sylls)
    table = g.table
    # Per-syllable powers of every group element.
    pows = [[g.power(a, exp) for a in range(n)] for _, exp in sylls]
    coords = [gen - 1 for gen, _ in sylls]
    # first_dirty[k] = first syllable reading any coordinate >= k; when the
    # odometer increments coordinate k, prefixes before it stay valid.
    first_dirty = [m] * (arity + 1)
    for k in range(arity - 1, -1, -1):
        eq = min((j for j in range(m) if coords[j] == k), default=m)
        first_dirty[k] = min(first_dirty[k + 1], eq)
    tup = [0] * arity
    tup[0] = lo
    prefix = [0] * (m + 1)

    def recompute(start: int) -> None:
        for j in range(start, m):
            prefix[j + 1] = table[prefix[j]][pows[j][tup[coords[j]]]]

    recompute(0)
    while True:
        counts[prefix[m]] += 1
        k = arity - 1
        while True:
            tup[k] += 1
            bound = hi if k == 0 else n
            if tup[k] < bound:
                break
            if k == 0:
                return counts
            tup[k] = 0
            k -= 1
        recompute(first_dirty[k])


def _fiber_counts(g: FiniteGroup, w: Word, arity: int,
                  budget: int, threads: int) -> List[int]:
    _check_budget(g, arity, budget)
    if arity == 0 or threads <= 1 or g.order < 2:
        return _scan_counts(g, w, arity, 0, max(g.order, 1) if arity else 1)
    # Partition by first-coordinate ranges; count merging is commutative,
    # so the result is independent of the partitioning.
    parts = min(threads, g.order)
    bounds = [round(i * g.order / parts) for i in range(parts + 1)]
    with ThreadPoolExecutor(max_workers=parts) as pool:
        futures = [pool.submit(_scan_counts, g, w, arity, bounds[i], bounds[i + 1])
                   for i in range(parts)]
        partials = [f.result() for f in futures]
    return [sum(col) for col in zip(*partials)]


def image(g: FiniteGroup, w: Word, arity: Optional[int] = None,
          want_fibers: bool = False, budget: int = DEFAULT_BUDGET,
          threads: int = 1):
    """Exact image G_w (and optionally fiber counts) over G^arity.

    Arity defaults to the word's rank. Returns a WordImage, or a
    (WordImage, FiberDistribution) pair when want_fibers is set.
    """
    d = _resolve_arity(w, arity)
    counts = _fiber_counts(g, w, d, budget, threads)
    img = WordImage(g, w, d, tuple(c > 0 for c in counts))
    if want_fibers:
        return img, FiberDistribution(g, w, d, tuple(counts))
    return img


def naive_image(g: FiniteGroup, w: Word, arity: Optional[int] = None,
                budget: int = DEFAULT_BUDGET):
    """Reference oracle: direct evaluate() per tuple, no caching."""
    d = _resolve_arity(w, arity)
    _check_budget(g, d, budget)
    counts = [0] * g.order
    for tup in product(range(g.order), repeat=d):
        counts[evaluate(g, w, tup)] += 1
    return (WordImage(g, w, d, tuple(c > 0 for c in counts)),
            FiberDistribution(g, w, d, tuple(counts)))


def invert_set(g: FiniteGroup, members: Sequence[bool]) -> Tuple[bool, ...]:
    """Elementwise inverses of a membership set; an involution."""
    out = [False] * g.order
    for x, present in enumerate(members):
        if present:
            out[g.inv(x)] = True
    return tuple(out)


def map_set(m: GroupMap, members: Sequence[bool]) -> Tuple[bool, ...]:
    """Image of a membership set under a group map."""
    out = [False] * m.group.order
    for x, present in enumerate(members):
        if present:
            out[m.images[x]] = True
    return tuple(out)


@dataclass
class ChiralityReport:
    """Verdicts with witnesses for one (group, word) chirality check."""

    group_name: str
    group_order: int
    word_text: str
    arity: int
    evaluations: int
    chiral: Optional[bool] = None
    weakly_chiral: Optional[bool] = None
    chiral_witness: Optional[int] = None
    weak_witness: Optional[int] = None
    gamma_results: List[dict] = field(default_factory=list)
    all_gammas_agree: Optional[bool] = None
    members: Tuple[int, ...] = ()
    counts: Optional[Tuple[int, ...]] = None
    wall_time_s: float = 0.0

    def to_structured(self) -> dict:
        return {
            "schema_version": 1,
            "kind": "chirality-report",
            "group": self.group_name,
            "order": self.group_order,
            "word": self.word_text,
            "arity": self.arity,
            "members": list(self.members),
            "counts": list(self.counts) if self.counts is not None else None,
            "chiral": self.chiral,
            "weakly_chiral": self.weakly_chiral,
            "chiral_witness": self.chiral_witness,
            "weak_witness": self.weak_witness,
            "gamma_results": self.gamma_results,
            "all_gammas_agree": self.all_gammas_agree,
            "evaluations": self.evaluations,
            "wall_time_s": self.wall_time_s,
        }


def _chiral_witness(g: FiniteGroup, members: Sequence[bool]) -> Optional[int]:
    """Smallest x in G_w with x^-1 not in G_w, or None."""
    for x, present in enumerate(members):
        if present and not members[g.inv(x)]:
            return x
    return None


def is_chiral_pair(g: FiniteGroup, w: Word, arity: Optional[int] = None,
                   budget: int = DEFAULT_BUDGET,
                   threads: int = 1) -> ChiralityReport:
    """Decide whether G_w is closed under inversion."""
    start = time.perf_counter()
    d = _resolve_arity(w, arity)
    img = image(g, w, d, budget=budget, threads=threads)
    witness = _chiral_witness(g, img.members)
    return ChiralityReport(
        group_name=g.name, group_order=g.order, word_text=render_word(w),
        arity=d, evaluations=g.order ** d,
        chiral=witness is not None, chiral_witness=witness,
        members=img.member_indices,
        wall_time_s=time.perf_counter() - start)


def is_gamma_chiral_pair(g: FiniteGroup, w: Word, arity: Optional[int] = None,
                         gamma_word: Optional[FreeAntiAuto] = None,
                         gamma_group: Optional[GroupMap] = None,
                         budget: int = DEFAULT_BUDGET,
                         threads: int = 1) -> ChiralityReport:
    """Decide gamma-chirality for a free-group or group anti-automorphism.

    Exactly one of gamma_word / gamma_group must be given. The word flavor
    compares G_w with G_{gamma(w)}; the group flavor compares G_w with
    gamma(G_w). By the equivalence theorems both agree with is_chiral_pair.
    """
    if (gamma_word is None) == (gamma_group is None):
        raise ValueError("pass exactly one of gamma_word, gamma_group")
    start = time.perf_counter()
    d = _resolve_arity(w, arity)
    img = image(g, w, d, budget=budget, threads=threads)
    evaluations = g.order ** d
    if gamma_word is not None:
        tw = apply_anti(w, gamma_word)
        other = image(g, tw, max(d, tw.support_rank),
                      budget=budget, threads=threads).members
        evaluations += g.order ** max(d, tw.support_rank)
        desc = "word-anti"
    else:
        if gamma_group.kind != ANTI_AUTOMORPHISM:
            raise GroupError("gamma_group must be an anti-automorphism")
        other = map_set(gamma_group, img.members)
        desc = "group-anti"
    verdict = img.members != other
    witness = None
    if verdict:
        witness = min(x for x in g.elements()
                      if img.members[x] != other[x])
    return ChiralityReport(
        group_name=g.name, group_order=g.order, word_text=render_word(w),
        arity=d, evaluations=evaluations,
        chiral=verdict, chiral_witness=witness,
        gamma_results=[{"gamma": desc, "chiral": verdict}],
        members=img.member_indices,
        wall_time_s=time.perf_counter() - start)


def weak_verdict_from_counts(g: FiniteGroup, counts: Sequence[int],
                             gamma: GroupMap) -> Optional[int]:
    """Witness x with counts_w[x] != counts_{w_gamma}[x], or None.

    Uses the fiber identity counts_{w_gamma}[x] = counts_w[gamma^-1(x)].
    """
    gamma_inv = gamma.inverse()
    for x in g.elements():
        if counts[x] != counts[gamma_inv.images[x]]:
            return x
    return None


def is_weakly_chiral_pair(g: FiniteGroup, w: Word, gamma: GroupMap,
                          arity: Optional[int] = None,
                          budget: int = DEFAULT_BUDGET,
                          threads: int = 1) -> ChiralityReport:
    """Decide whether some fiber count differs between w and w_gamma."""
    if gamma.kind != ANTI_AUTOMORPHISM:
        raise GroupError("gamma must be an anti-automorphism")
    start = time.perf_counter()
    d = _resolve_arity(w, arity)
    img, fibers = image(g, w, d, want_fibers=True,
                        budget=budget, threads=threads)
    witness = weak_verdict_from_counts(g, fibers.counts, gamma)
    return ChiralityReport(
        group_name=g.name, group_order=g.order, word_text=render_word(w),
        arity=d, evaluations=g.order ** d,
        weakly_chiral=witness is not None, weak_witness=witness,
        members=img.member_indices, counts=fibers.counts,
        wall_time_s=time.perf_counter() - start)
