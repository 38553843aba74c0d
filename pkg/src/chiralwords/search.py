"""Sweep canonical words against a group catalog for chiral pairs.

Findings are emitted as line-delimited JSON records in deterministic
(word, group) order; each record replays to identical verdicts. Pairs with
a proven-achiral shape are skipped up front: abelian groups (inversion is
an automorphism, so images are inversion-closed) and single-generator
powers ((g^k)^-1 = (g^-1)^k lands in the image).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from .catalog import catalog_groups
from .engine import (
    BudgetExceededError,
    _chiral_witness,
    image,
    invert_set,
    map_set,
    weak_verdict_from_counts,
)
from .groups import (
    CapExceededError,
    FiniteGroup,
    anti_from_auto,
    enumerate_anti_automorphisms,
    identity_map,
    is_abelian,
    parse_group_spec,
)
from .verify import canonical_words
from .words import Word, parse_word, render_word


class MalformedRecordError(ValueError):
    """A finding record cannot be replayed."""


@dataclass
class Finding:
    """One scanned (group, word) pair with verdicts and witnesses."""

    group_spec: str
    group_order: int
    word_text: str
    arity: int
    chiral: Optional[bool]
    weakly_chiral: Optional[bool]
    gammas_agree: Optional[bool]
    chiral_witness: Optional[int]
    weak_witness: Optional[int]
    image_size: Optional[int]
    evaluations: int
    skipped: Optional[str] = None

    @property
    def highlighted(self) -> bool:
        # Achiral but weakly chiral: the open-question shape worth flagging.
        return self.chiral is False and self.weakly_chiral is True

    def to_record(self) -> dict:
        return {
            "schema_version": 1,
            "kind": "finding",
            "group": self.group_spec,
            "order": self.group_order,
            "word": self.word_text,
            "arity": self.arity,
            "chiral": self.chiral,
            "weakly_chiral": self.weakly_chiral,
            "gammas_agree": self.gammas_agree,
            "chiral_witness": self.chiral_witness,
            "weak_witness": self.weak_witness,
            "image_size": self.image_size,
            "evaluations": self.evaluations,
            "highlighted": self.highlighted,
            "skipped": self.skipped,
        }


def _scan_pair(spec: str, g: FiniteGroup, w: Word, auto_cap: int,
               budget: int, threads: int) -> Finding:
    d = w.rank
    try:
        img, fibers = image(g, w, d, want_fibers=True,
                            budget=budget, threads=threads)
    except BudgetExceededError as exc:
        return Finding(spec, g.order, render_word(w), d, None, None, None,
                       None, None, None, 0, skipped=str(exc))
    chiral_witness = _chiral_witness(g, img.members)
    inversion = anti_from_auto(identity_map(g))
    weak_witness = weak_verdict_from_counts(g, fibers.counts, inversion)
    gammas_agree: Optional[bool] = None
    try:
        gammas = enumerate_anti_automorphisms(g, auto_cap)
    except CapExceededError:
        gammas = None
    if gammas is not None:
        inverted = invert_set(g, img.members)
        gammas_agree = True
        for gamma in gammas:
            gamma_chiral = map_set(gamma, img.members) != img.members
            weak = weak_verdict_from_counts(g, fibers.counts, gamma)
            if (gamma_chiral != (chiral_witness is not None)
                    or (weak is not None) != (weak_witness is not None)
                    or map_set(gamma, img.members) != inverted):
                gammas_agree = False
    return Finding(
        group_spec=spec, group_order=g.order, word_text=render_word(w),
        arity=d, chiral=chiral_witness is not None,
        weakly_chiral=weak_witness is not None,
        gammas_agree=gammas_agree,
        chiral_witness=chiral_witness, weak_witness=weak_witness,
        image_size=img.size, evaluations=g.order ** d)


def _is_power_word(w: Word) -> bool:
    return len(w.syllables) <= 1


def search_chiral(rank: int, max_len: int, max_order: int,
                  families: Optional[Sequence[str]] = None,
                  auto_cap: int = 64, budget: int = 2 ** 24,
                  threads: int = 1, full: bool = False) -> Iterator[Finding]:
    """Scan canonical words x catalog groups; yield Findings in order.

    Abelian groups and single-generator power words are skipped as proven
    achiral. By default only positive (chiral or weakly chiral or
    highlighted) findings are yielded; `full` yields every scanned pair.
    """
    groups = [(spec, g) for spec, g in catalog_groups(max_order, families)
              if not is_abelian(g)]
    for w in canonical_words(rank, max_len):
        if _is_power_word(w):
            continue
        for spec, g in groups:
            finding = _scan_pair(spec, g, w, auto_cap, budget, threads)
            if (full or finding.skipped or finding.chiral
                    or finding.weakly_chiral or finding.highlighted):
                yield finding


def replay(record: dict, auto_cap: int = 64, budget: int = 2 ** 24,
           threads: int = 1) -> Tuple[bool, List[str]]:
    """Recompute a finding record from scratch; return (ok, mismatches)."""
    try:
        spec = record["group"]
        word_text = record["word"]
        arity = int(record["arity"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedRecordError(f"missing or bad field: {exc}") from None
    try:
        g = parse_group_spec(spec)
        w = parse_word(word_text, max(arity, 1))
    except ValueError as exc:
        raise MalformedRecordError(str(exc)) from None
    fresh = _scan_pair(spec, g, w, auto_cap, budget, threads).to_record()
    mismatches = []
    for key in ("order", "chiral", "weakly_chiral", "gammas_agree",
                "chiral_witness", "weak_witness", "image_size",
                "evaluations", "highlighted"):
        if key in record and record[key] != fresh[key]:
            mismatches.append(
                f"{key}: recorded {record[key]!r}, recomputed {fresh[key]!r}")
    return (not mismatches, mismatches)
