"""Exhaustive/sampled verification suites for the chirality equivalences.

Each suite sweeps a small-group catalog against canonical reduced words and
asserts an identity that holds for every group: image invariance under free
and group automorphisms, the agreement of chirality with gamma-chirality in
both flavors, and the gamma-independence of weak chirality. Any failure
localizes an implementation bug and carries full reproduction data.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from itertools import product as iter_product
from typing import Iterable, List, Optional, Sequence, Tuple

from .catalog import catalog_groups
from .engine import (
    BudgetExceededError,
    evaluate,
    image,
    invert_set,
    map_set,
    weak_verdict_from_counts,
)
from .groups import (
    CapExceededError,
    FiniteGroup,
    anti_from_auto,
    enumerate_automorphisms,
)
from .words import (
    FreeAntiAuto,
    Word,
    apply_anti,
    canonical_form,
    enumerate_words,
    invert,
    random_automorphism,
    render_word,
    substitute,
)

MAX_RECORDED_FAILURES = 100


@dataclass
class Bounds:
    """Parameter bounds for one verification run."""

    max_order: int = 16
    max_word_len: int = 4
    rank: int = 2
    theta_samples: int = 5
    gamma_samples: int = 10
    theta_length: int = 5
    seed: int = 0
    auto_cap: int = 64
    budget: int = 2 ** 24
    threads: int = 1
    families: Optional[Tuple[str, ...]] = None

    def to_dict(self) -> dict:
        return {
            "max_order": self.max_order,
            "max_word_len": self.max_word_len,
            "rank": self.rank,
            "theta_samples": self.theta_samples,
            "gamma_samples": self.gamma_samples,
            "theta_length": self.theta_length,
            "seed": self.seed,
            "auto_cap": self.auto_cap,
            "budget": self.budget,
            "families": list(self.families) if self.families else None,
        }


@dataclass
class VerificationReport:
    suite: str
    bounds: Bounds
    cases: int = 0
    failures: List[dict] = field(default_factory=list)
    skipped: List[dict] = field(default_factory=list)
    wall_time_s: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def record_failure(self, record: dict) -> None:
        if len(self.failures) < MAX_RECORDED_FAILURES:
            self.failures.append(record)

    def to_structured(self) -> dict:
        return {
            "schema_version": 1,
            "kind": "verification-report",
            "suite": self.suite,
            "bounds": self.bounds.to_dict(),
            "cases": self.cases,
            "passed": self.passed,
            "failures": self.failures,
            "skipped": self.skipped,
            "wall_time_s": self.wall_time_s,
        }


def derived_seed(seed: int, *parts) -> int:
    """Stable sub-seed derived from a base seed and string-able parts."""
    text = ":".join([str(seed), *map(str, parts)])
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


def canonical_words(rank: int, max_len: int) -> List[Word]:
    """Canonical orbit representatives, in enumeration order."""
    return [w for w in enumerate_words(rank, max_len)
            if canonical_form(w) == w]


def _grid(bounds: Bounds) -> Iterable[Tuple[str, FiniteGroup, Word]]:
    words = canonical_words(bounds.rank, bounds.max_word_len)
    for spec, g in catalog_groups(bounds.max_order, bounds.families):
        for w in words:
            yield spec, g, w


def _skip(report: VerificationReport, spec: str, w: Word, reason: str) -> None:
    report.skipped.append(
        {"group": spec, "word": render_word(w), "reason": reason})


def verify_lemma(bounds: Bounds) -> VerificationReport:
    """G_w = G_{theta(w)} for sampled theta in A(F_d), and zeta(G_w) = G_w
    for every zeta in A(G)."""
    report = VerificationReport("lemma1", bounds)
    start = time.perf_counter()
    for spec, g, w in _grid(bounds):
        try:
            autos = enumerate_automorphisms(g, bounds.auto_cap)
            img = image(g, w, budget=bounds.budget, threads=bounds.threads)
        except (BudgetExceededError, CapExceededError) as exc:
            _skip(report, spec, w, str(exc))
            continue
        for i in range(bounds.theta_samples):
            theta = random_automorphism(
                bounds.rank, bounds.theta_length,
                derived_seed(bounds.seed, "lemma-theta", render_word(w), i))
            tw = substitute(w, theta)
            try:
                img2 = image(g, tw, max(w.rank, tw.support_rank),
                             budget=bounds.budget, threads=bounds.threads)
            except BudgetExceededError as exc:
                _skip(report, spec, tw, str(exc))
                continue
            report.cases += 1
            if img2.members != img.members:
                report.record_failure({
                    "check": "image-invariance-under-theta",
                    "group": spec, "word": render_word(w),
                    "theta_images": [render_word(t) for t in theta.images],
                    "theta_word": render_word(tw),
                    "members_w": list(img.member_indices),
                    "members_theta_w": list(img2.member_indices),
                })
        for zi, zeta in enumerate(autos):
            report.cases += 1
            if map_set(zeta, img.members) != img.members:
                report.record_failure({
                    "check": "image-invariance-under-zeta",
                    "group": spec, "word": render_word(w),
                    "zeta_index": zi, "zeta_images": list(zeta.images),
                    "members_w": list(img.member_indices),
                })
    report.wall_time_s = time.perf_counter() - start
    return report


def verify_theorem1(bounds: Bounds) -> VerificationReport:
    """G_{gamma(w)} = G_{w^-1} for sampled gamma in AA(F_d), hence
    chirality and word gamma-chirality verdicts coincide."""
    report = VerificationReport("thm1", bounds)
    start = time.perf_counter()
    for spec, g, w in _grid(bounds):
        try:
            inv_img = image(g, invert(w), budget=bounds.budget,
                            threads=bounds.threads)
        except BudgetExceededError as exc:
            _skip(report, spec, w, str(exc))
            continue
        for i in range(bounds.gamma_samples):
            theta = random_automorphism(
                bounds.rank, bounds.theta_length,
                derived_seed(bounds.seed, "thm1-gamma", render_word(w), i))
            gamma = FreeAntiAuto(theta)
            gw = apply_anti(w, gamma)
            try:
                img = image(g, gw, max(w.rank, gw.support_rank),
                            budget=bounds.budget, threads=bounds.threads)
            except BudgetExceededError as exc:
                _skip(report, spec, gw, str(exc))
                continue
            report.cases += 1
            if img.members != inv_img.members:
                report.record_failure({
                    "check": "image-of-gamma-w-equals-image-of-w-inverse",
                    "group": spec, "word": render_word(w),
                    "theta_images": [render_word(t) for t in theta.images],
                    "gamma_word": render_word(gw),
                    "members_gamma_w": list(img.member_indices),
                    "members_w_inverse": list(inv_img.member_indices),
                })
    report.wall_time_s = time.perf_counter() - start
    return report


def verify_theorem2(bounds: Bounds) -> VerificationReport:
    """gamma(G_w) = (G_w)^-1 for every gamma in AA(G), hence group
    gamma-chirality coincides with chirality."""
    report = VerificationReport("thm2", bounds)
    start = time.perf_counter()
    for spec, g, w in _grid(bounds):
        try:
            autos = enumerate_automorphisms(g, bounds.auto_cap)
            img = image(g, w, budget=bounds.budget, threads=bounds.threads)
        except (BudgetExceededError, CapExceededError) as exc:
            _skip(report, spec, w, str(exc))
            continue
        inverted = invert_set(g, img.members)
        for zi, zeta in enumerate(autos):
            gamma = anti_from_auto(zeta)
            report.cases += 1
            if map_set(gamma, img.members) != inverted:
                report.record_failure({
                    "check": "gamma-image-equals-inverted-image",
                    "group": spec, "word": render_word(w),
                    "zeta_index": zi, "gamma_images": list(gamma.images),
                    "members_w": list(img.member_indices),
                })
    report.wall_time_s = time.perf_counter() - start
    return report


def verify_remark(bounds: Bounds) -> VerificationReport:
    """The weak-chirality verdict is identical across all gamma in AA(G),
    and counts_{w_gamma}[x] = counts_w[gamma^-1(x)] matches direct twisted
    enumeration."""
    report = VerificationReport("remark", bounds)
    start = time.perf_counter()
    for spec, g, w in _grid(bounds):
        try:
            autos = enumerate_automorphisms(g, bounds.auto_cap)
            _, fibers = image(g, w, want_fibers=True,
                              budget=bounds.budget, threads=bounds.threads)
        except (BudgetExceededError, CapExceededError) as exc:
            _skip(report, spec, w, str(exc))
            continue
        # One direct evaluation pass, shared by every gamma's twisted count.
        values = [evaluate(g, w, tup)
                  for tup in iter_product(range(g.order), repeat=w.rank)]
        verdicts = []
        for zi, zeta in enumerate(autos):
            gamma = anti_from_auto(zeta)
            gamma_inv = gamma.inverse()
            twisted_direct = [0] * g.order
            for v in values:
                twisted_direct[gamma.images[v]] += 1
            predicted = [fibers.counts[gamma_inv.images[x]]
                         for x in g.elements()]
            report.cases += 1
            if twisted_direct != predicted:
                report.record_failure({
                    "check": "twisted-fiber-identity",
                    "group": spec, "word": render_word(w),
                    "zeta_index": zi, "gamma_images": list(gamma.images),
                    "direct_counts": twisted_direct,
                    "predicted_counts": predicted,
                })
            witness = weak_verdict_from_counts(g, fibers.counts, gamma)
            verdicts.append(witness is not None)
        report.cases += 1
        if len(set(verdicts)) > 1:
            report.record_failure({
                "check": "weak-verdict-gamma-independence",
                "group": spec, "word": render_word(w),
                "verdicts": verdicts,
            })
    report.wall_time_s = time.perf_counter() - start
    return report


_SUITES = {
    "lemma1": verify_lemma,
    "thm1": verify_theorem1,
    "thm2": verify_theorem2,
    "remark": verify_remark,
}


def run_suite(name: str, bounds: Bounds) -> VerificationReport:
    try:
        suite = _SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; "
                         f"choose from {sorted(_SUITES)} or 'all'") from None
    return suite(bounds)


def run_all(bounds: Bounds) -> List[VerificationReport]:
    return [suite(bounds) for suite in _SUITES.values()]


def summarize(reports: Sequence[VerificationReport]) -> dict:
    return {
        "schema_version": 1,
        "kind": "verification-summary",
        "passed": all(r.passed for r in reports),
        "suites": [r.to_structured() for r in reports],
    }
