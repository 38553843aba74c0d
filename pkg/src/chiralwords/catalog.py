"""Small-group catalog used by the verifier suites and the search sweep."""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .groups import FiniteGroup, parse_group_spec

# Non-cyclic groups carried alongside C1..Cn. Dihedral specs use group
# order (D6 is S3); extra abelian products cover non-cyclic abelian types.
_EXTRA_SPECS = [
    "C2xC2", "C2xC4", "C2xC6", "C2xC8", "C2xC2xC2", "C3xC3", "C4xC4",
    "D4", "D6", "D8", "D10", "D12", "D14", "D16", "D18", "D20", "D22", "D24",
    "Q8", "Q8xC2", "S3", "S4", "A4", "A5",
]

MAX_CYCLIC = 32


def catalog_specs(max_order: int,
                  families: Optional[Sequence[str]] = None) -> List[str]:
    """Group specs with order <= max_order, sorted by (order, spec).

    `families` filters by leading family letter(s), e.g. ["C", "D"].
    """
    specs: List[Tuple[int, str]] = []
    for n in range(1, min(max_order, MAX_CYCLIC) + 1):
        specs.append((n, f"C{n}"))
    for spec in _EXTRA_SPECS:
        g = parse_group_spec(spec)
        if g.order <= max_order:
            specs.append((g.order, spec))
    specs.sort()
    out = [s for _, s in specs]
    if families is not None:
        allowed = {f.upper() for f in families}
        out = [s for s in out if s[0].upper() in allowed]
    return out


def catalog_groups(max_order: int,
                   families: Optional[Sequence[str]] = None
                   ) -> List[Tuple[str, FiniteGroup]]:
    return [(spec, parse_group_spec(spec))
            for spec in catalog_specs(max_order, families)]
