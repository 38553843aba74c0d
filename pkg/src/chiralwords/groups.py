"""Finite groups as Cayley tables, plus automorphism machinery.

Elements are integers 0..n-1 with the identity always at index 0. Group
families, file loading, permutation closure, full validation, automorphism
enumeration, and the bijection between automorphisms and anti-automorphisms
all live here.
"""

from __future__ import annotations

import functools
import itertools
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

DEFAULT_ORDER_CAP = 512
DEFAULT_AUTO_CAP = 64

AUTOMORPHISM = "automorphism"
ANTI_AUTOMORPHISM = "anti-automorphism"


class GroupError(ValueError):
    """Invalid group data or unsupported construction."""


class GroupSpecError(GroupError):
    """Unparseable or out-of-range group spec string."""


class CapExceededError(GroupError):
    """A configured order/automorphism cap was exceeded."""


@dataclass(frozen=True)
class FiniteGroup:
    """Group given by its full multiplication table; identity is index 0."""

    name: str
    order: int
    table: Tuple[Tuple[int, ...], ...]
    inverses: Tuple[int, ...]
    labels: Tuple[str, ...]

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverses[a], -k
        result, base = 0, a
        while k:
            if k & 1:
                result = self.table[result][base]
            base = self.table[base][base]
            k >>= 1
        return result

    def elements(self) -> range:
        return range(self.order)


def _build_group(name: str, table: Sequence[Sequence[int]],
                 labels: Optional[Sequence[str]] = None) -> FiniteGroup:
    """Wrap a trusted table (identity at 0) after computing inverses."""
    n = len(table)
    if labels is None:
        labels = [f"g{i}" for i in range(n)]
    if len(set(labels)) != n:
        raise GroupError("labels are not unique")
    inverses = []
    for a in range(n):
        inv = next((b for b in range(n)
                    if table[a][b] == 0 and table[b][a] == 0), None)
        if inv is None:
            raise GroupError(f"element {a} has no inverse")
        inverses.append(inv)
    return FiniteGroup(name, n, tuple(tuple(row) for row in table),
                       tuple(inverses), tuple(labels))


@dataclass
class GroupValidation:
    """Outcome of validate_group: ok iff violations is empty."""

    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_group(table: Sequence[Sequence[int]],
                   max_violations: int = 10) -> GroupValidation:
    """Check that a square table over 0..n-1 is a group.

    Verifies squareness, entry range, row/column bijectivity, the existence
    of a two-sided identity and inverses, and associativity over all n^3
    triples. Violations name the offending entries.
    """
    report = GroupValidation()

    def add(msg: str) -> bool:
        report.violations.append(msg)
        return len(report.violations) >= max_violations

    n = len(table)
    if n == 0:
        add("empty table")
        return report
    for a, row in enumerate(table):
        if len(row) != n:
            add(f"row {a} has length {len(row)}, expected {n}")
            return report
        for b, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                add(f"entry table[{a}][{b}] = {v!r} out of range 0..{n - 1}")
                return report
    for a in range(n):
        if len(set(table[a])) != n and add(f"row {a} is not a permutation"):
            return report
        col = {table[b][a] for b in range(n)}
        if len(col) != n and add(f"column {a} is not a permutation"):
            return report
    identity = next((e for e in range(n)
                     if all(table[e][b] == b and table[b][e] == b
                            for b in range(n))), None)
    if identity is None:
        add("no two-sided identity element")
        return report
    for a in range(n):
        if not any(table[a][b] == identity and table[b][a] == identity
                   for b in range(n)):
            if add(f"element {a} has no two-sided inverse"):
                return report
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            row_a = table[a]
            for c in range(n):
                if table[ab][c] != row_a[table[b][c]]:
                    if add(f"associativity fails at ({a},{b},{c})"):
                        return report
    return report


def find_identity(table: Sequence[Sequence[int]]) -> Optional[int]:
    n = len(table)
    for e in range(n):
        if all(table[e][b] == b and table[b][e] == b for b in range(n)):
            return e
    return None


# --- group families ------------------------------------------------------

def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupSpecError(f"C{n}: order must be >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return _build_group(f"C{n}", table, [str(i) for i in range(n)])


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of ORDER n (even n >= 4); D6 is isomorphic to S3.

    Elements are rotations r^0..r^(m-1) followed by reflections s*r^0..,
    where m = n/2.
    """
    if n < 4 or n % 2:
        raise GroupSpecError(f"D{n}: order must be even and >= 4")
    m = n // 2

    def mul(a: int, b: int) -> int:
        f1, k1 = divmod(a, m)
        f2, k2 = divmod(b, m)
        k = (k1 * (-1 if f2 else 1) + k2) % m
        return ((f1 + f2) % 2) * m + k

    table = [[mul(a, b) for b in range(n)] for a in range(n)]
    labels = [f"r{k}" for k in range(m)] + [f"sr{k}" for k in range(m)]
    return _build_group(f"D{n}", table, labels)


_Q8_UNIT_MUL = {
    # (u1, u2) -> (sign, unit) over units e,i,j,k
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def quaternion_group() -> FiniteGroup:
    """Q8 with element order 1, -1, i, -i, j, -j, k, -k."""
    def unpack(a: int) -> Tuple[int, int]:
        return (1 if a % 2 == 0 else -1), a // 2

    def pack(sign: int, unit: int) -> int:
        return unit * 2 + (0 if sign == 1 else 1)

    def mul(a: int, b: int) -> int:
        sa, ua = unpack(a)
        sb, ub = unpack(b)
        s, u = _Q8_UNIT_MUL[(ua, ub)]
        return pack(sa * sb * s, u)

    table = [[mul(a, b) for b in range(8)] for a in range(8)]
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return _build_group("Q8", table, labels)


def _perm_compose(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
    """(p . q)(x) = p[q[x]]."""
    return tuple(p[q[x]] for x in range(len(q)))


def _perm_parity(p: Tuple[int, ...]) -> int:
    seen = [False] * len(p)
    parity = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        j, cycle = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            cycle += 1
        parity ^= (cycle - 1) & 1
    return parity


def _cycle_label(p: Tuple[int, ...]) -> str:
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cycle, j = [], i
        while not seen[j]:
            seen[j] = True
            cycle.append(str(j + 1))
            j = p[j]
        parts.append("(" + " ".join(cycle) + ")")
    return "".join(parts) or "e"


def _group_from_perms(name: str, perms: List[Tuple[int, ...]]) -> FiniteGroup:
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[_perm_compose(p, q)] for q in perms] for p in perms]
    return _build_group(name, table, [_cycle_label(p) for p in perms])


def symmetric_group(n: int) -> FiniteGroup:
    if not 2 <= n <= 5:
        raise GroupSpecError(f"S{n}: degree must be in 2..5")
    perms = list(itertools.permutations(range(n)))  # lex order, identity first
    return _group_from_perms(f"S{n}", perms)


def alternating_group(n: int) -> FiniteGroup:
    if not 3 <= n <= 5:
        raise GroupSpecError(f"A{n}: degree must be in 3..5")
    perms = [p for p in itertools.permutations(range(n)) if _perm_parity(p) == 0]
    return _group_from_perms(f"A{n}", perms)


_FAMILY_RE = re.compile(r"^([CDSA])(\d+)$")


def build_family(spec: str) -> FiniteGroup:
    """Build a named family group: C<n>, D<n> (n = order), Q8, S<n>, A<n>."""
    spec = spec.strip()
    if spec == "Q8":
        return quaternion_group()
    m = _FAMILY_RE.match(spec)
    if not m:
        raise GroupSpecError(f"unknown group family spec {spec!r}")
    family, n = m.group(1), int(m.group(2))
    if family == "C":
        return cyclic_group(n)
    if family == "D":
        return dihedral_group(n)
    if family == "S":
        return symmetric_group(n)
    return alternating_group(n)


def direct_product(g: FiniteGroup, h: FiniteGroup,
                   order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Componentwise product; pair (i, j) gets index i*|h| + j."""
    n = g.order * h.order
    if n > order_cap:
        raise CapExceededError(
            f"product order {n} exceeds cap {order_cap}")
    nh = h.order
    table = [[g.table[i1][i2] * nh + h.table[j1][j2]
              for i2 in range(g.order) for j2 in range(nh)]
             for i1 in range(g.order) for j1 in range(nh)]
    labels = [f"({g.labels[i]},{h.labels[j]})"
              for i in range(g.order) for j in range(nh)]
    return _build_group(f"{g.name}x{h.name}", table, labels)


def from_cayley_document(doc: dict) -> FiniteGroup:
    """Build a fully validated group from a parsed Cayley document.

    The document holds `order`, `table`, and optionally `name` and `labels`.
    If the table's identity is not at index 0, elements are relabeled so
    that it is.
    """
    try:
        order = int(doc["order"])
        table = doc["table"]
    except (KeyError, TypeError, ValueError) as exc:
        raise GroupError(f"malformed Cayley document: {exc}") from None
    if len(table) != order:
        raise GroupError(f"table has {len(table)} rows, order says {order}")
    report = validate_group(table)
    if not report.ok:
        raise GroupError("invalid group table: " + "; ".join(report.violations))
    name = str(doc.get("name", "file-group"))
    labels = doc.get("labels")
    if labels is None:
        labels = [f"g{i}" for i in range(order)]
    if len(labels) != order:
        raise GroupError("labels length does not match order")
    identity = find_identity(table)
    assert identity is not None
    if identity != 0:
        old_order = [identity] + [a for a in range(order) if a != identity]
        new_index = {old: new for new, old in enumerate(old_order)}
        table = [[new_index[table[a][b]] for b in old_order] for a in old_order]
        labels = [labels[a] for a in old_order]
    return _build_group(name, table, labels)


def from_permutation_generators(perms: Sequence[Sequence[int]],
                                name: str = "perm-group",
                                order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Close a set of permutations of 0..m-1 under composition.

    Elements are ordered by breadth-first discovery from the identity.
    """
    gens = []
    for p in perms:
        t = tuple(p)
        if sorted(t) != list(range(len(t))):
            raise GroupError(f"not a permutation: {p}")
        gens.append(t)
    m = len(gens[0]) if gens else 1
    if any(len(p) != m for p in gens):
        raise GroupError("generators act on different sets")
    ident = tuple(range(m))
    elements = [ident]
    index = {ident: 0}
    queue = [ident]
    while queue:
        x = queue.pop(0)
        for gen in gens:
            y = _perm_compose(x, gen)
            if y not in index:
                if len(elements) >= order_cap:
                    raise CapExceededError(
                        f"closure exceeds order cap {order_cap}")
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    table = [[index[_perm_compose(p, q)] for q in elements] for p in elements]
    return _build_group(name, table, [_cycle_label(p) for p in elements])


def load_group_file(path: str | Path) -> FiniteGroup:
    """Load a group from a JSON document: Cayley table or `perm-gens`."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise GroupError(f"cannot read group file {path}: {exc}") from None
    if "perm-gens" in doc:
        return from_permutation_generators(
            doc["perm-gens"], name=str(doc.get("name", Path(path).stem)))
    return from_cayley_document(doc)


def parse_group_spec(spec: str) -> FiniteGroup:
    """CLI group spec: family token, `x`-separated product, or @<path>."""
    spec = spec.strip()
    if spec.startswith("@"):
        return load_group_file(spec[1:])
    parts = spec.split("x")
    group = build_family(parts[0])
    for part in parts[1:]:
        group = direct_product(group, build_family(part))
    return group


# --- element utilities ----------------------------------------------------

@functools.lru_cache(maxsize=None)
def element_orders(g: FiniteGroup) -> Tuple[int, ...]:
    orders = []
    for a in g.elements():
        x, k = a, 1
        while x != 0:
            x = g.mul(x, a)
            k += 1
        orders.append(k)
    return tuple(orders)


@functools.lru_cache(maxsize=None)
def is_abelian(g: FiniteGroup) -> bool:
    return all(g.table[a][b] == g.table[b][a]
               for a in g.elements() for b in g.elements())


# --- automorphisms and anti-automorphisms ---------------------------------

@dataclass(frozen=True)
class GroupMap:
    """Bijection of a group verified as automorphism or anti-automorphism."""

    group: FiniteGroup
    images: Tuple[int, ...]
    kind: str

    def __post_init__(self):
        g, images = self.group, self.images
        if sorted(images) != list(g.elements()):
            raise GroupError("images are not a permutation")
        if images[0] != 0:
            raise GroupError("map does not fix the identity")
        if self.kind == AUTOMORPHISM:
            ok = all(images[g.table[a][b]] == g.table[images[a]][images[b]]
                     for a in g.elements() for b in g.elements())
        elif self.kind == ANTI_AUTOMORPHISM:
            ok = all(images[g.table[a][b]] == g.table[images[b]][images[a]]
                     for a in g.elements() for b in g.elements())
        else:
            raise GroupError(f"unknown map kind {self.kind!r}")
        if not ok:
            raise GroupError(f"map violates the {self.kind} law")

    def __call__(self, a: int) -> int:
        return self.images[a]

    def inverse(self) -> "GroupMap":
        inv = [0] * self.group.order
        for a, fa in enumerate(self.images):
            inv[fa] = a
        return GroupMap(self.group, tuple(inv), self.kind)


def identity_map(g: FiniteGroup) -> GroupMap:
    return GroupMap(g, tuple(g.elements()), AUTOMORPHISM)


def inner_automorphism(g: FiniteGroup, a: int) -> GroupMap:
    """Conjugation x -> a*x*a^-1."""
    ai = g.inv(a)
    images = tuple(g.mul(g.mul(a, x), ai) for x in g.elements())
    return GroupMap(g, images, AUTOMORPHISM)


def anti_from_auto(zeta: GroupMap) -> GroupMap:
    """The anti-automorphism x -> zeta(x^-1)."""
    if zeta.kind != AUTOMORPHISM:
        raise GroupError("expected an automorphism")
    g = zeta.group
    images = tuple(zeta.images[g.inv(x)] for x in g.elements())
    return GroupMap(g, images, ANTI_AUTOMORPHISM)


def auto_from_anti(gamma: GroupMap) -> GroupMap:
    """The automorphism x -> gamma(x^-1); inverse of anti_from_auto."""
    if gamma.kind != ANTI_AUTOMORPHISM:
        raise GroupError("expected an anti-automorphism")
    g = gamma.group
    images = tuple(gamma.images[g.inv(x)] for x in g.elements())
    return GroupMap(g, images, AUTOMORPHISM)


def _greedy_generators(g: FiniteGroup) -> List[int]:
    """First elements, in index order, that strictly grow the subgroup."""
    gens: List[int] = []
    generated = {0}
    for a in g.elements():
        if a not in generated:
            gens.append(a)
            generated = _closure(g, gens)
    return gens


def _closure(g: FiniteGroup, gens: Sequence[int]) -> set:
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for a in gens:
                y = g.table[x][a]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _extend_map(g: FiniteGroup, h: FiniteGroup, gens: Sequence[int],
                images: Sequence[int]) -> Optional[dict]:
    """Grow the map <gens> -> h determined by generator images.

    Returns the (injective, product-consistent) partial map or None on the
    first conflict. When gens generate g and the map covers it, consistency
    over every (element, generator) product makes it a full homomorphism.
    """
    mapping = {0: 0}
    used = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            fx = mapping[x]
            for a, fa in zip(gens, images):
                y = g.table[x][a]
                fy = h.table[fx][fa]
                if y in mapping:
                    if mapping[y] != fy:
                        return None
                else:
                    if fy in used:
                        return None
                    mapping[y] = fy
                    used.add(fy)
                    nxt.append(y)
        frontier = nxt
    return mapping


def _image_search(g: FiniteGroup, h: FiniteGroup, first_only: bool) -> List[Tuple[int, ...]]:
    """Backtrack over generator images; yields full bijective image arrays."""
    gens = _greedy_generators(g)
    g_orders = element_orders(g)
    h_orders = element_orders(h)
    results: List[Tuple[int, ...]] = []

    def rec(i: int, chosen: List[int]) -> bool:
        if i == len(gens):
            mapping = _extend_map(g, h, gens, chosen)
            if mapping is not None and len(mapping) == g.order:
                results.append(tuple(mapping[x] for x in g.elements()))
                return first_only
            return False
        target_order = g_orders[gens[i]]
        for c in h.elements():
            if h_orders[c] != target_order:
                continue
            if _extend_map(g, h, gens[: i + 1], chosen + [c]) is None:
                continue
            if rec(i + 1, chosen + [c]):
                return True
        return False

    if g.order == 1:
        return [(0,)] if h.order == 1 else []
    rec(0, [])
    return results


@functools.lru_cache(maxsize=None)
def enumerate_automorphisms(g: FiniteGroup,
                            cap: int = DEFAULT_AUTO_CAP) -> Tuple[GroupMap, ...]:
    """All automorphisms of g, in deterministic (image-array) order."""
    if g.order > cap:
        raise CapExceededError(
            f"|G| = {g.order} exceeds automorphism cap {cap}")
    arrays = sorted(_image_search(g, g, first_only=False))
    return tuple(GroupMap(g, arr, AUTOMORPHISM) for arr in arrays)


@functools.lru_cache(maxsize=None)
def enumerate_anti_automorphisms(g: FiniteGroup,
                                 cap: int = DEFAULT_AUTO_CAP) -> Tuple[GroupMap, ...]:
    """All anti-automorphisms, via the bijection with automorphisms."""
    return tuple(anti_from_auto(z) for z in enumerate_automorphisms(g, cap))


def is_isomorphic(g: FiniteGroup, h: FiniteGroup,
                  cap: int = DEFAULT_AUTO_CAP) -> bool:
    if max(g.order, h.order) > cap:
        raise CapExceededError(
            f"orders {g.order}, {h.order} exceed isomorphism cap {cap}")
    if g.order != h.order:
        return False
    if sorted(element_orders(g)) != sorted(element_orders(h)):
        return False
    return bool(_image_search(g, h, first_only=True))
