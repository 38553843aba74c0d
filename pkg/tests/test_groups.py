import itertools
import random

import pytest

from chiralwords.groups import (
    ANTI_AUTOMORPHISM,
    AUTOMORPHISM,
    CapExceededError,
    FiniteGroup,
    GroupError,
    GroupMap,
    GroupSpecError,
    anti_from_auto,
    auto_from_anti,
    build_family,
    direct_product,
    element_orders,
    enumerate_anti_automorphisms,
    enumerate_automorphisms,
    from_cayley_document,
    from_permutation_generators,
    identity_map,
    inner_automorphism,
    is_abelian,
    is_isomorphic,
    parse_group_spec,
    validate_group,
)

# Smallest non-associative loop: Latin square with identity and two-sided
# inverses but (1*1)*2 != 1*(1*2).
NONASSOC_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


def naive_automorphisms(g: FiniteGroup):
    """Order-profile-filtered scan over all identity-fixing permutations."""
    orders = element_orders(g)
    n = g.order
    found = []
    for perm in itertools.permutations(range(1, n)):
        images = (0,) + perm
        if any(orders[images[a]] != orders[a] for a in range(n)):
            continue
        if all(images[g.mul(a, b)] == g.mul(images[a], images[b])
               for a in range(n) for b in range(n)):
            found.append(images)
    return found


# --- families ----------------------------------------------------------------

def test_cyclic():
    c4 = build_family("C4")
    assert c4.order == 4
    assert c4.table[1][3] == 0
    assert element_orders(c4) == (1, 4, 2, 4)


def test_dihedral_order_convention():
    d6 = build_family("D6")
    assert d6.order == 6
    assert not is_abelian(d6)
    assert is_isomorphic(d6, build_family("S3"))


def test_quaternion_orders():
    q8 = build_family("Q8")
    orders = sorted(element_orders(q8))
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]


def test_symmetric_and_alternating():
    s4 = build_family("S4")
    assert s4.order == 24
    a4 = build_family("A4")
    assert a4.order == 12
    assert sorted(element_orders(a4)).count(3) == 8


@pytest.mark.parametrize("spec", ["D5", "D2", "S6", "S1", "A2", "A6", "C0",
                                  "Z4", "Q16"])
def test_family_rejects(spec):
    with pytest.raises(GroupSpecError):
        build_family(spec)


def test_families_validate():
    for spec in ["C1", "C7", "D8", "Q8", "S3", "S4", "A4"]:
        g = build_family(spec)
        assert validate_group(g.table).ok, spec


# --- direct product -----------------------------------------------------------

def test_klein_four():
    v = direct_product(build_family("C2"), build_family("C2"))
    assert v.order == 4
    assert all(o == 2 for o in element_orders(v)[1:])


def test_product_identity_and_iso():
    g = build_family("S3")
    assert is_isomorphic(direct_product(build_family("C1"), g), g)
    assert is_isomorphic(
        direct_product(build_family("C2"), build_family("C3")),
        build_family("C6"))


def test_product_order_cap():
    c30 = build_family("C30")
    with pytest.raises(CapExceededError):
        direct_product(c30, c30, order_cap=512)


# --- file documents -----------------------------------------------------------

def test_cayley_document_valid():
    doc = {"name": "C3", "order": 3,
           "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}
    g = from_cayley_document(doc)
    assert g.order == 3
    assert element_orders(g) == (1, 3, 3)


def test_cayley_document_broken_associativity():
    doc = {"order": 5, "table": NONASSOC_LOOP}
    with pytest.raises(GroupError, match="associativity fails at"):
        from_cayley_document(doc)


def test_cayley_document_relocates_identity():
    # Z3 written with its identity at index 2
    elems = [1, 2, 0]
    pos = {v: i for i, v in enumerate(elems)}
    table = [[pos[(a + b) % 3] for b in elems] for a in elems]
    g = from_cayley_document({"order": 3, "table": table,
                              "labels": ["one", "two", "zero"]})
    assert g.table[0][1] == 1 and g.table[0][2] == 2
    assert g.labels[0] == "zero"
    assert is_isomorphic(g, build_family("C3"))


# --- permutation generators ----------------------------------------------------

def test_perm_generators_cyclic():
    g = from_permutation_generators([[1, 2, 0]])
    assert is_isomorphic(g, build_family("C3"))


def test_perm_generators_two_transpositions():
    g = from_permutation_generators([[1, 0, 2], [0, 2, 1]])
    assert g.order == 6
    assert is_isomorphic(g, build_family("S3"))


def test_perm_generators_empty_and_errors():
    assert from_permutation_generators([]).order == 1
    with pytest.raises(GroupError):
        from_permutation_generators([[0, 0, 1]])
    with pytest.raises(CapExceededError):
        from_permutation_generators([[1, 2, 3, 4, 0], [1, 0, 2, 3, 4]],
                                    order_cap=16)


# --- validation -----------------------------------------------------------------

def test_validate_accepts_groups():
    assert validate_group(build_family("C5").table).ok
    assert validate_group([[0]]).ok


def test_validate_rejects_corruption():
    table = [list(row) for row in build_family("C8").table]
    rng = random.Random(8)
    for _ in range(50):
        a, b = rng.randrange(8), rng.randrange(8)
        old = table[a][b]
        table[a][b] = rng.choice([v for v in range(8) if v != old])
        assert not validate_group(table).ok
        table[a][b] = old


def test_validate_reports_law():
    report = validate_group(NONASSOC_LOOP)
    assert not report.ok
    assert any("associativity" in v for v in report.violations)


# --- automorphisms ----------------------------------------------------------------

@pytest.mark.parametrize("spec,count", [
    ("C4", 2), ("S3", 6), ("C2xC2", 6), ("C5", 4), ("Q8", 24),
])
def test_automorphism_counts(spec, count):
    assert len(enumerate_automorphisms(parse_group_spec(spec))) == count


@pytest.mark.parametrize("spec", ["C1", "C4", "C6", "S3", "C2xC2", "D6"])
def test_automorphisms_match_naive_oracle(spec):
    g = parse_group_spec(spec)
    got = sorted(a.images for a in enumerate_automorphisms(g))
    assert got == sorted(naive_automorphisms(g))


def test_automorphism_cap():
    with pytest.raises(CapExceededError):
        enumerate_automorphisms(build_family("S4"), cap=16)


def test_inner_automorphisms():
    s3 = build_family("S3")
    assert inner_automorphism(s3, 0).images == identity_map(s3).images
    c6 = build_family("C6")
    for a in c6.elements():
        assert inner_automorphism(c6, a).images == identity_map(c6).images
    # conjugation permutes the set of transpositions
    orders = element_orders(s3)
    transpositions = {x for x in s3.elements() if orders[x] == 2}
    for a in s3.elements():
        conj = inner_automorphism(s3, a)
        assert {conj.images[x] for x in transpositions} == transpositions


def test_inner_automorphisms_are_enumerated():
    for spec in ["S3", "Q8", "A4"]:
        g = parse_group_spec(spec)
        enumerated = {a.images for a in enumerate_automorphisms(g)}
        for a in g.elements():
            assert inner_automorphism(g, a).images in enumerated


# --- anti-automorphism correspondence ----------------------------------------------

def test_anti_from_identity_is_inversion():
    g = build_family("S3")
    gamma = anti_from_auto(identity_map(g))
    assert gamma.kind == ANTI_AUTOMORPHISM
    assert gamma.images == g.inverses


def test_inversion_is_automorphism_on_abelian():
    g = build_family("C12")
    gamma = anti_from_auto(identity_map(g))
    # on an abelian group the same images also satisfy the automorphism law
    GroupMap(g, gamma.images, AUTOMORPHISM)


@pytest.mark.parametrize("spec", ["C4", "S3", "Q8", "C2xC2"])
def test_anti_auto_round_trip(spec):
    g = parse_group_spec(spec)
    for zeta in enumerate_automorphisms(g):
        gamma = anti_from_auto(zeta)
        assert auto_from_anti(gamma).images == zeta.images
    for gamma in enumerate_anti_automorphisms(g):
        assert anti_from_auto(auto_from_anti(gamma)).images == gamma.images


def test_anti_counts_match_auto_counts():
    for spec in ["C4", "S3", "Q8"]:
        g = parse_group_spec(spec)
        assert len(enumerate_anti_automorphisms(g)) == \
            len(enumerate_automorphisms(g))


def test_composition_of_antis_is_automorphism():
    g = build_family("S3")
    antis = enumerate_anti_automorphisms(g)
    for g1 in antis[:4]:
        for g2 in antis[:4]:
            composed = tuple(g1.images[g2.images[x]] for x in g.elements())
            GroupMap(g, composed, AUTOMORPHISM)  # constructor verifies the law


def test_group_map_rejects_wrong_kind():
    g = build_family("S3")
    with pytest.raises(GroupError):
        GroupMap(g, g.inverses, AUTOMORPHISM)  # inversion is anti on S3
    with pytest.raises(GroupError):
        auto_from_anti(identity_map(g))


# --- utilities ----------------------------------------------------------------------

def test_utilities():
    assert is_abelian(build_family("C12"))
    assert not is_abelian(build_family("S4"))
    assert is_isomorphic(build_family("D6"), build_family("S3"))
    assert not is_isomorphic(build_family("C4"), parse_group_spec("C2xC2"))
    assert not is_isomorphic(build_family("Q8"), build_family("D8"))


def test_parse_group_spec():
    assert parse_group_spec("C2xC4").order == 8
    assert parse_group_spec("Q8xC2").order == 16
    with pytest.raises(GroupSpecError):
        parse_group_spec("E8")


def test_parse_group_spec_file(tmp_path):
    path = tmp_path / "c3.json"
    path.write_text('{"name": "myC3", "order": 3, '
                    '"table": [[0,1,2],[1,2,0],[2,0,1]]}')
    g = parse_group_spec(f"@{path}")
    assert g.name == "myC3"
    assert g.order == 3
    perm_path = tmp_path / "s3.json"
    perm_path.write_text('{"perm-gens": [[1,0,2],[0,2,1]]}')
    assert parse_group_spec(f"@{perm_path}").order == 6
