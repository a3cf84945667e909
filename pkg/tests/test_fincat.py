import itertools

import pytest
from hypothesis import given, strategies as st

from isbell.corpus import idempotent_monoid, partial_bijection_monoid
from isbell.fincat import (
    CategoryError,
    FinCat,
    adjoin_initial_terminal,
    adjoin_pair_object,
    compose_functors,
    cones_on_identity,
    connected_components,
    cyclic_group,
    discrete,
    find_isomorphism,
    from_monoid,
    from_poset,
    from_relation,
    full_subcategory,
    identity_functor,
    inclusion,
    is_absolute_limit_shape,
    opposite,
    partial_bijections,
    product_category,
    validate_category,
    validate_functor_map,
)
from isbell.order import all_posets, antichain, chain

import oracles


def arrow() -> FinCat:
    return from_relation("ab", [("a", "a"), ("b", "b"), ("a", "b")])


def test_group_table_is_valid():
    c = from_monoid([[0, 1], [1, 0]], 0)
    assert validate_category(c).ok
    assert c.objects == ("*",) and len(c.morphisms) == 2


def test_non_associative_table_is_reported():
    # unit 0; 1·1 = 2, 1·2 = 1, 2·1 = 2, 2·2 = 2 fails associativity at (1, 1, 2)
    table = [[0, 1, 2], [1, 2, 1], [2, 2, 2]]
    c = FinCat.build(
        ["*"],
        {m: ("*", "*") for m in "012"},
        {"*": "0"},
        {(str(i), str(j)): str(table[i][j]) for i in range(3) for j in range(3)},
    )
    report = validate_category(c)
    assert "associativity" in report.laws()
    v = next(v for v in report.violations if v.law == "associativity")
    a, b, cc = (int(w) for w in v.witness)
    assert table[a][table[b][cc]] != table[table[a][b]][cc]
    with pytest.raises(CategoryError):
        from_monoid(table, 0)


def test_missing_composite_is_a_totality_violation():
    c = cyclic_group(2)
    compose = dict(c.compose)
    del compose[("0", "1")]
    broken = FinCat.build(c.objects, c.morphisms, c.identities, compose)
    report = validate_category(broken)
    assert report.laws() == {"totality"}
    assert report.violations[0].witness == ("0", "1")
    assert report.to_json()["ok"] is False


def test_idempotent_monoid():
    m = idempotent_monoid()
    assert len(m.morphisms) == 2 and m.comp("e", "e") == "e"


def test_partial_bijection_table_matches_direct_composition():
    maps = oracles.partial_bijections_of(2)
    assert len(maps) == 7
    table = [[maps.index(oracles.compose_partial(g, f)) for f in maps] for g in maps]
    c = from_monoid(table, maps.index((0, 1)))
    assert validate_category(c).ok
    assert find_isomorphism(c, partial_bijection_monoid()) is not None


@pytest.mark.parametrize("m,n", list(itertools.product([1, 2, 3], repeat=2)))
def test_partial_bijection_hom_sizes(m, n):
    c = partial_bijections([1, 2, 3])
    assert len(c.homset(f"n{m}", f"n{n}")) == oracles.hom_count_partial(m, n)


def test_opposite():
    assert opposite(discrete(2)) == discrete(2)
    a = arrow()
    ao = opposite(a)
    assert ao.morphisms["a<=b"] == ("b", "a")
    assert opposite(ao) == a
    five = from_poset(all_posets(5)[0])
    assert opposite(opposite(five)) == five


def test_five_point_poset_is_self_dual():
    from isbell.corpus import five_point_poset

    c = from_poset(five_point_poset())
    assert find_isomorphism(c, opposite(c)) is not None


def test_from_poset():
    assert from_poset(antichain(2)).key[0] == ("0", "1")
    assert find_isomorphism(from_poset(antichain(2)), discrete(2)) is not None
    assert len(from_poset(chain(3)).morphisms) == 6
    assert from_poset(antichain(0)).is_empty()


def test_discrete():
    assert discrete(0).is_empty()
    assert len(discrete(1).objects) == 1
    assert len(discrete(3).morphisms) == 3


def test_adjoin_pair_object():
    j = adjoin_pair_object(discrete(1))
    assert set(j.morphisms) == {"id_z", "id_o0", "p0_o0", "p1_o0"}
    j2 = adjoin_pair_object(discrete(2))
    assert len(j2.objects) == 3 and len(j2.morphisms) == 3 + 4
    assert validate_category(j2).ok
    assert set(adjoin_pair_object(discrete(0)).morphisms) == {"id_z"}
    jc = adjoin_pair_object(cyclic_group(2))
    assert validate_category(jc).ok
    assert jc.homset("z", "z") == ("id_z",)


def test_cones_on_identity():
    assert is_absolute_limit_shape(discrete(1))
    assert not is_absolute_limit_shape(discrete(2))
    assert not is_absolute_limit_shape(discrete(0))
    assert [k.vertex for k in cones_on_identity(chain_cat(3))] == ["0"]
    # the idempotent e gives a cone on the identity
    assert is_absolute_limit_shape(idempotent_monoid())
    assert not is_absolute_limit_shape(cyclic_group(2))


def chain_cat(n):
    return from_poset(chain(n))


def test_adjoin_initial_terminal_and_components():
    c = adjoin_initial_terminal(discrete(2))
    assert validate_category(c).ok
    assert len(c.objects) == 4
    assert len(connected_components(discrete(3))) == 3
    assert len(connected_components(c)) == 1


def test_functors():
    c = partial_bijections([1, 2])
    sub = full_subcategory(c, ["n2"])
    f = inclusion(sub, c)
    assert validate_functor_map(f).ok
    assert compose_functors(identity_functor(c), f) == f
    bad = type(f)(sub, c, f.object_map, {m: "2>2:0-,1-" for m in sub.morphisms})
    assert "preserves-identity" in validate_functor_map(bad).laws()


def test_product_category():
    k = product_category(cyclic_group(2), cyclic_group(2))
    assert validate_category(k).ok and len(k.morphisms) == 4
    assert find_isomorphism(k, cyclic_group(4)) is None


@given(st.integers(1, 6))
def test_cyclic_groups_are_valid(n):
    c = cyclic_group(n)
    assert validate_category(c).ok
    assert find_isomorphism(opposite(c), c) is not None


@given(st.sampled_from(all_posets(4)))
def test_poset_categories_are_valid_and_thin(p):
    c = from_poset(p)
    assert validate_category(c).ok
    assert all(len(c.homset(a, b)) <= 1 for a in c.objects for b in c.objects)


def test_json_round_trip():
    for c in (cyclic_group(3), adjoin_pair_object(discrete(2)), partial_bijection_monoid()):
        assert FinCat.from_json(c.to_json()) == c
