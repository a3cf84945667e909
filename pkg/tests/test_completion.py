import pytest
from hypothesis import given, strategies as st

from isbell.completion import (
    cauchy_completion,
    cauchy_objects_are_reflexive,
    colimit_of_corepresentables,
    cone_functor,
    duality_check,
    enumerate_functors,
    enumerate_reflexive,
    idempotents,
    is_limit_cone,
    kappa,
    limit_of_representables_check,
    limit_preservation_check,
    nonreflexive_limit,
    reflexive_completion_category,
    split_presheaf,
    subgroups,
)
from isbell.conjugacy import conjugate, is_reflexive
from isbell.corpus import idempotent_monoid, partial_bijection_monoid
from isbell.fincat import (
    Cone,
    adjoin_initial_terminal,
    cyclic_group,
    discrete,
    find_isomorphism,
    from_poset,
    opposite,
    product_category,
    validate_category,
)
from isbell.order import FinPoset
from isbell.setfun import (
    CO,
    SetFunctor,
    copower,
    initial,
    is_isomorphic,
    product,
    representable,
    terminal,
    validate_functor,
    validate_transformation,
)

import oracles

C2, C3 = cyclic_group(2), cyclic_group(3)
K4 = product_category(C2, C2)
M = idempotent_monoid()
GR = representable(C2, "*")


@pytest.mark.parametrize("c,bound,count", [(C2, 3, 6), (C3, 3, 5), (M, 3, 7)])
def test_enumeration_matches_brute_force(c, bound, count):
    found = enumerate_functors(c, bound)
    brute = oracles.monoid_action_classes(c, bound)
    assert len(found) == len(brute) == count
    for x in brute:
        assert sum(oracles.iso_exists(x, y) for y in found) == 1


@pytest.mark.parametrize("c,count", [(C2, 9), (C3, 7), (K4, 21)])
def test_group_and_generic_routes_agree(c, count):
    g = enumerate_functors(c, 4, route="group")
    h = enumerate_functors(c, 4, route="generic")
    assert len(g) == len(h) == count
    for x in g:
        assert sum(is_isomorphic(x, y) is not None for y in h) == 1


def test_covariant_enumeration():
    ys = enumerate_functors(discrete(2), 2, CO)
    assert len(ys) == 9 and all(y.variance == CO for y in ys)


def test_subgroups():
    assert len(subgroups(C2)) == 2
    assert len(subgroups(K4)) == 5


def test_reflexive_classes_of_order_two_group():
    r = enumerate_reflexive(C2, 4)
    assert r.names == ["initial", "y(*)", "terminal", "R1"]
    big = r.find(copower(2, GR))
    assert big is not None and big.name == "R1"
    assert is_isomorphic(copower(2, GR), product([GR, GR])) is not None
    assert r.representables_within_bound


@pytest.mark.parametrize("c", [C3, K4])
def test_larger_groups_have_three_classes(c):
    (obj,) = c.objects
    assert enumerate_reflexive(c, 6).names == ["initial", f"y({obj})", "terminal"]


def test_idempotent_monoid_classes():
    assert enumerate_reflexive(M, 4).names == ["y(*)", "terminal"]


@pytest.mark.parametrize("n,names", [
    (0, ["initial"]),
    (1, ["y(o0)"]),
    (2, ["initial", "y(o0)", "y(o1)", "terminal"]),
    (3, ["initial", "y(o0)", "y(o1)", "y(o2)", "terminal"]),
])
def test_discrete_classes(n, names):
    assert enumerate_reflexive(discrete(n), 3).names == names


def test_completion_category_adjoins_initial_and_terminal():
    for c in (C3, discrete(2)):
        cat = reflexive_completion_category(enumerate_reflexive(c, 6 if c is C3 else 3)).category
        assert validate_category(cat).ok
        assert find_isomorphism(cat, adjoin_initial_terminal(c)) is not None


def test_completion_embedding_is_full_and_faithful():
    r = enumerate_reflexive(C2, 4)
    comp = reflexive_completion_category(r)
    emb = comp.embedding
    from isbell.fincat import validate_functor_map

    assert validate_functor_map(emb).ok
    assert len(set(emb.morphism_map.values())) == len(C2.morphisms)
    assert len(comp.category.homset("y(*)", "y(*)")) == 2


def test_empty_category_completion_is_terminal():
    cat = reflexive_completion_category(enumerate_reflexive(discrete(0), 2)).category
    assert find_isomorphism(cat, discrete(1)) is not None


def test_cauchy_completion_of_idempotent_monoid():
    cc = cauchy_completion(M)
    assert len(cc.category.objects) == 2
    assert validate_category(cc.category).ok
    assert len(enumerate_reflexive(cc.category, 4)) == 2
    assert cauchy_objects_are_reflexive(M).all_reflexive


def test_cauchy_completion_of_a_group_adds_nothing():
    cc = cauchy_completion(C3)
    assert find_isomorphism(cc.category, C3) is not None
    assert idempotents(C3) == [("*", "0")]


def test_split_presheaf_is_a_retract():
    x = split_presheaf(M, "*", "e")
    assert x.sizes == (1,)
    assert is_isomorphic(x, terminal(M)) is not None


def test_cauchy_completion_of_the_seven_element_monoid():
    cc = cauchy_completion(partial_bijection_monoid())
    # idempotents: identity, empty map, and the two rank-one projections
    assert len(cc.category.objects) == 4
    assert cauchy_objects_are_reflexive(partial_bijection_monoid()).all_reflexive


def test_kappa_for_the_regular_action():
    for z in enumerate_functors(C2, 4):
        assert kappa(GR, z).bijective
    bad = kappa(terminal(C2), terminal(C2))
    assert (bad.classes, bad.nat_count) == (0, 1)
    assert not bad.bijective


def test_kappa_for_a_representable_on_a_monoid():
    y = representable(M, "*")
    for z in enumerate_functors(M, 3):
        assert kappa(y, z).bijective


def diamond():
    return FinPoset.build("0abt", [("0", "a"), ("0", "b"), ("a", "t"), ("b", "t")])


def down_presheaf(c, members):
    sets = {o: (("*",) if o in members else ()) for o in c.objects}
    actions = {m: ({"*": "*"} if c.cod(m) in members else {}) for m in c.morphisms}
    return SetFunctor(c, "contra", sets, actions)


def test_limit_preservation_on_the_diamond():
    c = from_poset(diamond())
    join = Cone("t", {"a": "a<=t", "b": "b<=t"})
    assert is_limit_cone(opposite(c), join, [])
    cut = down_presheaf(c, {"0", "a"})
    assert validate_functor(cut).ok and is_reflexive(cut).reflexive
    assert limit_preservation_check(cut, join, [])
    not_cut = down_presheaf(c, {"0", "a", "b"})
    assert not is_reflexive(not_cut).reflexive
    assert not limit_preservation_check(not_cut, join, [])
    trivial = Cone("a", {"a": "a<=a"})
    assert limit_preservation_check(not_cut, trivial, [])
    with pytest.raises(ValueError):
        limit_preservation_check(cut, Cone("t", {"a": "a<=t"}), [])


def test_cone_functor_conjugates_to_terminal():
    for c in (C2, C3, K4, M, partial_bijection_monoid(), discrete(0), discrete(1), discrete(2), from_poset(diamond())):
        k = cone_functor(c)
        assert validate_functor(k).ok
        assert is_isomorphic(conjugate(k).output, terminal(c)) is not None
        assert is_reflexive(terminal(c)).reflexive


@pytest.mark.parametrize("i,s", [(discrete(2), 4), (discrete(3), 8), (C2, 2)])
def test_limit_of_representables_that_is_not_reflexive(i, s):
    r = nonreflexive_limit(i)
    assert r.s_size == s
    assert r.iso_to_copower is not None
    assert validate_transformation(r.witness).ok and r.witness_natural
    assert r.witness_outside_image
    assert not r.reflexive


def test_counterexample_needs_no_cone_on_identity():
    with pytest.raises(ValueError):
        nonreflexive_limit(discrete(1))
    with pytest.raises(ValueError):
        nonreflexive_limit(discrete(0))


@pytest.mark.parametrize("c,bound", [(C2, 4), (M, 3), (discrete(2), 2), (C3, 6), (from_poset(diamond()), 1)])
def test_duality(c, bound):
    assert duality_check(c, bound).matched


@given(st.sampled_from(oracles.small_functors(CO)))
def test_colimit_of_corepresentables(y):
    assert is_isomorphic(colimit_of_corepresentables(y), y) is not None


@pytest.mark.parametrize("c,bound", [(C2, 4), (M, 3), (discrete(2), 2), (C3, 3)])
def test_reflexive_presheaves_are_limits_of_representables(c, bound):
    for k in enumerate_reflexive(c, bound).classes:
        assert limit_of_representables_check(k.functor)


def test_initial_presheaf_on_terminal_category():
    assert not is_reflexive(initial(discrete(1))).reflexive
