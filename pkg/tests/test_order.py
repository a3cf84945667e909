import itertools

import pytest
from hypothesis import given, strategies as st

from isbell.corpus import five_point_poset
from isbell.order import (
    FinPoset,
    PosetError,
    all_posets,
    antichain,
    chain,
    closure,
    crosscheck_with_categorical,
    density_certificate,
    dm_completion,
    is_lattice,
    lower_bounds,
    upper_bounds,
)

SMALL = [p for n in range(5) for p in all_posets(n)]


def brute_cuts(p):
    """Subsets equal to the lower bounds of their upper bounds, by definition."""
    els = p.elements
    out = set()
    for r in range(len(els) + 1):
        for s in itertools.combinations(els, r):
            ub = {b for b in els if all(p.le(a, b) for a in s)}
            lb = {a for a in els if all(p.le(a, b) for b in ub)}
            if lb == set(s):
                out.add(frozenset(s))
    return out


def test_poset_counts():
    assert [len(all_posets(n)) for n in range(5)] == [1, 1, 2, 5, 16]


def test_cycle_is_rejected():
    with pytest.raises(PosetError):
        FinPoset.build("ab", [("a", "b"), ("b", "a")])


def test_transitive_closure():
    p = FinPoset.build("abc", [("a", "b"), ("b", "c")])
    assert p.le("a", "c") and not p.le("c", "a")


def test_small_completions():
    assert len(dm_completion(antichain(2)).cuts) == 4
    dm3 = dm_completion(chain(3))
    assert len(dm3.cuts) == 3 and dm3.is_order_embedding
    assert set(dm3.embedding.values()) == set(dm3.lattice.elements)
    assert len(dm_completion(antichain(0)).cuts) == 1


def test_five_point_poset():
    p = five_point_poset()
    dm = dm_completion(p)
    assert set(dm.cuts) == brute_cuts(p)
    assert len(dm.cuts) == 7
    assert dm.is_lattice and dm.is_order_embedding
    assert density_certificate(p, dm).ok


@given(st.sampled_from(SMALL))
def test_cuts_match_brute_force(p):
    dm = dm_completion(p)
    assert set(dm.cuts) == brute_cuts(p)
    assert len(set(dm.cuts)) == len(dm.cuts)
    assert dm.is_lattice and dm.is_order_embedding
    assert density_certificate(p, dm).ok


@given(st.sampled_from(SMALL), st.data())
def test_galois_connection(p, data):
    s = data.draw(st.frozensets(st.sampled_from(p.elements))) if p.elements else frozenset()
    t = data.draw(st.frozensets(st.sampled_from(p.elements))) if p.elements else frozenset()
    assert (s <= lower_bounds(p, t)) == (t <= upper_bounds(p, s))
    cl = closure(p, s)
    assert s <= cl
    assert closure(p, cl) == cl
    if s <= t:
        assert closure(p, s) <= closure(p, t)


@given(st.sampled_from(SMALL))
def test_lattices_complete_to_themselves(p):
    dm = dm_completion(p)
    if is_lattice(p):
        # every cut of a finite lattice is principal
        assert set(dm.cuts) == {p.members(d) for d in p.down}


@given(st.sampled_from(SMALL))
def test_crosscheck_with_categorical(p):
    assert crosscheck_with_categorical(p).ok


def test_json_round_trip():
    p = five_point_poset()
    assert FinPoset.from_json(p.to_json()) == p
