"""The built-in example corpus: packaged data files and the checks run on them.

Every data file can be regenerated from the constructors in
:func:`builders`; the test suite checks that the shipped files agree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable

from .fincat import (
    FinCat,
    cyclic_group,
    discrete,
    from_monoid,
    full_subcategory,
    partial_bijections,
    product_category,
)
from .metric import CostVector, GenMetric, two_point, yoneda_cost
from .order import FinPoset, antichain, chain
from .setfun import SetFunctor, copower, representable, terminal

PREFIX = "corpus:"


def idempotent_monoid() -> FinCat:
    """``{1, e}`` with ``e·e = e``."""
    return from_monoid([[0, 1], [1, 1]], 0, names=["1", "e"])


def partial_bijection_monoid() -> FinCat:
    """All seven partial bijections of a two-element set under composition."""
    return full_subcategory(partial_bijections([2]), ["n2"])


def five_point_poset() -> FinPoset:
    """Two minimal points below a middle point below two maximal points."""
    return FinPoset.build("12345", [("1", "3"), ("2", "3"), ("3", "4"), ("3", "5")])


def builders() -> dict[str, Callable[[], object]]:
    c2, c3 = cyclic_group(2), cyclic_group(3)
    d1 = two_point(1)
    return {
        "cyclic2": lambda: c2,
        "cyclic3": lambda: c3,
        "klein4": lambda: product_category(c2, c2),
        "idempotent_monoid": idempotent_monoid,
        "partial_bijection_monoid": partial_bijection_monoid,
        "discrete0": lambda: discrete(0),
        "discrete1": lambda: discrete(1),
        "discrete2": lambda: discrete(2),
        "discrete3": lambda: discrete(3),
        "cyclic2_regular": lambda: representable(c2, "*"),
        "cyclic2_regular_twice": lambda: copower(2, representable(c2, "*")),
        "cyclic2_point": lambda: terminal(c2),
        "cyclic3_free2": lambda: copower(2, representable(c3, "*")),
        "poset_empty": lambda: antichain(0),
        "poset_antichain2": lambda: antichain(2),
        "poset_chain2": lambda: chain(2),
        "poset_chain3": lambda: chain(3),
        "poset_five_point": five_point_poset,
        "two_point_1": lambda: d1,
        "two_point_2": lambda: two_point(2),
        "two_point_1_inner": lambda: CostVector.build(d1, [Fraction(3, 10), Fraction(4, 5)]),
        "two_point_1_origin": lambda: CostVector.build(d1, [0, 0]),
        "two_point_1_yoneda0": lambda: yoneda_cost(d1, "0"),
        "two_point_1_yonedaD": lambda: yoneda_cost(d1, "D"),
    }


# files that refer to another corpus entry instead of inlining it
_REFS = {
    "cyclic2_regular": "cyclic2",
    "cyclic2_regular_twice": "cyclic2",
    "cyclic2_point": "cyclic2",
    "cyclic3_free2": "cyclic3",
}


def serialize(name: str, obj: object) -> dict:
    if isinstance(obj, SetFunctor):
        ref = _REFS.get(name)
        return obj.to_json(base_ref=PREFIX + ref if ref else None)
    return obj.to_json()


def data_dir() -> Path:
    return Path(str(resources.files("isbell") / "data"))


def path_of(name: str) -> Path:
    return data_dir() / f"{name}.json"


def names() -> list[str]:
    return sorted(p.stem for p in data_dir().glob("*.json"))


def write_all(target: Path | None = None) -> None:
    """Regenerate the data files from the constructors."""
    target = data_dir() if target is None else target
    for name, make in builders().items():
        text = json.dumps(serialize(name, make()), indent=1, sort_keys=True, ensure_ascii=False)
        (target / f"{name}.json").write_text(text + "\n", encoding="utf-8")


# --------------------------------------------------------------------------
# checks for the corpus matrix


@dataclass(frozen=True)
class Check:
    key: str
    description: str
    run: Callable[[], bool]


def checks() -> list[Check]:
    from . import completion, conjugacy, envelope, metric, order
    from .io import load

    def reflexive_names(cat: str, bound: int) -> list[str]:
        return completion.enumerate_reflexive(load(PREFIX + cat), bound).names

    def orbit_counts() -> list[int]:
        steps = conjugacy.iterate_conjugates(load(PREFIX + "cyclic3_free2"), 3)
        return [s.orbits for s in steps] if all(s.isomorphic_to is None for s in steps) else []

    def grid() -> bool:
        m = load(PREFIX + "two_point_1")
        q = [Fraction(k, 4) for k in range(9)]
        for a in q:
            for b in q:
                f = CostVector.build(m, [a, b])
                if not metric.validate_cost(f).ok:
                    if a <= 1 and b <= 1:
                        return False
                    continue
                if metric.is_isbell_point(f) != (a <= 1 and b <= 1):
                    return False
                if metric.is_tight_span_point(f) != (a + b == 1):
                    return False
        return True

    def nerves() -> bool:
        from .fincat import inclusion
        from .setfun import nerve_presheaf

        big = partial_bijections([1, 2, 3])
        f = inclusion(load(PREFIX + "partial_bijection_monoid"), big)
        xs = [nerve_presheaf(f, f"n{k}") for k in (1, 2, 3)]
        return [x.total_size() for x in xs] == [3, 7, 13] and all(conjugacy.is_reflexive(x).reflexive for x in xs)

    def envelope_regular_twice() -> bool:
        e = envelope.embed_presheaf(load(PREFIX + "cyclic2_regular_twice"))
        return envelope.invariant_part_check(e).in_invariant_part

    def kappa_regular() -> bool:
        c2 = load(PREFIX + "cyclic2")
        x = load(PREFIX + "cyclic2_regular")
        zs = completion.enumerate_functors(c2, 4)
        return all(completion.kappa(x, z).bijective for z in zs) and not completion.kappa(
            load(PREFIX + "cyclic2_point"), load(PREFIX + "cyclic2_point")
        ).bijective

    def cone_terminal() -> bool:
        from .setfun import is_isomorphic

        for cat in ("cyclic2", "cyclic3", "klein4", "idempotent_monoid", "partial_bijection_monoid", "discrete1", "discrete2"):
            c = load(PREFIX + cat)
            t = terminal(c)
            if is_isomorphic(conjugacy.conjugate(completion.cone_functor(c)).output, t) is None:
                return False
            if not conjugacy.is_reflexive(t).reflexive:
                return False
        return True

    def pair_object() -> bool:
        r = completion.nonreflexive_limit(load(PREFIX + "discrete2"))
        return r.s_size == 4 and r.iso_to_copower is not None and not r.reflexive

    def dm_five() -> bool:
        p = load(PREFIX + "poset_five_point")
        dm = order.dm_completion(p)
        return len(dm.cuts) == 7 and order.density_certificate(p, dm).ok and bool(order.crosscheck_with_categorical(p))

    def cauchy_idem() -> bool:
        cc = completion.cauchy_completion(load(PREFIX + "idempotent_monoid"))
        return len(cc.category.objects) == 2 and len(completion.enumerate_reflexive(cc.category, 4)) == 2

    return [
        Check("groups/order-2", "order-two group: initial, terminal, regular, two regular orbits",
              lambda: reflexive_names("cyclic2", 4) == ["initial", "y(*)", "terminal", "R1"]),
        Check("groups/order-3", "order-three group: three reflexive classes",
              lambda: len(reflexive_names("cyclic3", 6)) == 3),
        Check("groups/klein", "Klein four-group: three reflexive classes",
              lambda: len(reflexive_names("klein4", 6)) == 3),
        Check("groups/iterates", "free two-orbit action of order three: orbit counts 2, 3, 9",
              lambda: orbit_counts() == [2, 3, 9]),
        Check("monoid/idempotent", "idempotent monoid: regular and terminal only",
              lambda: reflexive_names("idempotent_monoid", 4) == ["y(*)", "terminal"]),
        Check("monoid/idempotent-cauchy", "idempotent monoid: Cauchy completion has two objects and two classes",
              cauchy_idem),
        Check("monoid/partial-bijections", "nerve presheaves of sizes 3, 7, 13 are reflexive", nerves),
        Check("discrete/empty", "empty category: one class", lambda: len(reflexive_names("discrete0", 3)) == 1),
        Check("discrete/one", "terminal category: one class", lambda: len(reflexive_names("discrete1", 3)) == 1),
        Check("discrete/two", "two objects: initial, representables, terminal",
              lambda: reflexive_names("discrete2", 3) == ["initial", "y(o0)", "y(o1)", "terminal"]),
        Check("discrete/three", "three objects: initial, representables, terminal",
              lambda: len(reflexive_names("discrete3", 3)) == 5),
        Check("limits/cone", "conjugate of the cone functor is terminal; terminal is reflexive", cone_terminal),
        Check("limits/pair-object", "limit of representables that is not reflexive", pair_object),
        Check("cauchy/kappa", "kappa is bijective for the regular action, not for the point", kappa_regular),
        Check("posets/five-point", "five-point poset: seven cuts, dense, agrees with presheaves", dm_five),
        Check("metric/two-point-grid", "two-point space grid: Isbell points and tight span", grid),
        Check("envelope/regular-twice", "two regular orbits lie in the invariant part", envelope_regular_twice),
    ]
