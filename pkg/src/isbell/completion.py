"""Bounded reflexive completions, Cauchy completion, and related diagnostics.

Presheaves are enumerated up to isomorphism in two ways.  On a one-object
category whose morphisms are all invertible, a presheaf is a right action of
a group, hence a disjoint union of coset spaces, and isomorphism classes are
multisets of conjugacy classes of subgroups.  On any other category the
action tables are searched directly (choosing a generating set of morphisms
first so that composites are forced) and the labelled solutions are merged
by an isomorphism test.  The two routes are cross-checked in the tests.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterator, Mapping, Sequence

from .conjugacy import ConjugateResult, as_opposite, conjugate, evaluation_at, is_reflexive
from .fincat import (
    Cone,
    FinCat,
    FinFunctor,
    connected_components,
    adjoin_pair_object,
    cones_on_identity,
    cones_over,
    opposite,
    require_valid,
)
from .setfun import (
    CO,
    CONTRA,
    DEFAULT_CEILING,
    NatTransf,
    ResourceLimitExceeded,
    SetFunctor,
    _signature,
    compose_transformations,
    copower,
    coproduct,
    flip,
    identity_transformation,
    initial,
    inverse,
    is_isomorphic,
    nat_transformations,
    representable,
    terminal,
    validate_transformation,
)


# --------------------------------------------------------------------------
# enumeration of functors up to isomorphism

def group_inverses(c: FinCat) -> dict[str, str] | None:
    """Inverses of all morphisms if ``c`` is a one-object groupoid, else ``None``."""
    if len(c.objects) != 1:
        return None
    e = c.identity(c.objects[0])
    inv = {}
    for g in c.morphisms:
        hs = [h for h in c.morphisms if c.comp(h, g) == e and c.comp(g, h) == e]
        if not hs:
            return None
        inv[g] = hs[0]
    return inv


def subgroups(c: FinCat) -> list[frozenset[str]]:
    e = c.identity(c.objects[0])

    def closure(gens: set[str]) -> frozenset[str]:
        out = {e} | gens
        while True:
            new = {c.comp(g, h) for g in out for h in out} - out
            if not new:
                return frozenset(out)
            out |= new

    found = {closure(set())}
    frontier = list(found)
    while frontier:
        h = frontier.pop()
        for g in c.morphisms:
            if g not in h:
                k = closure(set(h) | {g})
                if k not in found:
                    found.add(k)
                    frontier.append(k)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def coset_space(c: FinCat, h: frozenset[str], variance: str = CONTRA) -> SetFunctor:
    """The transitive action on cosets of ``h``; right cosets for presheaves."""
    obj = c.objects[0]
    if variance == CONTRA:
        # x·g = X(g)(x) and x·(g∘f) = (x·g)·f, so cosets are h∘k and act by k ↦ k∘g
        def coset(k: str) -> str:
            return min(c.comp(x, k) for x in h)

        def act(k: str, g: str) -> str:
            return coset(c.comp(k, g))
    else:
        def coset(k: str) -> str:
            return min(c.comp(k, x) for x in h)

        def act(k: str, g: str) -> str:
            return coset(c.comp(g, k))

    elems = tuple(sorted({coset(k) for k in c.morphisms}))
    actions = {g: {k: act(k, g) for k in elems} for g in c.morphisms}
    return SetFunctor(c, variance, {obj: elems}, actions)


def _conjugacy_classes(c: FinCat, subs: list[frozenset[str]], inv: Mapping[str, str]) -> list[frozenset[str]]:
    reps, seen = [], set()
    for h in subs:
        if h in seen:
            continue
        reps.append(h)
        for g in c.morphisms:
            seen.add(frozenset(c.comp(c.comp(inv[g], x), g) for x in h))
    return reps


def _multisets(weights: Sequence[int], bound: int) -> Iterator[tuple[int, ...]]:
    """Count vectors with ``sum(count * weight) <= bound``."""
    def go(i: int, left: int) -> Iterator[tuple[int, ...]]:
        if i == len(weights):
            yield ()
            return
        for k in range(left // weights[i] + 1):
            for rest in go(i + 1, left - k * weights[i]):
                yield (k, *rest)

    yield from go(0, bound)


def _group_route(c: FinCat, bound: int, variance: str, inv: Mapping[str, str]) -> list[SetFunctor]:
    orbits = [coset_space(c, h, variance) for h in _conjugacy_classes(c, subgroups(c), inv)]
    weights = [x.total_size() for x in orbits]
    out = []
    for counts in _multisets(weights, bound):
        parts = [x for x, k in zip(orbits, counts) for _ in range(k)]
        out.append(coproduct(parts, c, variance))
    return out


def generating_morphisms(c: FinCat) -> list[str]:
    """A greedy set of non-identity morphisms generating ``c`` under composition."""
    gens: list[str] = []
    reach = set(c.identity_set)
    for m in sorted(c.morphisms, key=lambda m: (m in c.identity_set, m)):
        if m in reach:
            continue
        gens.append(m)
        while True:
            new = {c.comp(g, f) for g, f in c.composable_pairs() if g in reach and f in reach} - reach
            new |= {m} - reach
            if not new:
                break
            reach |= new
    return gens


def labelled_functors(
    c: FinCat, sizes: Mapping[str, int], variance: str = CONTRA, ceiling: int | None = None
) -> Iterator[SetFunctor]:
    """Every functor with ``X(a) = {0, ..., sizes[a]-1}``."""
    ceiling = DEFAULT_CEILING if ceiling is None else ceiling
    morphs = list(c.morphisms)

    def src(m: str) -> str:
        d, cd = c.morphisms[m]
        return cd if variance == CONTRA else d

    def tgt(m: str) -> str:
        d, cd = c.morphisms[m]
        return d if variance == CONTRA else cd

    for m in morphs:
        if sizes[src(m)] and not sizes[tgt(m)]:
            return
    base = {}
    n = 0
    for m in morphs:
        base[m] = n
        n += sizes[src(m)]
    val = [-1] * n
    for m in c.identity_set:
        for e in range(sizes[src(m)]):
            val[base[m] + e] = e
    # applying p then q is the action of r
    after: dict[str, list[tuple[str, str]]] = defaultdict(list)
    before: dict[str, list[tuple[str, str]]] = defaultdict(list)
    for p in morphs:
        if p in c.identity_set:
            continue
        for q in morphs:
            if q in c.identity_set or src(q) != tgt(p):
                continue
            r = c.comp(p, q) if variance == CONTRA else c.comp(q, p)
            after[p].append((q, r))
            before[q].append((p, r))
    gens = generating_morphisms(c)
    order_m = gens + [m for m in morphs if m not in gens and m not in c.identity_set]
    order = [base[m] + e for m in order_m for e in range(sizes[src(m)])]
    owner = {}
    for m in morphs:
        for e in range(sizes[src(m)]):
            owner[base[m] + e] = (m, e)
    visited = 0

    def assign(v: int, w: int, trail: list[int]) -> bool:
        nonlocal visited
        visited += 1
        if visited > ceiling:
            raise ResourceLimitExceeded(f"functor search exceeded {ceiling} partial assignments", visited)
        stack = [(v, w)]
        while stack:
            u, x = stack.pop()
            if val[u] >= 0:
                if val[u] != x:
                    return False
                continue
            val[u] = x
            trail.append(u)
            m, e = owner[u]
            for q, r in after[m]:
                y = val[base[q] + x]
                if y >= 0:
                    stack.append((base[r] + e, y))
            for p, r in before[m]:
                for e0 in range(sizes[src(p)]):
                    if val[base[p] + e0] == e:
                        stack.append((base[r] + e0, x))
        return True

    def go(k: int) -> Iterator[None]:
        while k < len(order) and val[order[k]] >= 0:
            k += 1
        if k == len(order):
            yield None
            return
        v = order[k]
        m, _ = owner[v]
        for w in range(sizes[tgt(m)]):
            trail: list[int] = []
            if assign(v, w, trail):
                yield from go(k + 1)
            for u in trail:
                val[u] = -1

    sets = {a: tuple(range(sizes[a])) for a in c.objects}
    for _ in go(0):
        actions = {m: {e: val[base[m] + e] for e in sets[src(m)]} for m in morphs}
        yield SetFunctor(c, variance, sets, actions)


def _iso_key(x: SetFunctor) -> tuple:
    return _signature(x)


def _generic_route(c: FinCat, bound: int, variance: str, ceiling: int | None, stats: dict) -> list[SetFunctor]:
    reps: list[SetFunctor] = []
    for sizes in itertools.product(range(bound + 1), repeat=len(c.objects)):
        buckets: dict[tuple, list[SetFunctor]] = defaultdict(list)
        for x in labelled_functors(c, dict(zip(c.objects, sizes)), variance, ceiling):
            stats["labelled"] = stats.get("labelled", 0) + 1
            bucket = buckets[_iso_key(x)]
            if not any(is_isomorphic(y, x, ceiling) is not None for y in bucket):
                bucket.append(x)
        for key in sorted(buckets, key=repr):
            reps.extend(buckets[key])
    return reps


def enumerate_functors(
    c: FinCat,
    bound: int,
    variance: str = CONTRA,
    ceiling: int | None = None,
    route: str = "auto",
    stats: dict | None = None,
) -> list[SetFunctor]:
    """One representative per isomorphism class of functors with ``|X(a)| <= bound``."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    stats = {} if stats is None else stats
    inv = group_inverses(c) if route in ("auto", "group") else None
    if route == "group" and inv is None:
        raise ValueError("the group route needs a one-object groupoid")
    if inv is not None:
        stats["route"] = "group"
        out = _group_route(c, bound, variance, inv)
    else:
        stats["route"] = "generic"
        out = _generic_route(c, bound, variance, ceiling, stats)
    stats["classes"] = len(out)
    return sorted(out, key=lambda x: (x.total_size(), x.sizes))


# --------------------------------------------------------------------------
# reflexive completion

@dataclass(frozen=True)
class ReflexiveClass:
    name: str
    functor: SetFunctor
    certificate: object = field(repr=False, default=None)


@dataclass(frozen=True)
class ReflexiveCompletionReport:
    base: FinCat
    bound: int
    classes: tuple[ReflexiveClass, ...]
    complete_within_bound: bool
    representables_within_bound: bool
    stats: Mapping[str, object]

    @property
    def names(self) -> list[str]:
        return [k.name for k in self.classes]

    def __len__(self) -> int:
        return len(self.classes)

    def find(self, x: SetFunctor) -> ReflexiveClass | None:
        for k in self.classes:
            if is_isomorphic(k.functor, x) is not None:
                return k
        return None

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "complete_within_bound": self.complete_within_bound,
            "representables_within_bound": self.representables_within_bound,
            "stats": dict(self.stats),
            "classes": [
                {
                    "name": k.name,
                    "sizes": dict(zip(self.base.objects, k.functor.sizes)),
                    "functor": k.functor.to_json(base_ref="base"),
                    "eta": k.certificate.eta.to_json() if k.certificate is not None else None,
                }
                for k in self.classes
            ],
        }


def enumerate_reflexive(
    c: FinCat, bound: int, ceiling: int | None = None, route: str = "auto"
) -> ReflexiveCompletionReport:
    stats: dict = {}
    candidates = enumerate_functors(c, bound, CONTRA, ceiling, route, stats)
    reps = {a: representable(c, a) for a in c.objects}
    init, term = initial(c), terminal(c)
    named: list[ReflexiveClass] = []
    unnamed: list[tuple[SetFunctor, object]] = []
    for x in candidates:
        cert = is_reflexive(x, ceiling)
        if not cert.reflexive:
            continue
        hit = next((a for a, y in reps.items() if is_isomorphic(y, x, ceiling) is not None), None)
        if hit is not None:
            named.append(ReflexiveClass(f"y({hit})", reps[hit], is_reflexive(reps[hit], ceiling)))
        elif x.total_size() == 0:
            named.append(ReflexiveClass("initial", init, cert))
        elif is_isomorphic(term, x, ceiling) is not None:
            named.append(ReflexiveClass("terminal", term, is_reflexive(term, ceiling)))
        else:
            unnamed.append((x, cert))
    rank = {"initial": -1, "terminal": len(c.objects), **{f"y({a})": i for i, a in enumerate(c.objects)}}
    named.sort(key=lambda k: rank[k.name])
    classes = named + [ReflexiveClass(f"R{k + 1}", x, cert) for k, (x, cert) in enumerate(unnamed)]
    stats["reflexive"] = len(classes)
    within = all(len(c.homset(b, a)) <= bound for a in c.objects for b in c.objects)
    return ReflexiveCompletionReport(c, bound, tuple(classes), True, within, stats)


@dataclass(frozen=True)
class CompletionCategory:
    category: FinCat
    embedding: FinFunctor
    homs: Mapping[tuple[str, str], tuple[NatTransf, ...]]


def reflexive_completion_category(report: ReflexiveCompletionReport, ceiling: int | None = None) -> CompletionCategory:
    """Full subcategory of presheaves on the class representatives, with the Yoneda embedding."""
    c = report.base
    names = report.names
    funcs = {k.name: k.functor for k in report.classes}
    homs = {(s, t): tuple(nat_transformations(funcs[s], funcs[t], ceiling)) for s in names for t in names}
    mid = {(s, t): {a.comps: f"{s}>{t}#{i}" for i, a in enumerate(hs)} for (s, t), hs in homs.items()}
    morphisms = {mid[st][a.comps]: st for st, hs in homs.items() for a in hs}
    identities = {s: mid[(s, s)][identity_transformation(funcs[s]).comps] for s in names}
    compose = {}
    for (s, t), fs in homs.items():
        for u in names:
            for f in fs:
                for g in homs[(t, u)]:
                    compose[(mid[(t, u)][g.comps], mid[(s, t)][f.comps])] = mid[(s, u)][compose_transformations(g, f).comps]
    cat = require_valid(FinCat.build(names, morphisms, identities, compose))
    # Yoneda: f : a -> b acts on A(-, a) by postcomposition
    where = {}
    for a in c.objects:
        k = report.find(representable(c, a))
        if k is None:
            raise ValueError(f"representable at {a} is not among the classes")
        where[a] = k.name
    morphism_map = {}
    for f, (a, b) in c.morphisms.items():
        ya, yb = funcs[where[a]], funcs[where[b]]
        alpha = _representable_map(c, f, ya, yb, ceiling)
        morphism_map[f] = mid[(where[a], where[b])][alpha.comps]
    emb = FinFunctor(c, cat, where, morphism_map)
    return CompletionCategory(cat, emb, homs)


def _representable_map(c: FinCat, f: str, ya: SetFunctor, yb: SetFunctor, ceiling: int | None) -> NatTransf:
    a, b = c.morphisms[f]
    ra, rb = representable(c, a), representable(c, b)
    ia, ib = is_isomorphic(ra, ya, ceiling), is_isomorphic(rb, yb, ceiling)
    post = NatTransf(
        ra,
        rb,
        tuple(tuple(rb.index[o][c.comp(f, g)] for g in ra.sets[o]) for o in c.objects),
    )
    return compose_transformations(ib, compose_transformations(post, inverse(ia)))


# --------------------------------------------------------------------------
# Cauchy completion

@dataclass(frozen=True)
class CauchyCompletionResult:
    base: FinCat
    category: FinCat
    objects: tuple[tuple[str, str], ...]
    names: Mapping[tuple[str, str], str]
    inclusion: FinFunctor


def idempotents(c: FinCat) -> list[tuple[str, str]]:
    return [(a, e) for a in c.objects for e in c.homset(a, a) if c.comp(e, e) == e]


def cauchy_completion(c: FinCat) -> CauchyCompletionResult:
    objs = idempotents(c)
    names = {(a, e): f"({a},{e})" for a, e in objs}
    morphisms, ids = {}, {}
    hom: dict[tuple, list[tuple[str, str]]] = {}
    for (a, e) in objs:
        for (b, e2) in objs:
            s, t = names[(a, e)], names[(b, e2)]
            fs = [f for f in c.homset(a, b) if c.comp(c.comp(e2, f), e) == f]
            hom[(s, t)] = [(f, f"{f}:{s}>{t}") for f in fs]
            for f, mid in hom[(s, t)]:
                morphisms[mid] = (s, t)
        ids[names[(a, e)]] = f"{e}:{names[(a, e)]}>{names[(a, e)]}"
    compose = {}
    for (s, t), fs in hom.items():
        for u in names.values():
            for f, fid in fs:
                for g, gid in hom[(t, u)]:
                    compose[(gid, fid)] = f"{c.comp(g, f)}:{s}>{u}"
    cat = require_valid(FinCat.build(list(names.values()), morphisms, ids, compose))
    inc = FinFunctor(
        c,
        cat,
        {a: names[(a, c.identity(a))] for a in c.objects},
        {f: f"{f}:{names[(a, c.identity(a))]}>{names[(b, c.identity(b))]}" for f, (a, b) in c.morphisms.items()},
    )
    return CauchyCompletionResult(c, cat, tuple(objs), names, inc)


def split_presheaf(c: FinCat, a: str, e: str) -> SetFunctor:
    """The retract of ``A(-, a)`` cut out by the idempotent ``e``: maps ``f`` with ``e∘f = f``."""
    rep = representable(c, a)
    sets = {b: tuple(f for f in rep.sets[b] if c.comp(e, f) == f) for b in c.objects}
    actions = {m: {f: rep.actions[m][f] for f in sets[c.cod(m)]} for m in c.morphisms}
    return SetFunctor(c, CONTRA, sets, actions)


@dataclass(frozen=True)
class CauchyReflexivityReport:
    entries: tuple[tuple[str, str, tuple[int, ...], bool], ...]

    @property
    def all_reflexive(self) -> bool:
        return all(r for *_, r in self.entries)


def cauchy_objects_are_reflexive(c: FinCat, ceiling: int | None = None) -> CauchyReflexivityReport:
    out = []
    for a, e in idempotents(c):
        x = split_presheaf(c, a, e)
        out.append((a, e, x.sizes, is_reflexive(x, ceiling).reflexive))
    return CauchyReflexivityReport(tuple(out))


# --------------------------------------------------------------------------
# the κ map

@dataclass(frozen=True)
class KappaReport:
    classes: int
    nat_count: int
    images: tuple[int, ...]  # class -> index into Nat(x, z)
    well_defined: bool
    injective: bool
    surjective: bool

    @property
    def bijective(self) -> bool:
        return self.well_defined and self.injective and self.surjective


def coend_classes(y: SetFunctor, z: SetFunctor) -> list[list[tuple[str, Hashable, Hashable]]]:
    """Classes of ``Σ_a Y(a) × Z(a)`` for covariant ``y`` and contravariant ``z``."""
    from networkx.utils import UnionFind

    c = y.base
    elems = [(a, u, v) for a in c.objects for u in y.sets[a] for v in z.sets[a]]
    uf = UnionFind(elems)
    for m, (d, cd) in c.morphisms.items():
        # (Y(m)u, v) ~ (u, Z(m)v) for u ∈ Y(d), v ∈ Z(cd)
        for u in y.sets[d]:
            for v in z.sets[cd]:
                uf.union((cd, y.actions[m][u], v), (d, u, z.actions[m][v]))
    return sorted((sorted(s, key=repr) for s in uf.to_sets()), key=repr)


def kappa(x: SetFunctor, z: SetFunctor, ceiling: int | None = None, rx: ConjugateResult | None = None) -> KappaReport:
    """``(ξ, v) ↦ (e ↦ Z(ξ_b(e))(v))`` from the coend of ``x^∨`` and ``z`` to ``Nat(x, z)``."""
    if x.variance != CONTRA or z.variance != CONTRA:
        raise ValueError("kappa takes two presheaves")
    c = x.base
    rx = conjugate(x, ceiling) if rx is None else rx
    nats = nat_transformations(x, z, ceiling)
    index = {t.comps: i for i, t in enumerate(nats)}
    classes = coend_classes(rx.output, z)
    images, well = [], True
    for cls in classes:
        seen = set()
        for a, k, v in cls:
            comps = tuple(
                tuple(z.index[b][z.actions[rx.value(a, k, b, e)][v]] for e in x.sets[b]) for b in c.objects
            )
            seen.add(index.get(comps, -1))
        if len(seen) != 1 or -1 in seen:
            well = False
        images.append(min(seen))
    return KappaReport(
        len(classes),
        len(nats),
        tuple(images),
        well,
        len(set(images)) == len(images),
        set(images) == set(range(len(nats))),
    )


# --------------------------------------------------------------------------
# limits and cones

def is_limit_cone(c: FinCat, cone: Cone, arrows: Sequence[str]) -> bool:
    """Every cone over the same diagram factors uniquely through ``cone``."""
    objs = list(cone.legs)
    if not cone.is_cone(c, arrows):
        return False
    for k in c.objects:
        for other in cones_over(c, objs, arrows, k):
            through = [
                m for m in c.homset(k, cone.vertex)
                if all(c.comp(cone.legs[i], m) == other.legs[i] for i in objs)
            ]
            if len(through) != 1:
                return False
    return True


def functor_preserves_limit(y: SetFunctor, cone: Cone, arrows: Sequence[str]) -> bool:
    """For covariant ``y``: is ``y(vertex)`` the set of compatible families?"""
    objs = list(cone.legs)
    fams = [
        fam for fam in itertools.product(*(y.sets[i] for i in objs))
        if all(
            y.actions[u][fam[objs.index(y.base.dom(u))]] == fam[objs.index(y.base.cod(u))] for u in arrows
        )
    ]
    images = [tuple(y.actions[cone.legs[i]][e] for i in objs) for e in y.sets[cone.vertex]]
    return len(set(images)) == len(images) and set(images) == set(fams)


def limit_preservation_check(x: SetFunctor, cone: Cone, arrows: Sequence[str]) -> bool:
    """Does presheaf ``x`` send a limit cone of the opposite category to a limit of sets?"""
    op = opposite(x.base)
    if not is_limit_cone(op, cone, arrows):
        raise ValueError("cone is not a limit cone")
    return functor_preserves_limit(as_opposite(x), cone, arrows)


def cone_functor(c: FinCat) -> SetFunctor:
    """``a ↦ Cone(id, a)``: families ``p_b : b -> a`` with ``p_{b'}∘u = p_b``, acted on by postcomposition."""
    op = opposite(c)
    sets = {
        a: tuple(tuple(k.legs[b] for b in c.objects) for k in cones_over(op, c.objects, list(op.morphisms), a))
        for a in c.objects
    }
    actions = {m: {p: tuple(c.comp(m, leg) for leg in p) for p in sets[c.dom(m)]} for m in c.morphisms}
    return SetFunctor(c, CO, sets, actions)


@dataclass(frozen=True)
class LimitCounterexample:
    category: FinCat
    limit: SetFunctor
    s_size: int
    components: int
    iso_to_copower: NatTransf | None
    witness: NatTransf
    witness_natural: bool
    witness_outside_image: bool

    @property
    def reflexive(self) -> bool:
        """False once the witness is a natural map that the unit misses."""
        return not (self.witness_natural and self.witness_outside_image)


def nonreflexive_limit(i: FinCat, z: str = "z", ceiling: int | None = None) -> LimitCounterexample:
    """A limit of representables that is not reflexive, on ``i`` with a pair of cones adjoined.

    The double conjugate is far too large to list, so non-reflexivity is
    certified by one explicit element of it outside the image of the unit.
    """
    if i.is_empty() or cones_on_identity(i):
        raise ValueError("needs a nonempty category with no cone on its identity")
    j = adjoin_pair_object(i, z)
    z = [o for o in j.objects if o not in i.objects][0]
    old = list(i.objects)
    arrows = list(i.morphisms)
    sets = {a: tuple(tuple(k.legs[o] for o in old) for k in cones_over(j, old, arrows, a)) for a in j.objects}
    actions = {m: {p: tuple(j.comp(leg, m) for leg in p) for p in sets[j.cod(m)]} for m in j.morphisms}
    lim = SetFunctor(j, CONTRA, sets, actions)
    s_size = len(sets[z])
    iso = is_isomorphic(lim, copower(s_size, representable(j, z)), ceiling)
    r1 = conjugate(lim, ceiling)
    rep = representable(j, z, CO)
    # ξ ∈ L^∨(o) is determined by the maps ξ_z(s) : z -> o; send it to the least of them
    comps = []
    for o in j.objects:
        row = []
        for k in r1.output.sets[o]:
            if o == z:
                row.append(rep.index[o][j.identity(z)])
            else:
                eps = min(int(r1.value(o, k, z, s)[1]) for s in sets[z])
                row.append(rep.index[o][f"p{eps}_{o}"])
        comps.append(tuple(row))
    zeta = NatTransf(r1.output, rep, tuple(comps))
    natural = validate_transformation(zeta).ok
    outside = all(evaluation_at(r1, z, s).comps != zeta.comps for s in sets[z])
    return LimitCounterexample(j, lim, s_size, len(connected_components(i)), iso, zeta, natural, outside)


# --------------------------------------------------------------------------
# consistency checks between constructions

def colimit_of_corepresentables(y: SetFunctor) -> SetFunctor:
    """``∫^a y(a) · A(a, -)`` computed as a quotient; isomorphic to ``y`` by co-Yoneda."""
    from networkx.utils import UnionFind

    if y.variance != CO:
        raise ValueError("expected a copresheaf")
    c = y.base
    sets, actions = {}, {}
    classes_at = {}
    for b in c.objects:
        elems = [(a, u, g) for a in c.objects for u in y.sets[a] for g in c.homset(a, b)]
        uf = UnionFind(elems)
        for m, (d, cd) in c.morphisms.items():
            # (a', y(m)u, g) ~ (a, u, g∘m)
            for u in y.sets[d]:
                for g in c.homset(cd, b):
                    uf.union((cd, y.actions[m][u], g), (d, u, c.comp(g, m)))
        blocks = sorted((tuple(sorted(s, key=repr)) for s in uf.to_sets()), key=repr)
        sets[b] = tuple(range(len(blocks)))
        classes_at[b] = {e: k for k, blk in enumerate(blocks) for e in blk}
    for m, (d, cd) in c.morphisms.items():
        act = {}
        for (a, u, g), k in classes_at[d].items():
            act[k] = classes_at[cd][(a, u, c.comp(m, g))]
        actions[m] = act
    return SetFunctor(c, CO, sets, actions)


def limit_of_representables_check(x: SetFunctor, ceiling: int | None = None) -> bool:
    """Rebuild reflexive ``x`` as the conjugate of a colimit of corepresentables."""
    xv = conjugate(x, ceiling).output
    col = colimit_of_corepresentables(xv)
    if is_isomorphic(col, xv, ceiling) is None:
        return False
    return is_isomorphic(conjugate(col, ceiling).output, x, ceiling) is not None


@dataclass(frozen=True)
class DualityReport:
    matched: bool
    pairs: tuple[tuple[str, str], ...]
    out_of_bound: tuple[str, ...]


def duality_check(c: FinCat, bound: int, ceiling: int | None = None) -> DualityReport:
    """Conjugation carries reflexive presheaves on ``c`` to those on the opposite category."""
    here = enumerate_reflexive(c, bound, ceiling)
    there = enumerate_reflexive(opposite(c), bound, ceiling)
    pairs, missing = [], []
    used = set()
    for k in here.classes:
        y = as_opposite(conjugate(k.functor, ceiling).output)
        if max(y.sizes, default=0) > bound:
            missing.append(k.name)
            continue
        hit = there.find(y)
        if hit is None or hit.name in used:
            return DualityReport(False, tuple(pairs), tuple(missing))
        used.add(hit.name)
        pairs.append((k.name, hit.name))
    matched = not missing and len(used) == len(there.classes)
    return DualityReport(matched, tuple(pairs), tuple(missing))
