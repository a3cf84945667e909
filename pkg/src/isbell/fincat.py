"""Finite categories given by explicit composition tables.

A :class:`FinCat` stores its objects, the domain and codomain of every
morphism, an identity per object and a *total* composition table keyed by
``(g, f)`` meaning ``g ∘ f`` (``f`` first).  Nothing is ever computed from
generators: constructors build the full table and :func:`validate_category`
checks it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence


class CategoryError(ValueError):
    """Raised when a table does not describe a category."""

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    message: str = ""

    def __str__(self) -> str:
        return f"{self.law}: {self.message or self.witness}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def laws(self) -> set[str]:
        return {v.law for v in self.violations}

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [
                {"law": v.law, "witness": [str(w) for w in v.witness], "message": v.message}
                for v in self.violations
            ],
        }

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class FinCat:
    objects: tuple[str, ...]
    morphisms: Mapping[str, tuple[str, str]]
    identities: Mapping[str, str]
    compose: Mapping[tuple[str, str], str]

    @classmethod
    def build(
        cls,
        objects: Iterable[str],
        morphisms: Mapping[str, tuple[str, str]] | Iterable[tuple[str, str, str]],
        identities: Mapping[str, str],
        compose: Mapping[tuple[str, str], str] | Iterable[tuple[str, str, str]],
    ) -> "FinCat":
        """Normalise raw data: sorted objects, sorted morphism ids, no validation."""
        if not isinstance(morphisms, Mapping):
            morphisms = {m: (d, c) for m, d, c in morphisms}
        if not isinstance(compose, Mapping):
            compose = {(g, f): gf for g, f, gf in compose}
        return cls(
            objects=tuple(sorted(set(objects))),
            morphisms={m: tuple(morphisms[m]) for m in sorted(morphisms)},
            identities={a: identities[a] for a in sorted(identities)},
            compose={k: compose[k] for k in sorted(compose)},
        )

    def dom(self, m: str) -> str:
        return self.morphisms[m][0]

    def cod(self, m: str) -> str:
        return self.morphisms[m][1]

    def comp(self, g: str, f: str) -> str:
        """``g ∘ f``."""
        return self.compose[(g, f)]

    def identity(self, a: str) -> str:
        return self.identities[a]

    @cached_property
    def hom(self) -> dict[tuple[str, str], tuple[str, ...]]:
        h: dict[tuple[str, str], list[str]] = {(a, b): [] for a in self.objects for b in self.objects}
        for m, (d, c) in self.morphisms.items():
            h.setdefault((d, c), []).append(m)
        return {k: tuple(v) for k, v in h.items()}

    def homset(self, a: str, b: str) -> tuple[str, ...]:
        return self.hom.get((a, b), ())

    @cached_property
    def out_of(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {a: [] for a in self.objects}
        for m, (d, _) in self.morphisms.items():
            out.setdefault(d, []).append(m)
        return {a: tuple(v) for a, v in out.items()}

    @cached_property
    def into(self) -> dict[str, tuple[str, ...]]:
        inn: dict[str, list[str]] = {a: [] for a in self.objects}
        for m, (_, c) in self.morphisms.items():
            inn.setdefault(c, []).append(m)
        return {a: tuple(v) for a, v in inn.items()}

    @cached_property
    def identity_set(self) -> frozenset[str]:
        return frozenset(self.identities.values())

    @cached_property
    def key(self) -> tuple:
        return (
            self.objects,
            tuple(self.morphisms.items()),
            tuple(self.identities.items()),
            tuple(self.compose.items()),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCat):
            return NotImplemented
        return self is other or self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"FinCat({len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        """All ``(g, f)`` with ``cod f = dom g``."""
        for f, (_, c) in self.morphisms.items():
            for g in self.out_of.get(c, ()):
                yield g, f

    def is_empty(self) -> bool:
        return not self.objects

    def to_json(self) -> dict:
        return {
            "objects": list(self.objects),
            "morphisms": [{"id": m, "dom": d, "cod": c} for m, (d, c) in self.morphisms.items()],
            "identities": dict(self.identities),
            "compose": [[g, f, gf] for (g, f), gf in self.compose.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FinCat":
        return cls.build(
            data["objects"],
            {m["id"]: (m["dom"], m["cod"]) for m in data["morphisms"]},
            data["identities"],
            {(g, f): gf for g, f, gf in data["compose"]},
        )


def validate_category(c: FinCat) -> ValidationReport:
    """Check every category law exhaustively; failures carry witnesses."""
    out: list[Violation] = []
    objs = set(c.objects)
    for m, (d, cd) in c.morphisms.items():
        for o in (d, cd):
            if o not in objs:
                out.append(Violation("unknown-object", (m, o), f"{m} mentions unknown object {o}"))
    for a in c.objects:
        i = c.identities.get(a)
        if i is None:
            out.append(Violation("identity-missing", (a,), f"no identity for {a}"))
        elif c.morphisms.get(i) != (a, a):
            out.append(Violation("identity-type", (a, i), f"identity {i} is not an endomorphism of {a}"))
    if out:
        return ValidationReport(tuple(out))

    composable = set(c.composable_pairs())
    for pair in composable:
        if pair not in c.compose:
            out.append(Violation("totality", pair, f"missing composite {pair[0]}∘{pair[1]}"))
    for (g, f), gf in c.compose.items():
        if (g, f) not in composable:
            out.append(Violation("extraneous", (g, f), f"{g}∘{f} listed but not composable"))
        elif gf not in c.morphisms:
            out.append(Violation("unknown-morphism", (g, f, gf), f"{g}∘{f} = unknown {gf}"))
        elif c.morphisms[gf] != (c.dom(f), c.cod(g)):
            out.append(Violation("composite-type", (g, f, gf), f"{g}∘{f} = {gf} has wrong type"))
    if out:
        return ValidationReport(tuple(out))

    for f, (a, b) in c.morphisms.items():
        if c.comp(c.identity(b), f) != f:
            out.append(Violation("left-identity", (c.identity(b), f)))
        if c.comp(f, c.identity(a)) != f:
            out.append(Violation("right-identity", (f, c.identity(a))))
    for f in c.morphisms:
        for g in c.out_of[c.cod(f)]:
            gf = c.comp(g, f)
            for h in c.out_of[c.cod(g)]:
                if c.comp(h, gf) != c.comp(c.comp(h, g), f):
                    out.append(Violation("associativity", (h, g, f), f"h∘(g∘f) ≠ (h∘g)∘f for {(h, g, f)}"))
    return ValidationReport(tuple(out))


def require_valid(c: FinCat) -> FinCat:
    report = validate_category(c)
    if not report.ok:
        v = report.violations[0]
        raise CategoryError(str(v), v.witness)
    return c


def opposite(c: FinCat) -> FinCat:
    return FinCat.build(
        c.objects,
        {m: (cd, d) for m, (d, cd) in c.morphisms.items()},
        c.identities,
        {(f, g): gf for (g, f), gf in c.compose.items()},
    )


# --------------------------------------------------------------------------
# constructors

def _padded_names(n: int, prefix: str = "") -> list[str]:
    width = len(str(max(n - 1, 0)))
    return [f"{prefix}{i:0{width}d}" for i in range(n)]


def from_monoid(
    table: Sequence[Sequence[int]],
    unit: int,
    names: Sequence[str] | None = None,
    obj: str = "*",
) -> FinCat:
    """One-object category whose composition ``i ∘ j`` is ``table[i][j]``."""
    n = len(table)
    if any(len(row) != n for row in table):
        raise CategoryError("multiplication table is not square")
    names = list(names) if names is not None else _padded_names(n)
    for i in range(n):
        for j in range(n):
            if not 0 <= table[i][j] < n:
                raise CategoryError("table entry out of range", (names[i], names[j]))
    c = FinCat.build(
        [obj],
        {names[i]: (obj, obj) for i in range(n)},
        {obj: names[unit]},
        {(names[i], names[j]): names[table[i][j]] for i in range(n) for j in range(n)},
    )
    return require_valid(c)


def cyclic_group(n: int) -> FinCat:
    return from_monoid([[(i + j) % n for j in range(n)] for i in range(n)], 0)


def product_category(c: FinCat, d: FinCat) -> FinCat:
    def pair(x: str, y: str) -> str:
        return f"({x},{y})"

    morphisms = {
        pair(f, g): (pair(c.dom(f), d.dom(g)), pair(c.cod(f), d.cod(g)))
        for f in c.morphisms
        for g in d.morphisms
    }
    compose = {
        (pair(f2, g2), pair(f1, g1)): pair(c.comp(f2, f1), d.comp(g2, g1))
        for f2, f1 in c.composable_pairs()
        for g2, g1 in d.composable_pairs()
    }
    return FinCat.build(
        [pair(a, b) for a in c.objects for b in d.objects],
        morphisms,
        {pair(a, b): pair(c.identity(a), d.identity(b)) for a in c.objects for b in d.objects},
        compose,
    )


def discrete(n: int) -> FinCat:
    if n < 0:
        raise ValueError("n must be non-negative")
    objs = _padded_names(n, "o") if n else []
    return FinCat.build(
        objs,
        {f"id_{a}": (a, a) for a in objs},
        {a: f"id_{a}" for a in objs},
        {(f"id_{a}", f"id_{a}"): f"id_{a}" for a in objs},
    )


def from_relation(elements: Sequence[str], leq: Iterable[tuple[str, str]]) -> FinCat:
    """Thin category with one morphism ``a<=b`` exactly when ``(a, b)`` is in ``leq``."""
    rel = set(leq)
    morphisms = {f"{a}<={b}": (a, b) for a, b in rel}
    compose = {}
    for a, b in rel:
        for b2, c in rel:
            if b2 == b:
                compose[(f"{b}<={c}", f"{a}<={b}")] = f"{a}<={c}"
    return FinCat.build(elements, morphisms, {a: f"{a}<={a}" for a in elements}, compose)


def from_poset(p) -> FinCat:
    """Category of a :class:`isbell.order.FinPoset`."""
    return from_relation(p.elements, p.leq)


def adjoin_pair_object(i: FinCat, name: str = "z") -> FinCat:
    """Adjoin ``z`` with two compatible families of maps ``p0_i, p1_i : z -> i``."""
    z = name
    while z in i.objects:
        z += "'"
    idz = f"id_{z}"
    morphisms = dict(i.morphisms)
    morphisms[idz] = (z, z)
    compose = dict(i.compose)
    compose[(idz, idz)] = idz
    for eps in (0, 1):
        for a in i.objects:
            p = f"p{eps}_{a}"
            morphisms[p] = (z, a)
            compose[(p, idz)] = p
            for u in i.out_of[a]:
                compose[(u, p)] = f"p{eps}_{i.cod(u)}"
    return FinCat.build(list(i.objects) + [z], morphisms, {**i.identities, z: idz}, compose)


def partial_bijections(sizes: Sequence[int]) -> FinCat:
    """Sets ``{0..n-1}`` for ``n`` in ``sizes`` and all partial bijections between them.

    A morphism ``m -> n`` is written as its graph, e.g. ``"2>3:0-1,1-"``
    sends 0 to 1 and leaves 1 undefined.
    """
    def name(m: int, n: int, images: tuple) -> str:
        body = ",".join(f"{k}-{'' if v is None else v}" for k, v in enumerate(images))
        return f"{m}>{n}:{body}"

    homs: dict[tuple[int, int], list[tuple]] = {}
    for m in sizes:
        for n in sizes:
            maps = []
            for images in itertools.product([None, *range(n)], repeat=m):
                defined = [v for v in images if v is not None]
                if len(defined) == len(set(defined)):
                    maps.append(images)
            homs[(m, n)] = maps
    morphisms, compose = {}, {}
    for (m, n), maps in homs.items():
        for f in maps:
            morphisms[name(m, n, f)] = (f"n{m}", f"n{n}")
    for (m, n), fs in homs.items():
        for k in sizes:
            for f in fs:
                for g in homs[(n, k)]:
                    gf = tuple(None if v is None else g[v] for v in f)
                    compose[(name(n, k, g), name(m, n, f))] = name(m, k, gf)
    return FinCat.build(
        [f"n{m}" for m in sizes],
        morphisms,
        {f"n{m}": name(m, m, tuple(range(m))) for m in sizes},
        compose,
    )


def full_subcategory(c: FinCat, objects: Iterable[str]) -> FinCat:
    keep = set(objects)
    morphisms = {m: dc for m, dc in c.morphisms.items() if dc[0] in keep and dc[1] in keep}
    return FinCat.build(
        keep,
        morphisms,
        {a: c.identity(a) for a in keep},
        {k: v for k, v in c.compose.items() if k[0] in morphisms and k[1] in morphisms},
    )


def adjoin_initial_terminal(c: FinCat, initial: str = "⊥", terminal: str = "⊤") -> FinCat:
    """Freely adjoin a new initial and a new terminal object."""
    objs = list(c.objects) + [initial, terminal]

    def bang(a: str, b: str) -> str:
        return f"!{a}>{b}"

    morphisms = dict(c.morphisms)
    for a in objs:
        morphisms[bang(initial, a)] = (initial, a)
        morphisms[bang(a, terminal)] = (a, terminal)
    compose = dict(c.compose)
    for f, (a, b) in morphisms.items():
        for g in (m for m, (d, _) in morphisms.items() if d == b):
            if (g, f) not in compose:
                # one of the two is new, so a is ⊥ or the codomain is ⊤
                compose[(g, f)] = bang(a, morphisms[g][1])
    identities = {**c.identities, initial: bang(initial, initial), terminal: bang(terminal, terminal)}
    return require_valid(FinCat.build(objs, morphisms, identities, compose))


# --------------------------------------------------------------------------
# functors and cones

@dataclass(frozen=True, eq=False)
class FinFunctor:
    source: FinCat
    target: FinCat
    object_map: Mapping[str, str]
    morphism_map: Mapping[str, str]

    def __call__(self, m: str) -> str:
        return self.morphism_map[m]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and dict(self.object_map) == dict(other.object_map)
            and dict(self.morphism_map) == dict(other.morphism_map)
        )

    __hash__ = None  # type: ignore[assignment]


def validate_functor_map(f: FinFunctor) -> ValidationReport:
    out: list[Violation] = []
    s, t = f.source, f.target
    for a in s.objects:
        if f.object_map.get(a) not in t.objects:
            out.append(Violation("object-map", (a,), f"{a} has no image"))
    for m, (d, c) in s.morphisms.items():
        fm = f.morphism_map.get(m)
        if fm not in t.morphisms:
            out.append(Violation("morphism-map", (m,), f"{m} has no image"))
        elif t.morphisms[fm] != (f.object_map.get(d), f.object_map.get(c)):
            out.append(Violation("preserves-type", (m, fm)))
    if out:
        return ValidationReport(tuple(out))
    for a in s.objects:
        if f(s.identity(a)) != t.identity(f.object_map[a]):
            out.append(Violation("preserves-identity", (a,)))
    for g, h in s.composable_pairs():
        if f(s.comp(g, h)) != t.comp(f(g), f(h)):
            out.append(Violation("preserves-composition", (g, h)))
    return ValidationReport(tuple(out))


def identity_functor(c: FinCat) -> FinFunctor:
    return FinFunctor(c, c, {a: a for a in c.objects}, {m: m for m in c.morphisms})


def compose_functors(g: FinFunctor, f: FinFunctor) -> FinFunctor:
    """``g ∘ f``."""
    return FinFunctor(
        f.source,
        g.target,
        {a: g.object_map[b] for a, b in f.object_map.items()},
        {m: g(n) for m, n in f.morphism_map.items()},
    )


def inclusion(sub: FinCat, c: FinCat) -> FinFunctor:
    return FinFunctor(sub, c, {a: a for a in sub.objects}, {m: m for m in sub.morphisms})


@dataclass(frozen=True)
class Cone:
    """Legs ``vertex -> i`` indexed by diagram objects."""

    vertex: str
    legs: Mapping[str, str] = field(default_factory=dict)

    def is_cone(self, c: FinCat, arrows: Iterable[str]) -> bool:
        for u in arrows:
            i, j = c.morphisms[u]
            if c.comp(u, self.legs[i]) != self.legs[j]:
                return False
        return True


def cones_over(c: FinCat, objects: Sequence[str], arrows: Sequence[str], vertex: str) -> list[Cone]:
    """All cones with the given vertex over the diagram spanned by ``objects``/``arrows``."""
    objects = list(objects)
    constraints: dict[str, list[tuple[str, str, str]]] = {o: [] for o in objects}
    for u in arrows:
        i, j = c.morphisms[u]
        constraints[i].append((u, i, j))
        constraints[j].append((u, i, j))
    found: list[Cone] = []
    legs: dict[str, str] = {}

    def ok(o: str) -> bool:
        for u, i, j in constraints[o]:
            if i in legs and j in legs and c.comp(u, legs[i]) != legs[j]:
                return False
        return True

    def go(k: int) -> None:
        if k == len(objects):
            found.append(Cone(vertex, dict(legs)))
            return
        o = objects[k]
        for p in c.homset(vertex, o):
            legs[o] = p
            if ok(o):
                go(k + 1)
            del legs[o]

    go(0)
    return found


def cones_on_identity(c: FinCat) -> list[Cone]:
    out: list[Cone] = []
    for k in c.objects:
        out.extend(cones_over(c, c.objects, list(c.morphisms), k))
    return out


def is_absolute_limit_shape(c: FinCat) -> bool:
    return bool(cones_on_identity(c))


def connected_components(c: FinCat) -> list[frozenset[str]]:
    from networkx.utils import UnionFind

    uf = UnionFind(c.objects)
    for d, cd in c.morphisms.values():
        uf.union(d, cd)
    return sorted((frozenset(s) for s in uf.to_sets()), key=lambda s: sorted(s))


def find_isomorphism(c: FinCat, d: FinCat) -> FinFunctor | None:
    """Search for an isomorphism of categories ``c -> d`` (small inputs only)."""
    if len(c.objects) != len(d.objects) or len(c.morphisms) != len(d.morphisms):
        return None

    def sig(x: FinCat, a: str) -> tuple:
        return (
            len(x.homset(a, a)),
            tuple(sorted(len(x.homset(a, b)) for b in x.objects)),
            tuple(sorted(len(x.homset(b, a)) for b in x.objects)),
        )

    csig = {a: sig(c, a) for a in c.objects}
    dsig = {b: sig(d, b) for b in d.objects}
    objs = list(c.objects)
    omap: dict[str, str] = {}

    def objects_ok(a: str) -> bool:
        for a2, b2 in omap.items():
            if len(c.homset(a, a2)) != len(d.homset(omap[a], b2)):
                return False
            if len(c.homset(a2, a)) != len(d.homset(b2, omap[a])):
                return False
        return True

    nonid = [m for m in c.morphisms if m not in c.identity_set]

    def morphisms(omap: dict[str, str]) -> dict[str, str] | None:
        mmap = {c.identity(a): d.identity(omap[a]) for a in c.objects}
        used = set(mmap.values())

        def consistent(m: str) -> bool:
            for g, f in ((g, m) for g in c.out_of[c.cod(m)]):
                if g in mmap and c.comp(g, f) in mmap and d.comp(mmap[g], mmap[f]) != mmap[c.comp(g, f)]:
                    return False
            for f in c.into[c.dom(m)]:
                if f in mmap and c.comp(m, f) in mmap and d.comp(mmap[m], mmap[f]) != mmap[c.comp(m, f)]:
                    return False
            for g, f in c.composable_pairs():
                if c.comp(g, f) == m and g in mmap and f in mmap and d.comp(mmap[g], mmap[f]) != mmap[m]:
                    return False
            return True

        def go(k: int) -> bool:
            if k == len(nonid):
                return True
            m = nonid[k]
            for n in d.homset(omap[c.dom(m)], omap[c.cod(m)]):
                if n in used:
                    continue
                mmap[m] = n
                used.add(n)
                if consistent(m) and go(k + 1):
                    return True
                used.discard(n)
                del mmap[m]
            return False

        return dict(mmap) if go(0) else None

    def go_obj(k: int) -> FinFunctor | None:
        if k == len(objs):
            mm = morphisms(omap)
            return None if mm is None else FinFunctor(c, d, dict(omap), mm)
        a = objs[k]
        for b in d.objects:
            if b in omap.values() or dsig[b] != csig[a]:
                continue
            omap[a] = b
            if objects_ok(a):
                found = go_obj(k + 1)
                if found is not None:
                    return found
            del omap[a]
        return None

    return go_obj(0)
