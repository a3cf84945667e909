"""Finite Set-valued functors and natural transformations between them.

A :class:`SetFunctor` is either a presheaf (``variance="contra"``) or a
copresheaf (``variance="co"``) on a :class:`~isbell.fincat.FinCat`.  For a
presheaf ``X`` and ``f: a -> b`` the action table ``actions[f]`` is the
function ``X(b) -> X(a)``; for a copresheaf it is ``Y(a) -> Y(b)``.  Most of
the code is variance agnostic: it only needs to know where the action of a
morphism starts (:meth:`SetFunctor.act_src`) and where it lands.

Transformations are stored in index form, one tuple per object of the base
(in ``base.objects`` order), giving for each element position of the source
the element position of its image.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .fincat import FinCat, FinFunctor, ValidationReport, Violation

CONTRA = "contra"
CO = "co"

DEFAULT_CEILING = 10**7


class ResourceLimitExceeded(RuntimeError):
    """An enumeration visited more partial assignments than its ceiling allows."""

    def __init__(self, message: str, visited: int = 0, profile: Sequence | None = None):
        super().__init__(message)
        self.visited = visited
        self.profile = list(profile or [])


def flip(variance: str) -> str:
    return CO if variance == CONTRA else CONTRA


@dataclass(frozen=True, eq=False)
class SetFunctor:
    base: FinCat
    variance: str
    sets: Mapping[str, tuple]
    actions: Mapping[str, Mapping]

    @classmethod
    def build(
        cls,
        base: FinCat,
        variance: str,
        sets: Mapping[str, Iterable[Hashable]],
        actions: Mapping[str, Mapping],
    ) -> "SetFunctor":
        """Fill in identity actions that were left out."""
        if variance not in (CONTRA, CO):
            raise ValueError(f"variance must be {CONTRA!r} or {CO!r}")
        sets = {a: tuple(sets.get(a, ())) for a in base.objects}
        acts = {}
        for m in base.morphisms:
            if m in actions:
                acts[m] = dict(actions[m])
            elif m in base.identity_set:
                acts[m] = {e: e for e in sets[base.dom(m)]}
            else:
                acts[m] = {}
        return cls(base, variance, sets, acts)

    # -- orientation --------------------------------------------------------

    def act_src(self, m: str) -> str:
        d, c = self.base.morphisms[m]
        return c if self.variance == CONTRA else d

    def act_tgt(self, m: str) -> str:
        d, c = self.base.morphisms[m]
        return d if self.variance == CONTRA else c

    def __call__(self, a: str) -> tuple:
        return self.sets[a]

    def act(self, m: str, e: Hashable) -> Hashable:
        return self.actions[m][e]

    # -- index form ---------------------------------------------------------

    @cached_property
    def index(self) -> dict[str, dict[Hashable, int]]:
        return {a: {e: i for i, e in enumerate(s)} for a, s in self.sets.items()}

    @cached_property
    def idx_actions(self) -> dict[str, tuple[int, ...]]:
        """Actions as position tuples; assumes the functor is valid."""
        out = {}
        for m in self.base.morphisms:
            src, tgt = self.act_src(m), self.act_tgt(m)
            ti = self.index[tgt]
            out[m] = tuple(ti[self.actions[m][e]] for e in self.sets[src])
        return out

    @cached_property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(self.sets[a]) for a in self.base.objects)

    @cached_property
    def key(self) -> tuple:
        return (
            self.variance,
            self.base.key,
            tuple((a, self.sets[a]) for a in self.base.objects),
            tuple((m, tuple(self.actions[m].get(e) for e in self.sets[self.act_src(m)])) for m in self.base.morphisms),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetFunctor):
            return NotImplemented
        return self is other or self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        body = ", ".join(f"{a}:{len(s)}" for a, s in self.sets.items())
        return f"SetFunctor({self.variance}; {body})"

    def total_size(self) -> int:
        return sum(self.sizes)

    def with_elements_relabelled(self, labels: Mapping[str, Sequence[Hashable]]) -> "SetFunctor":
        ren = {a: dict(zip(self.sets[a], labels[a])) for a in self.base.objects}
        return SetFunctor(
            self.base,
            self.variance,
            {a: tuple(labels[a]) for a in self.base.objects},
            {
                m: {ren[self.act_src(m)][e]: ren[self.act_tgt(m)][v] for e, v in act.items()}
                for m, act in self.actions.items()
            },
        )

    def to_json(self, base_ref: object | None = None) -> dict:
        return {
            "base": self.base.to_json() if base_ref is None else base_ref,
            "variance": self.variance,
            "sets": {a: [str(e) for e in self.sets[a]] for a in self.base.objects},
            "actions": {
                m: {str(e): str(v) for e, v in self.actions[m].items()}
                for m in self.base.morphisms
                if m not in self.base.identity_set
            },
        }

    @classmethod
    def from_json(cls, data: Mapping, base: FinCat | None = None) -> "SetFunctor":
        if base is None:
            base = FinCat.from_json(data["base"])
        sets = {a: [str(e) for e in es] for a, es in data["sets"].items()}
        actions = {m: {str(k): str(v) for k, v in act.items()} for m, act in data.get("actions", {}).items()}
        return cls.build(base, data["variance"], sets, actions)


@dataclass(frozen=True, eq=False)
class NatTransf:
    source: SetFunctor
    target: SetFunctor
    comps: tuple[tuple[int, ...], ...]

    def component(self, a: str) -> dict:
        i = self.source.base.objects.index(a)
        tgt = self.target.sets[a]
        return {e: tgt[j] for e, j in zip(self.source.sets[a], self.comps[i])}

    def __call__(self, a: str, e: Hashable) -> Hashable:
        i = self.source.base.objects.index(a)
        return self.target.sets[a][self.comps[i][self.source.index[a][e]]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NatTransf):
            return NotImplemented
        return self.comps == other.comps and self.source == other.source and self.target == other.target

    def __hash__(self) -> int:
        return hash(self.comps)

    def __repr__(self) -> str:
        return f"NatTransf({self.comps})"

    def is_bijective(self) -> bool:
        return all(
            sorted(c) == list(range(n))
            for c, n in zip(self.comps, self.target.sizes)
        ) and self.source.sizes == self.target.sizes

    def to_json(self) -> dict:
        return {a: {str(e): str(v) for e, v in self.component(a).items()} for a in self.source.base.objects}


# --------------------------------------------------------------------------
# validation

def validate_functor(x: SetFunctor) -> ValidationReport:
    out: list[Violation] = []
    c = x.base
    if x.variance not in (CONTRA, CO):
        return ValidationReport((Violation("variance", (x.variance,)),))
    for a in c.objects:
        if a not in x.sets:
            out.append(Violation("object-set", (a,), f"no set for {a}"))
        elif len(set(x.sets[a])) != len(x.sets[a]):
            out.append(Violation("duplicate-element", (a,)))
    if out:
        return ValidationReport(tuple(out))
    for m in c.morphisms:
        act = x.actions.get(m, {})
        src, tgt = set(x.sets[x.act_src(m)]), set(x.sets[x.act_tgt(m)])
        if set(act) != src:
            out.append(Violation("totality", (m,), f"action of {m} is not defined on all of {x.act_src(m)}"))
        elif not set(act.values()) <= tgt:
            out.append(Violation("codomain", (m,), f"action of {m} leaves {x.act_tgt(m)}"))
    if out:
        return ValidationReport(tuple(out))
    for a in c.objects:
        i = c.identity(a)
        if any(x.actions[i][e] != e for e in x.sets[a]):
            out.append(Violation("identity", (i,), f"{i} does not act as the identity"))
    for g, f in c.composable_pairs():
        gf = c.comp(g, f)
        # contravariant: X(g∘f) = X(f)∘X(g); covariant: Y(g∘f) = Y(g)∘Y(f)
        first, second = (g, f) if x.variance == CONTRA else (f, g)
        for e in x.sets[x.act_src(gf)]:
            if x.actions[gf][e] != x.actions[second][x.actions[first][e]]:
                out.append(Violation("composition", (g, f), f"action of {gf} ≠ composite at element {e!r}"))
                break
    return ValidationReport(tuple(out))


def validate_transformation(alpha: NatTransf) -> ValidationReport:
    x, y = alpha.source, alpha.target
    out: list[Violation] = []
    objs = x.base.objects
    pos = {a: i for i, a in enumerate(objs)}
    for m in x.base.morphisms:
        s, t = x.act_src(m), x.act_tgt(m)
        xs, ys = x.idx_actions[m], y.idx_actions[m]
        cs, ct = alpha.comps[pos[s]], alpha.comps[pos[t]]
        for i in range(len(xs)):
            if ct[xs[i]] != ys[cs[i]]:
                out.append(Violation("naturality", (m, x.sets[s][i])))
                break
    return ValidationReport(tuple(out))


# --------------------------------------------------------------------------
# the search engine

def _check_pair(x: SetFunctor, y: SetFunctor) -> None:
    if x.variance != y.variance:
        raise ValueError("variance mismatch")
    if x.base != y.base:
        raise ValueError("functors live on different categories")


class _Search:
    """Backtracking over element images with naturality propagation.

    Branching follows objects in ascending ``|x(a)|``; every assignment is
    pushed along all non-identity actions out of the element before the next
    branch, so a completed assignment is natural by construction.
    """

    def __init__(self, x: SetFunctor, y: SetFunctor, injective: bool = False, ceiling: int | None = None):
        _check_pair(x, y)
        self.x, self.y = x, y
        self.injective = injective
        self.ceiling = DEFAULT_CEILING if ceiling is None else ceiling
        self.visited = 0
        c = x.base
        objs = c.objects
        self.objs = objs
        pos = {a: i for i, a in enumerate(objs)}
        self.offset = list(itertools.accumulate([0, *x.sizes]))
        self.n = self.offset[-1]
        self.obj_of = [oi for oi, k in enumerate(x.sizes) for _ in range(k)]
        prop: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(self.n)]
        for m in c.morphisms:
            if m in c.identity_set:
                continue
            s, t = pos[x.act_src(m)], pos[x.act_tgt(m)]
            xs, ys = x.idx_actions[m], y.idx_actions[m]
            for i, xi in enumerate(xs):
                prop[self.offset[s] + i].append((self.offset[t] + xi, ys))
        self.prop = prop
        order = sorted(range(len(objs)), key=lambda oi: (x.sizes[oi], oi))
        self.order = [self.offset[oi] + i for oi in order for i in range(x.sizes[oi])]
        self.domain = [range(y.sizes[self.obj_of[v]]) for v in range(self.n)]
        if injective:
            self.domain = self._invariant_domains()

    def _invariant_domains(self) -> list[Sequence[int]]:
        # an iso preserves which endomorphisms fix an element
        x, y, c = self.x, self.y, self.x.base
        doms: list[Sequence[int]] = []
        for v in range(self.n):
            oi = self.obj_of[v]
            a = self.objs[oi]
            i = v - self.offset[oi]
            endos = [m for m in c.homset(a, a) if m not in c.identity_set]
            sig = tuple(x.idx_actions[m][i] == i for m in endos)
            doms.append([j for j in range(y.sizes[oi]) if tuple(y.idx_actions[m][j] == j for m in endos) == sig])
        return doms

    def _assign(self, v: int, cand: int, val: list[int], used: list[set[int]] | None, trail: list[int]) -> bool:
        self.visited += 1
        if self.visited > self.ceiling:
            raise ResourceLimitExceeded(
                f"natural-transformation search exceeded {self.ceiling} partial assignments",
                self.visited,
            )
        stack = [(v, cand)]
        while stack:
            u, c = stack.pop()
            cur = val[u]
            if cur >= 0:
                if cur != c:
                    return False
                continue
            if used is not None:
                o = self.obj_of[u]
                if c in used[o]:
                    return False
                used[o].add(c)
            val[u] = c
            trail.append(u)
            for w, ymap in self.prop[u]:
                stack.append((w, ymap[c]))
        return True

    def solutions(self, first_only: bool = False) -> Iterator[tuple[tuple[int, ...], ...]]:
        x, y = self.x, self.y
        for oi, k in enumerate(x.sizes):
            if k and not y.sizes[oi]:
                return
            if self.injective and k != y.sizes[oi]:
                return
        val = [-1] * self.n
        used = [set() for _ in self.objs] if self.injective else None
        order, offset = self.order, self.offset
        nobj = len(self.objs)

        def pack() -> tuple[tuple[int, ...], ...]:
            return tuple(tuple(val[offset[oi]:offset[oi + 1]]) for oi in range(nobj))

        def go(p: int) -> Iterator[tuple[tuple[int, ...], ...]]:
            while p < len(order) and val[order[p]] >= 0:
                p += 1
            if p == len(order):
                yield pack()
                return
            v = order[p]
            for cand in self.domain[v]:
                trail: list[int] = []
                if self._assign(v, cand, val, used, trail):
                    yield from go(p + 1)
                for u in trail:
                    if used is not None:
                        used[self.obj_of[u]].discard(val[u])
                    val[u] = -1

        yield from go(0)


def nat_transformations(x: SetFunctor, y: SetFunctor, ceiling: int | None = None) -> list[NatTransf]:
    """Every natural transformation ``x -> y``, sorted canonically."""
    search = _Search(x, y, ceiling=ceiling)
    return [NatTransf(x, y, comps) for comps in sorted(search.solutions())]


def count_nat_transformations(x: SetFunctor, y: SetFunctor, ceiling: int | None = None) -> int:
    return sum(1 for _ in _Search(x, y, ceiling=ceiling).solutions())


def _signature(x: SetFunctor) -> tuple:
    sig = []
    for m in x.base.morphisms:
        act = x.idx_actions[m]
        fixed = sum(1 for i, j in enumerate(act) if i == j) if x.act_src(m) == x.act_tgt(m) else -1
        sig.append((len(set(act)), fixed))
    return (x.sizes, tuple(sig))


def is_isomorphic(x: SetFunctor, y: SetFunctor, ceiling: int | None = None) -> NatTransf | None:
    """An explicit natural isomorphism ``x -> y``, or ``None``."""
    _check_pair(x, y)
    if _signature(x) != _signature(y):
        return None
    search = _Search(x, y, injective=True, ceiling=ceiling)
    for comps in search.solutions():
        return NatTransf(x, y, comps)
    return None


# --------------------------------------------------------------------------
# algebra of transformations

def identity_transformation(x: SetFunctor) -> NatTransf:
    return NatTransf(x, x, tuple(tuple(range(k)) for k in x.sizes))


def compose_transformations(beta: NatTransf, alpha: NatTransf) -> NatTransf:
    """``beta ∘ alpha``."""
    return NatTransf(
        alpha.source,
        beta.target,
        tuple(tuple(b[i] for i in a) for a, b in zip(alpha.comps, beta.comps)),
    )


def inverse(alpha: NatTransf) -> NatTransf:
    if not alpha.is_bijective():
        raise ValueError("transformation is not invertible")
    comps = []
    for c in alpha.comps:
        inv = [0] * len(c)
        for i, j in enumerate(c):
            inv[j] = i
        comps.append(tuple(inv))
    return NatTransf(alpha.target, alpha.source, tuple(comps))


def transformation_from_components(x: SetFunctor, y: SetFunctor, comps: Mapping[str, Mapping]) -> NatTransf:
    return NatTransf(
        x,
        y,
        tuple(tuple(y.index[a][comps[a][e]] for e in x.sets[a]) for a in x.base.objects),
    )


# --------------------------------------------------------------------------
# constructions

def representable(c: FinCat, a: str, variance: str = CONTRA) -> SetFunctor:
    """``A(-, a)`` (contravariant) or ``A(a, -)`` (covariant)."""
    if a not in c.objects:
        raise KeyError(f"unknown object {a!r}")
    if variance == CONTRA:
        sets = {b: c.homset(b, a) for b in c.objects}
        actions = {m: {g: c.comp(g, m) for g in sets[c.cod(m)]} for m in c.morphisms}
    else:
        sets = {b: c.homset(a, b) for b in c.objects}
        actions = {m: {g: c.comp(m, g) for g in sets[c.dom(m)]} for m in c.morphisms}
    return SetFunctor(c, variance, sets, actions)


def terminal(c: FinCat, variance: str = CONTRA) -> SetFunctor:
    return SetFunctor(c, variance, {a: ("*",) for a in c.objects}, {m: {"*": "*"} for m in c.morphisms})


def initial(c: FinCat, variance: str = CONTRA) -> SetFunctor:
    return SetFunctor(c, variance, {a: () for a in c.objects}, {m: {} for m in c.morphisms})


def _common(xs: Sequence[SetFunctor]) -> tuple[FinCat, str]:
    base, var = xs[0].base, xs[0].variance
    for x in xs[1:]:
        _check_pair(xs[0], x)
    return base, var


def coproduct(xs: Sequence[SetFunctor], base: FinCat | None = None, variance: str = CONTRA) -> SetFunctor:
    """Pointwise disjoint union; summand ``k`` element ``e`` becomes ``(k, e)``."""
    if not xs:
        if base is None:
            raise ValueError("empty coproduct needs an explicit base")
        return initial(base, variance)
    base, var = _common(xs)
    sets = {a: tuple((k, e) for k, x in enumerate(xs) for e in x.sets[a]) for a in base.objects}
    actions = {
        m: {(k, e): (k, v) for k, x in enumerate(xs) for e, v in x.actions[m].items()}
        for m in base.morphisms
    }
    return SetFunctor(base, var, sets, actions)


def product(xs: Sequence[SetFunctor], base: FinCat | None = None, variance: str = CONTRA) -> SetFunctor:
    """Pointwise cartesian product with tuple elements."""
    if not xs:
        if base is None:
            raise ValueError("empty product needs an explicit base")
        return terminal(base, variance)
    base, var = _common(xs)
    sets = {a: tuple(itertools.product(*(x.sets[a] for x in xs))) for a in base.objects}
    actions = {}
    for m in base.morphisms:
        src = xs[0].act_src(m)
        actions[m] = {t: tuple(x.actions[m][e] for x, e in zip(xs, t)) for t in sets[src]}
    return SetFunctor(base, var, sets, actions)


def copower(n: int, x: SetFunctor) -> SetFunctor:
    return coproduct([x] * n, x.base, x.variance)


def precompose(z: SetFunctor, f: FinFunctor) -> SetFunctor:
    """``z ∘ f`` for ``f : A -> B`` and ``z`` on ``B``."""
    if f.target != z.base:
        raise ValueError("functor does not land in the base of z")
    return SetFunctor(
        f.source,
        z.variance,
        {a: z.sets[f.object_map[a]] for a in f.source.objects},
        {m: dict(z.actions[f(m)]) for m in f.source.morphisms},
    )


def nerve_presheaf(f: FinFunctor, b: str) -> SetFunctor:
    """``a ↦ B(f a, b)``."""
    return precompose(representable(f.target, b, CONTRA), f)


def supp(x: SetFunctor) -> frozenset[str]:
    return frozenset(a for a in x.base.objects if x.sets[a])


def is_subterminal(x: SetFunctor) -> bool:
    return all(len(s) <= 1 for s in x.sets.values())


def components(x: SetFunctor) -> list[frozenset[tuple[str, Hashable]]]:
    """Connected components of the category of elements (orbits for a group)."""
    from networkx.utils import UnionFind

    elems = [(a, e) for a in x.base.objects for e in x.sets[a]]
    uf = UnionFind(elems)
    for m in x.base.morphisms:
        s, t = x.act_src(m), x.act_tgt(m)
        for e, v in x.actions[m].items():
            uf.union((s, e), (t, v))
    return sorted((frozenset(c) for c in uf.to_sets()), key=lambda c: sorted(map(repr, c)))


def orbit_count(x: SetFunctor) -> int:
    return len(components(x))
