"""Brute-force reference computations, written without the search engines.

These enumerate every candidate outright, so they are only usable on tiny
inputs.  Tests compare the library against them and freeze the results.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from isbell.metric import INF, CostVector, add


def _ends(x, m):
    d, c = x.base.morphisms[m]
    return (c, d) if x.variance == "contra" else (d, c)


def is_natural(x, y, comps):
    for m in x.base.morphisms:
        src, tgt = _ends(x, m)
        for e in x.sets[src]:
            if comps[tgt][x.actions[m][e]] != y.actions[m][comps[src][e]]:
                return False
    return True


def all_nat(x, y):
    """Every family of functions, kept when natural."""
    objs = list(x.base.objects)
    per_obj = [
        [dict(zip(x.sets[a], img)) for img in itertools.product(y.sets[a], repeat=len(x.sets[a]))]
        for a in objs
    ]
    out = []
    for choice in itertools.product(*per_obj):
        comps = dict(zip(objs, choice))
        if is_natural(x, y, comps):
            out.append(comps)
    return out


def nat_count(x, y):
    return len(all_nat(x, y))


def iso_exists(x, y):
    """Some natural family with every component bijective."""
    if [len(x.sets[a]) for a in x.base.objects] != [len(y.sets[a]) for a in y.base.objects]:
        return False
    objs = list(x.base.objects)
    per_obj = [[dict(zip(x.sets[a], p)) for p in itertools.permutations(y.sets[a])] for a in objs]
    return any(is_natural(x, y, dict(zip(objs, choice))) for choice in itertools.product(*per_obj))


def compose_partial(g, f):
    return tuple(None if v is None else g[v] for v in f)


def partial_bijections_of(n):
    out = []
    for images in itertools.product([None, *range(n)], repeat=n):
        defined = [v for v in images if v is not None]
        if len(defined) == len(set(defined)):
            out.append(images)
    return out


def hom_count_partial(m, n):
    return sum(
        1
        for images in itertools.product([None, *range(n)], repeat=m)
        if len([v for v in images if v is not None]) == len({v for v in images if v is not None})
    )


def conj_vector(d, f):
    """``a ↦ max_b (d(b, a) ∸ f(b))`` straight from the definition."""
    n = len(f)
    out = []
    for a in range(n):
        best = Fraction(0)
        for b in range(n):
            if d[b][a] == INF and f[b] == INF:
                v = Fraction(0)
            elif d[b][a] == INF:
                v = INF
            elif f[b] == INF:
                v = Fraction(0)
            else:
                v = max(d[b][a] - f[b], Fraction(0))
            if v == INF or (best != INF and v > best):
                best = v
        out.append(best)
    return out


def shortest_paths(d):
    n = len(d)
    d = [list(r) for r in d]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                via = add(d[i][k], d[k][j])
                if via < d[i][j]:
                    d[i][j] = via
    return d


def cost(space, values):
    return CostVector.build(space, values)


_POOLS: dict = {}


def small_functors(variance="contra"):
    """Representatives of small presheaves on several corpus categories."""
    if variance not in _POOLS:
        from isbell.completion import enumerate_functors
        from isbell.corpus import idempotent_monoid
        from isbell.fincat import cyclic_group, discrete, from_poset
        from isbell.order import chain

        cats = [(cyclic_group(2), 3), (idempotent_monoid(), 3), (discrete(2), 2), (from_poset(chain(2)), 2)]
        _POOLS[variance] = [x for c, b in cats for x in enumerate_functors(c, b, variance)]
    return _POOLS[variance]


def same_base_pairs(variance="contra"):
    pool = small_functors(variance)
    return [(x, y) for x in pool for y in pool if x.base == y.base]


def monoid_action_classes(c, bound):
    """Presheaves on a one-object category with at most ``bound`` elements, up to isomorphism."""
    from isbell.setfun import SetFunctor, validate_functor

    (obj,) = c.objects
    ms = list(c.morphisms)
    reps = []
    for n in range(bound + 1):
        pts = tuple(range(n))
        funcs = list(itertools.product(pts, repeat=n))
        for choice in itertools.product(funcs, repeat=len(ms)):
            x = SetFunctor(c, "contra", {obj: pts}, {m: dict(zip(pts, f)) for m, f in zip(ms, choice)})
            if validate_functor(x).ok and not any(iso_exists(r, x) for r in reps):
                reps.append(x)
    return reps
