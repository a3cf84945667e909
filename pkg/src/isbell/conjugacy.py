"""Isbell conjugation of finite Set-valued functors.

For a presheaf ``X`` the conjugate is the copresheaf ``a ↦ Nat(X, A(-, a))``;
for a copresheaf ``Y`` it is the presheaf ``a ↦ Nat(Y, A(a, -))``.  Elements
of a conjugate are integer labels; :class:`ConjugateResult` keeps the table
from labels back to the transformations they stand for, which is what makes
the unit ``X -> X^∨∨`` computable exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Mapping

from .fincat import FinCat, ValidationReport, Violation, opposite
from .setfun import (
    CO,
    CONTRA,
    NatTransf,
    ResourceLimitExceeded,
    SetFunctor,
    compose_transformations,
    flip,
    identity_transformation,
    is_isomorphic,
    nat_transformations,
    orbit_count,
    representable,
)

# χ[(a, b)][(x, y)] = morphism a -> b, for x ∈ X(a) and y ∈ Y(b)
Pairing = dict[tuple[str, str], dict[tuple[Hashable, Hashable], str]]


@dataclass(frozen=True, eq=False)
class ConjugateResult:
    input: SetFunctor
    output: SetFunctor
    witness: Mapping[str, tuple[NatTransf, ...]]
    reps: Mapping[str, SetFunctor]

    @cached_property
    def label_of(self) -> dict[str, dict[tuple, int]]:
        return {a: {xi.comps: k for k, xi in enumerate(ws)} for a, ws in self.witness.items()}

    def value(self, a: str, label: int, c: str, e: Hashable) -> str:
        """The morphism ``ξ_c(e)`` for the transformation ``ξ`` named by ``label`` at ``a``."""
        return self.witness[a][label](c, e)

    def lookup(self, a: str, values: Mapping[str, Mapping[Hashable, str]]) -> int | None:
        """Label of the transformation at ``a`` with the given morphism values."""
        rep = self.reps[a]
        x = self.input
        try:
            comps = tuple(
                tuple(rep.index[c][values[c][e]] for e in x.sets[c]) for c in x.base.objects
            )
        except KeyError:
            return None
        return self.label_of[a].get(comps)


def _rep(c: FinCat, a: str, variance: str) -> SetFunctor:
    return representable(c, a, variance)


def conjugate(x: SetFunctor, ceiling: int | None = None) -> ConjugateResult:
    c = x.base
    reps = {a: _rep(c, a, x.variance) for a in c.objects}
    witness = {a: tuple(nat_transformations(x, reps[a], ceiling)) for a in c.objects}
    out_var = flip(x.variance)
    label_of = {a: {xi.comps: k for k, xi in enumerate(ws)} for a, ws in witness.items()}
    pos = {o: i for i, o in enumerate(c.objects)}
    actions: dict[str, dict[int, int]] = {}
    for m in c.morphisms:
        d, cd = c.morphisms[m]
        # a presheaf's conjugate is covariant (postcompose with m);
        # a copresheaf's conjugate is contravariant (precompose with m)
        src, tgt = (d, cd) if out_var == CO else (cd, d)
        rs, rt = reps[src], reps[tgt]
        act = {}
        for k, xi in enumerate(witness[src]):
            new = []
            for o in c.objects:
                row = []
                for j in xi.comps[pos[o]]:
                    g = rs.sets[o][j]
                    h = c.comp(m, g) if out_var == CO else c.comp(g, m)
                    row.append(rt.index[o][h])
                new.append(tuple(row))
            act[k] = label_of[tgt][tuple(new)]
        actions[m] = act
    out = SetFunctor(c, out_var, {a: tuple(range(len(witness[a]))) for a in c.objects}, actions)
    return ConjugateResult(x, out, witness, reps)


def double_conjugate(x: SetFunctor, ceiling: int | None = None) -> SetFunctor:
    return conjugate(conjugate(x, ceiling).output, ceiling).output


@dataclass(frozen=True)
class UnitData:
    eta: NatTransf
    first: ConjugateResult
    second: ConjugateResult


def evaluation_at(r1: ConjugateResult, a: str, e: Hashable) -> NatTransf:
    """``ξ ↦ ξ_a(e)`` as a transformation from ``X^∨`` to the representable at ``a``."""
    xv, c = r1.output, r1.output.base
    rep = representable(c, a, xv.variance)
    return NatTransf(
        xv,
        rep,
        tuple(tuple(rep.index[b][r1.value(b, k, a, e)] for k in xv.sets[b]) for b in c.objects),
    )


def unit_data(x: SetFunctor, ceiling: int | None = None, first: ConjugateResult | None = None) -> UnitData:
    r1 = first if first is not None else conjugate(x, ceiling)
    r2 = conjugate(r1.output, ceiling)
    c = x.base
    comps = []
    for a in c.objects:
        row = []
        for e in x.sets[a]:
            label = r2.label_of[a].get(evaluation_at(r1, a, e).comps)
            if label is None:
                raise AssertionError("evaluation at an element is not natural")
            row.append(label)
        comps.append(tuple(row))
    return UnitData(NatTransf(x, r2.output, tuple(comps)), r1, r2)


def unit(x: SetFunctor, ceiling: int | None = None) -> NatTransf:
    return unit_data(x, ceiling).eta


@dataclass(frozen=True)
class ReflexivityCertificate:
    reflexive: bool
    eta: NatTransf
    failing_object: str | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        return {
            "reflexive": self.reflexive,
            "failing_object": self.failing_object,
            "reason": self.reason,
            "eta": self.eta.to_json(),
            "double_conjugate_sizes": dict(zip(self.eta.target.base.objects, self.eta.target.sizes)),
        }


def certify(eta: NatTransf) -> ReflexivityCertificate:
    x, xx = eta.source, eta.target
    for a, comp, n in zip(x.base.objects, eta.comps, xx.sizes):
        if len(set(comp)) != len(comp):
            return ReflexivityCertificate(False, eta, a, "unit is not injective")
        if len(comp) != n:
            return ReflexivityCertificate(False, eta, a, "unit is not surjective")
    return ReflexivityCertificate(True, eta)


def is_reflexive(x: SetFunctor, ceiling: int | None = None) -> ReflexivityCertificate:
    return certify(unit(x, ceiling))


# --------------------------------------------------------------------------
# pairings, the counit and the adjunction

def validate_pairing(x: SetFunctor, y: SetFunctor, chi: Pairing) -> ValidationReport:
    """Naturality of ``χ: X(a) × Y(b) -> A(a, b)`` in both variables."""
    c = x.base
    out: list[Violation] = []
    if x.variance != CONTRA or y.variance != CO:
        return ValidationReport((Violation("variance", (x.variance, y.variance)),))
    for a in c.objects:
        for b in c.objects:
            block = chi.get((a, b), {})
            for e in x.sets[a]:
                for f in y.sets[b]:
                    v = block.get((e, f))
                    if v is None or c.morphisms.get(v) != (a, b):
                        out.append(Violation("pairing-type", (a, b, e, f)))
    if out:
        return ValidationReport(tuple(out))
    for m in c.morphisms:
        d, cd = c.morphisms[m]
        # χ(e·m, f) = χ(e, f) ∘ m  for e ∈ X(cd)
        for b in c.objects:
            for e in x.sets[cd]:
                for f in y.sets[b]:
                    if chi[(d, b)][(x.actions[m][e], f)] != c.comp(chi[(cd, b)][(e, f)], m):
                        out.append(Violation("naturality-left", (m, e, f)))
        # χ(e, m·f) = m ∘ χ(e, f)  for f ∈ Y(d)
        for a in c.objects:
            for e in x.sets[a]:
                for f in y.sets[d]:
                    if chi[(a, cd)][(e, y.actions[m][f])] != c.comp(m, chi[(a, d)][(e, f)]):
                        out.append(Violation("naturality-right", (m, e, f)))
    return ValidationReport(tuple(out))


def counit_pairing(x: SetFunctor, rx: ConjugateResult | None = None) -> Pairing:
    """``ε_{a,b}(e, ξ) = ξ_a(e)`` for ``e ∈ X(a)`` and ``ξ ∈ X^∨(b)``."""
    if rx is None:
        rx = conjugate(x)
    c = x.base
    if x.variance == CONTRA:
        return {
            (a, b): {(e, k): rx.value(b, k, a, e) for e in x.sets[a] for k in rx.output.sets[b]}
            for a in c.objects
            for b in c.objects
        }
    # copresheaf: ξ ∈ Y^∨(a) pairs with e ∈ Y(b) to give ξ_b(e) : a -> b
    return {
        (a, b): {(k, e): rx.value(a, k, b, e) for k in rx.output.sets[a] for e in x.sets[b]}
        for a in c.objects
        for b in c.objects
    }


def pairing_from_left(alpha: NatTransf, ry: ConjugateResult) -> Pairing:
    """``χ(e, f) = α_a(e)_b(f)`` for ``α: X -> Y^∨``."""
    x, y, c = alpha.source, ry.input, alpha.source.base
    return {
        (a, b): {(e, f): ry.value(a, alpha(a, e), b, f) for e in x.sets[a] for f in y.sets[b]}
        for a in c.objects
        for b in c.objects
    }


def pairing_from_right(beta: NatTransf, rx: ConjugateResult) -> Pairing:
    """``χ(e, f) = β_b(f)_a(e)`` for ``β: Y -> X^∨``."""
    y, x, c = beta.source, rx.input, beta.source.base
    return {
        (a, b): {(e, f): rx.value(b, beta(b, f), a, e) for e in x.sets[a] for f in y.sets[b]}
        for a in c.objects
        for b in c.objects
    }


def left_transpose(chi: Pairing, ry: ConjugateResult, x: SetFunctor) -> NatTransf | None:
    """The map ``X -> Y^∨`` named by ``χ``; ``None`` if some slice is not natural."""
    y, c = ry.input, x.base
    comps = []
    for a in c.objects:
        row = []
        for e in x.sets[a]:
            label = ry.lookup(a, {b: {f: chi[(a, b)][(e, f)] for f in y.sets[b]} for b in c.objects})
            if label is None:
                return None
            row.append(label)
        comps.append(tuple(row))
    return NatTransf(x, ry.output, tuple(comps))


def right_transpose(chi: Pairing, rx: ConjugateResult, y: SetFunctor) -> NatTransf | None:
    """The map ``Y -> X^∨`` named by ``χ``; ``None`` if some slice is not natural."""
    x, c = rx.input, y.base
    comps = []
    for b in c.objects:
        row = []
        for f in y.sets[b]:
            label = rx.lookup(b, {a: {e: chi[(a, b)][(e, f)] for e in x.sets[a]} for a in c.objects})
            if label is None:
                return None
            row.append(label)
        comps.append(tuple(row))
    return NatTransf(y, rx.output, tuple(comps))


@dataclass(frozen=True)
class AdjunctionBijection:
    left: tuple[NatTransf, ...]  # Nat(x, y^∨)
    right: tuple[NatTransf, ...]  # Nat(y, x^∨)
    forward: tuple[int, ...]  # left index -> right index
    backward: tuple[int, ...]  # right index -> left index
    pairings: tuple[Pairing, ...] = field(repr=False, default=())

    @property
    def is_bijection(self) -> bool:
        n = len(self.left)
        return (
            n == len(self.right)
            and all(self.backward[self.forward[i]] == i for i in range(n))
            and all(self.forward[self.backward[j]] == j for j in range(len(self.right)))
        )


def adjunction_bijection(x: SetFunctor, y: SetFunctor, ceiling: int | None = None) -> AdjunctionBijection:
    """``Nat(x, y^∨) ≅ Nat(x ⊠ y, Hom) ≅ Nat(y, x^∨)``, both ways through the pairing."""
    if x.variance != CONTRA or y.variance != CO:
        raise ValueError("expected a presheaf and a copresheaf")
    if x.base != y.base:
        raise ValueError("functors live on different categories")
    rx, ry = conjugate(x, ceiling), conjugate(y, ceiling)
    left = tuple(nat_transformations(x, ry.output, ceiling))
    right = tuple(nat_transformations(y, rx.output, ceiling))
    lidx = {t.comps: i for i, t in enumerate(left)}
    ridx = {t.comps: i for i, t in enumerate(right)}
    forward, pairings = [], []
    for alpha in left:
        chi = pairing_from_left(alpha, ry)
        beta = right_transpose(chi, rx, y)
        if beta is None:
            raise AssertionError("pairing from a natural map is not natural")
        forward.append(ridx[beta.comps])
        pairings.append(chi)
    backward = []
    for beta in right:
        alpha = left_transpose(pairing_from_right(beta, rx), ry, x)
        if alpha is None:
            raise AssertionError("pairing from a natural map is not natural")
        backward.append(lidx[alpha.comps])
    return AdjunctionBijection(left, right, tuple(forward), tuple(backward), tuple(pairings))


# --------------------------------------------------------------------------
# functoriality, the triangle identity, iteration

def conjugate_transformation(alpha: NatTransf, rx: ConjugateResult, rx2: ConjugateResult) -> NatTransf:
    """``α^∨ : x'^∨ -> x^∨`` for ``α: x -> x'``, given both conjugates; ``ξ ↦ ξ ∘ α``."""
    c = alpha.source.base
    comps = []
    for a in c.objects:
        row = []
        for xi in rx2.witness[a]:
            new = tuple(
                tuple(xi.comps[i][j] for j in alpha.comps[i]) for i in range(len(c.objects))
            )
            row.append(rx.label_of[a][new])
        comps.append(tuple(row))
    return NatTransf(rx2.output, rx.output, tuple(comps))


@dataclass(frozen=True)
class SplitMonicReport:
    split_monic: bool
    section: NatTransf  # η at the conjugate
    retraction: NatTransf  # conjugate of η
    section_bijective: bool


def split_monic_check(w: SetFunctor, ceiling: int | None = None) -> SplitMonicReport:
    """``(η_W)^∨ ∘ η_{W^∨} = id`` on the nose."""
    ud = unit_data(w, ceiling)
    w1 = ud.first.output
    ud1 = unit_data(w1, ceiling, first=ud.second)
    # ud1.second is the conjugate of W^∨∨, i.e. W^∨∨∨
    retraction = conjugate_transformation(ud.eta, ud.first, ud1.second)
    comp = compose_transformations(retraction, ud1.eta)
    ok = comp.comps == identity_transformation(w1).comps and comp.target == w1
    return SplitMonicReport(ok, ud1.eta, retraction, certify(ud1.eta).reflexive)


@dataclass(frozen=True)
class StepSummary:
    step: int
    variance: str
    sizes: dict[str, int]
    orbits: int
    isomorphic_to: int | None

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "variance": self.variance,
            "sizes": self.sizes,
            "orbits": self.orbits,
            "isomorphic_to": self.isomorphic_to,
        }


def iterate_conjugates(x: SetFunctor, n: int, ceiling: int | None = None) -> list[StepSummary]:
    """Summaries of the first ``n`` terms of ``x, x^∨, x^∨∨, ...``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    terms: list[SetFunctor] = []
    out: list[StepSummary] = []
    cur = x
    for k in range(n):
        if k:
            try:
                cur = conjugate(cur, ceiling).output
            except ResourceLimitExceeded as err:
                raise ResourceLimitExceeded(
                    f"conjugate at step {k} exceeded the ceiling", err.visited, [s.to_json() for s in out]
                ) from err
        iso = None
        for j in range(k % 2, k, 2):
            if is_isomorphic(terms[j], cur, ceiling) is not None:
                iso = j
                break
        terms.append(cur)
        out.append(StepSummary(k, cur.variance, dict(zip(cur.base.objects, cur.sizes)), orbit_count(cur), iso))
    return out


def as_opposite(x: SetFunctor) -> SetFunctor:
    """The same tables read as a functor of the other variance on the opposite category."""
    return SetFunctor(opposite(x.base), flip(x.variance), dict(x.sets), dict(x.actions))
