"""The category of triples ``(X, Y, χ)`` with ``χ : X ⊠ Y -> Hom``.

An object pairs a presheaf with a copresheaf through a family
``χ_{a,b} : X(a) × Y(b) -> A(a, b)`` natural in both variables.  A map
``(X, Y, χ) -> (X', Y', χ')`` is a pair ``p : X -> X'``, ``q : Y' -> Y`` with
``χ(u, q(v)) = χ'(p(u), v)``.  The transposes of ``χ`` are maps
``φ : X -> Y^∨`` and ``ψ : Y -> X^∨``; the object is in the invariant part
when both are invertible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .conjugacy import (
    Pairing,
    conjugate,
    counit_pairing,
    is_reflexive,
    left_transpose,
    pairing_from_left,
    pairing_from_right,
    right_transpose,
    validate_pairing,
)
from .fincat import FinCat, ValidationReport, Violation
from .setfun import (
    CO,
    CONTRA,
    DEFAULT_CEILING,
    NatTransf,
    ResourceLimitExceeded,
    SetFunctor,
    is_isomorphic,
    nat_transformations,
    validate_functor,
)


@dataclass(frozen=True, eq=False)
class EnvelopeObject:
    x: SetFunctor
    y: SetFunctor
    chi: Pairing

    @property
    def base(self) -> FinCat:
        return self.x.base

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "x": self.x.to_json(base_ref="base"),
            "y": self.y.to_json(base_ref="base"),
            "chi": {
                f"({a},{b})": {f"({u},{v})": m for (u, v), m in block.items()}
                for (a, b), block in self.chi.items()
            },
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "EnvelopeObject":
        base = FinCat.from_json(data["base"])
        x = SetFunctor.from_json(data["x"], base)
        y = SetFunctor.from_json(data["y"], base)
        xs = {a: {str(e): e for e in x.sets[a]} for a in base.objects}
        ys = {b: {str(e): e for e in y.sets[b]} for b in base.objects}
        chi: Pairing = {}
        for a in base.objects:
            for b in base.objects:
                block = data["chi"].get(f"({a},{b})", {})
                chi[(a, b)] = {
                    (xs[a][str(u)], ys[b][str(v)]): block.get(f"({u},{v})")
                    for u in x.sets[a]
                    for v in y.sets[b]
                }
        return cls(x, y, chi)


def validate_envelope(e: EnvelopeObject) -> ValidationReport:
    if e.x.variance != CONTRA or e.y.variance != CO:
        return ValidationReport((Violation("variance", (e.x.variance, e.y.variance)),))
    if e.x.base != e.y.base:
        return ValidationReport((Violation("base", (), "x and y live on different categories"),))
    out = list(validate_functor(e.x).violations) + list(validate_functor(e.y).violations)
    if out:
        return ValidationReport(tuple(out))
    return validate_pairing(e.x, e.y, e.chi)


def embed_presheaf(x: SetFunctor, ceiling: int | None = None) -> EnvelopeObject:
    """``X ↦ (X, X^∨, ε_X)``."""
    rx = conjugate(x, ceiling)
    return EnvelopeObject(x, rx.output, counit_pairing(x, rx))


def embed_copresheaf(y: SetFunctor, ceiling: int | None = None) -> EnvelopeObject:
    """``Y ↦ (Y^∨, Y, ε^Y)``."""
    ry = conjugate(y, ceiling)
    return EnvelopeObject(ry.output, y, counit_pairing(y, ry))


def _compatible(e: EnvelopeObject, e2: EnvelopeObject, p: NatTransf, q: NatTransf) -> bool:
    c = e.base
    for a in c.objects:
        pa = p.component(a)
        for b in c.objects:
            qb = q.component(b)
            left, right = e.chi[(a, b)], e2.chi[(a, b)]
            for u in e.x.sets[a]:
                for v in e2.y.sets[b]:
                    if left[(u, qb[v])] != right[(pa[u], v)]:
                        return False
    return True


def envelope_homs(e: EnvelopeObject, e2: EnvelopeObject, ceiling: int | None = None) -> list[tuple[NatTransf, NatTransf]]:
    ceiling = DEFAULT_CEILING if ceiling is None else ceiling
    ps = nat_transformations(e.x, e2.x, ceiling)
    qs = nat_transformations(e2.y, e.y, ceiling)
    if len(ps) * len(qs) > ceiling:
        raise ResourceLimitExceeded(f"{len(ps)} × {len(qs)} candidate pairs exceed the ceiling", len(ps) * len(qs))
    return [(p, q) for p, q in itertools.product(ps, qs) if _compatible(e, e2, p, q)]


def envelope_isomorphism(e: EnvelopeObject, e2: EnvelopeObject, ceiling: int | None = None) -> tuple[NatTransf, NatTransf] | None:
    if is_isomorphic(e.x, e2.x, ceiling) is None or is_isomorphic(e.y, e2.y, ceiling) is None:
        return None
    ps = [p for p in nat_transformations(e.x, e2.x, ceiling) if p.is_bijective()]
    qs = [q for q in nat_transformations(e2.y, e.y, ceiling) if q.is_bijective()]
    for p, q in itertools.product(ps, qs):
        if _compatible(e, e2, p, q):
            return p, q
    return None


@dataclass(frozen=True)
class Transposes:
    phi: NatTransf  # X -> Y^∨
    psi: NatTransf  # Y -> X^∨
    round_trip: bool


def transposes(e: EnvelopeObject, ceiling: int | None = None) -> Transposes:
    rx, ry = conjugate(e.x, ceiling), conjugate(e.y, ceiling)
    phi = left_transpose(e.chi, ry, e.x)
    psi = right_transpose(e.chi, rx, e.y)
    if phi is None or psi is None:
        raise ValueError("pairing is not natural")
    trip = pairing_from_left(phi, ry) == e.chi and pairing_from_right(psi, rx) == e.chi
    return Transposes(phi, psi, trip)


@dataclass(frozen=True)
class InvariantReport:
    in_invariant_part: bool
    phi_iso: bool
    psi_iso: bool
    witness: str | None
    x_reflexive: bool
    y_iso_conjugate: bool

    @property
    def consistent(self) -> bool:
        """Lying in the invariant part forces ``X`` reflexive and ``Y ≅ X^∨``."""
        return not self.in_invariant_part or (self.x_reflexive and self.y_iso_conjugate)


def invariant_part_check(e: EnvelopeObject, ceiling: int | None = None) -> InvariantReport:
    t = transposes(e, ceiling)
    phi_iso, psi_iso = t.phi.is_bijective(), t.psi.is_bijective()
    witness = None
    for name, alpha, ok in (("phi", t.phi, phi_iso), ("psi", t.psi, psi_iso)):
        if not ok:
            for a, comp, n in zip(e.base.objects, alpha.comps, alpha.target.sizes):
                if len(set(comp)) != len(comp) or len(comp) != n:
                    witness = f"{name} at {a}"
                    break
            break
    refl = is_reflexive(e.x, ceiling).reflexive
    y_iso = is_isomorphic(e.y, conjugate(e.x, ceiling).output, ceiling) is not None
    return InvariantReport(phi_iso and psi_iso, phi_iso, psi_iso, witness, refl, y_iso)


def envelope_objects(
    xs: list[SetFunctor], ys: list[SetFunctor], ceiling: int | None = None, max_pairings: int = 10**5
) -> list[EnvelopeObject]:
    """Every triple on the given presheaves and copresheaves.

    Pairings ``X ⊠ Y -> Hom`` are in bijection with ``Nat(Y, X^∨)``, which is
    how they are listed.
    """
    out: list[EnvelopeObject] = []
    for x in xs:
        rx = conjugate(x, ceiling)
        for y in ys:
            for beta in nat_transformations(y, rx.output, ceiling):
                out.append(EnvelopeObject(x, y, pairing_from_right(beta, rx)))
                if len(out) > max_pairings:
                    raise ResourceLimitExceeded(f"more than {max_pairings} envelope objects", len(out))
    return out


def invariant_classes(objs: list[EnvelopeObject], ceiling: int | None = None) -> list[EnvelopeObject]:
    """Invariant-part objects, one per isomorphism class in the envelope."""
    reps: list[EnvelopeObject] = []
    for e in objs:
        if not invariant_part_check(e, ceiling).in_invariant_part:
            continue
        if not any(envelope_isomorphism(r, e, ceiling) is not None for r in reps):
            reps.append(e)
    return reps
