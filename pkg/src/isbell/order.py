"""Finite posets and their Dedekind–MacNeille completion.

Subsets are handled as integer bitsets over the element order; a cut is a
down-set ``X`` with ``X = lower_bounds(upper_bounds(X))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .fincat import FinCat, from_relation


class PosetError(ValueError):
    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class FinPoset:
    elements: tuple[str, ...]
    leq: frozenset[tuple[str, str]]

    @classmethod
    def build(cls, elements: Iterable[str], leq: Iterable[Sequence[str]] = ()) -> "FinPoset":
        """Reflexive-transitive closure of ``leq``, rejected if not antisymmetric."""
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise PosetError("duplicate elements")
        known = set(elements)
        rel = {(a, a) for a in elements}
        for a, b in leq:
            if a not in known or b not in known:
                raise PosetError(f"unknown element in pair {(a, b)}", (a, b))
            rel.add((a, b))
        # Warshall closure
        for k in elements:
            for i in elements:
                if (i, k) in rel:
                    for j in elements:
                        if (k, j) in rel:
                            rel.add((i, j))
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise PosetError(f"{a} and {b} are distinct but each below the other", (a, b))
        return cls(elements, frozenset(rel))

    def le(self, a: str, b: str) -> bool:
        return (a, b) in self.leq

    @cached_property
    def pos(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.elements)}

    @cached_property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    @cached_property
    def down(self) -> tuple[int, ...]:
        return tuple(self.bits(b for b in self.elements if self.le(b, a)) for a in self.elements)

    @cached_property
    def up(self) -> tuple[int, ...]:
        return tuple(self.bits(b for b in self.elements if self.le(a, b)) for a in self.elements)

    def bits(self, s: Iterable[str]) -> int:
        out = 0
        for a in s:
            out |= 1 << self.pos[a]
        return out

    def members(self, bits: int) -> frozenset[str]:
        return frozenset(a for i, a in enumerate(self.elements) if bits >> i & 1)

    def key(self) -> tuple:
        return (self.elements, tuple(sorted(self.leq)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinPoset):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        covers = sorted((a, b) for a, b in self.leq if a != b)
        return f"FinPoset({list(self.elements)}, {covers})"

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "leq": [list(p) for p in sorted(self.leq) if p[0] != p[1]]}

    @classmethod
    def from_json(cls, data: Mapping) -> "FinPoset":
        return cls.build(data["elements"], [tuple(p) for p in data.get("leq", [])])


def chain(n: int) -> FinPoset:
    els = [str(i) for i in range(n)]
    return FinPoset.build(els, zip(els, els[1:]))


def antichain(n: int) -> FinPoset:
    return FinPoset.build([str(i) for i in range(n)])


def as_category(p: FinPoset) -> FinCat:
    return from_relation(p.elements, sorted(p.leq))


# --------------------------------------------------------------------------
# the Galois connection

def _upper_bits(p: FinPoset, s: int) -> int:
    out = p.full
    for i in range(len(p.elements)):
        if s >> i & 1:
            out &= p.up[i]
    return out


def _lower_bits(p: FinPoset, s: int) -> int:
    out = p.full
    for i in range(len(p.elements)):
        if s >> i & 1:
            out &= p.down[i]
    return out


def upper_bounds(p: FinPoset, s: Iterable[str]) -> frozenset[str]:
    return p.members(_upper_bits(p, p.bits(s)))


def lower_bounds(p: FinPoset, s: Iterable[str]) -> frozenset[str]:
    return p.members(_lower_bits(p, p.bits(s)))


def closure(p: FinPoset, s: Iterable[str]) -> frozenset[str]:
    return p.members(_lower_bits(p, _upper_bits(p, p.bits(s))))


# --------------------------------------------------------------------------
# Dedekind–MacNeille

def cut_name(p: FinPoset, cut: frozenset[str]) -> str:
    return "{" + ",".join(a for a in p.elements if a in cut) + "}"


@dataclass(frozen=True)
class DMCompletion:
    poset: FinPoset
    cuts: tuple[frozenset[str], ...]
    lattice: FinPoset
    embedding: Mapping[str, str]
    is_lattice: bool
    is_order_embedding: bool

    def to_json(self) -> dict:
        return {
            "cuts": [sorted(c, key=self.poset.elements.index) for c in self.cuts],
            "lattice": self.lattice.to_json(),
            "embedding": dict(self.embedding),
            "is_lattice": self.is_lattice,
            "is_order_embedding": self.is_order_embedding,
        }


def _cut_bits(p: FinPoset) -> list[int]:
    # cuts are exactly the intersections of principal down-sets (empty intersection = everything)
    found = {p.full}
    frontier = [p.full]
    while frontier:
        x = frontier.pop()
        for d in p.down:
            y = x & d
            if y not in found:
                found.add(y)
                frontier.append(y)
    return sorted(found, key=lambda b: (bin(b).count("1"), [not (b >> i & 1) for i in range(len(p.elements))]))


def is_lattice(q: FinPoset) -> bool:
    """Every pair has a least upper bound and a greatest lower bound, and ``q`` is nonempty."""
    if not q.elements:
        return False
    for a, b in itertools.combinations_with_replacement(range(len(q.elements)), 2):
        ups = q.up[a] & q.up[b]
        downs = q.down[a] & q.down[b]
        if not any(ups >> i & 1 and q.up[i] & ups == ups for i in range(len(q.elements))):
            return False
        if not any(downs >> i & 1 and q.down[i] & downs == downs for i in range(len(q.elements))):
            return False
    return True


def dm_completion(p: FinPoset) -> DMCompletion:
    bits = _cut_bits(p)
    cuts = tuple(p.members(b) for b in bits)
    names = [cut_name(p, c) for c in cuts]
    leq = [(names[i], names[j]) for i, x in enumerate(bits) for j, y in enumerate(bits) if x & y == x]
    lattice = FinPoset.build(names, leq)
    emb = {a: cut_name(p, p.members(p.down[i])) for i, a in enumerate(p.elements)}
    order_emb = all(
        p.le(a, b) == lattice.le(emb[a], emb[b]) for a in p.elements for b in p.elements
    )
    return DMCompletion(p, cuts, lattice, emb, is_lattice(lattice), order_emb)


@dataclass(frozen=True)
class DensityEntry:
    cut: frozenset[str]
    below: frozenset[str]  # elements whose principal cut lies under this cut
    above: frozenset[str]
    join_ok: bool
    meet_ok: bool


@dataclass(frozen=True)
class DensityCertificate:
    entries: tuple[DensityEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.join_ok and e.meet_ok for e in self.entries)

    def __bool__(self) -> bool:
        return self.ok


def density_certificate(p: FinPoset, dm: DMCompletion | None = None) -> DensityCertificate:
    """Each cut is the join of the embedded points below it and the meet of those above it."""
    dm = dm_completion(p) if dm is None else dm
    entries = []
    for cut in dm.cuts:
        cb = p.bits(cut)
        below = [i for i in range(len(p.elements)) if p.down[i] & cb == p.down[i]]
        above = [i for i in range(len(p.elements)) if p.down[i] & cb == cb]
        union = 0
        for i in below:
            union |= p.down[i]
        # join in the cut lattice = closure of the union
        join = _lower_bits(p, _upper_bits(p, union))
        meet = p.full
        for i in above:
            meet &= p.down[i]
        entries.append(
            DensityEntry(
                cut,
                frozenset(p.elements[i] for i in below),
                frozenset(p.elements[i] for i in above),
                join == cb,
                meet == cb,
            )
        )
    return DensityCertificate(tuple(entries))


# --------------------------------------------------------------------------
# agreement with the categorical engine

@dataclass(frozen=True)
class CrossCheck:
    classes: int
    cuts: int
    supports_are_cuts: bool
    homs_match: bool

    @property
    def ok(self) -> bool:
        return self.supports_are_cuts and self.homs_match and self.classes == self.cuts

    def __bool__(self) -> bool:
        return self.ok


def crosscheck_with_categorical(p: FinPoset, ceiling: int | None = None) -> CrossCheck:
    """Reflexive presheaves with values of size at most one, compared with the cut lattice."""
    from .completion import enumerate_reflexive, reflexive_completion_category
    from .setfun import supp

    c = as_category(p)
    report = enumerate_reflexive(c, 1, ceiling)
    dm = dm_completion(p)
    supports = {k.name: frozenset(supp(k.functor)) for k in report.classes}
    cuts = set(dm.cuts)
    supports_ok = set(supports.values()) == cuts and len(set(supports.values())) == len(supports)
    homs_ok = supports_ok
    if supports_ok:
        cat = reflexive_completion_category(report, ceiling).category
        for s, x in supports.items():
            for t, y in supports.items():
                if len(cat.homset(s, t)) != (1 if x <= y else 0):
                    homs_ok = False
    return CrossCheck(len(report.classes), len(dm.cuts), supports_ok, homs_ok)


# --------------------------------------------------------------------------
# all posets up to isomorphism

def _canonical(n: int, rel: frozenset[tuple[int, int]]) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        form = tuple(sorted((perm[a], perm[b]) for a, b in rel))
        if best is None or form < best:
            best = form
    return best


def all_posets(n: int) -> list[FinPoset]:
    """One poset per isomorphism class on ``n`` elements named ``"0".."n-1"``.

    Each poset on ``k + 1`` points arises from one on ``k`` points by adding a
    maximal element above a down-set, so the classes are grown level by level.
    """
    level: dict[tuple, frozenset] = {(): frozenset()}
    for k in range(n):
        nxt: dict[tuple, frozenset] = {}
        for rel in level.values():
            down = {a: frozenset(b for b in range(k) if (b, a) in rel) for a in range(k)}
            for mask in range(1 << k):
                s = {a for a in range(k) if mask >> a & 1}
                if any(not down[a] <= s for a in s):
                    continue
                new = set(rel) | {(a, k) for a in s} | {(k, k)}
                key = _canonical(k + 1, frozenset(new))
                if key not in nxt:
                    nxt[key] = frozenset(key)
        level = nxt
    out = []
    for key in sorted(level):
        els = [str(i) for i in range(n)]
        out.append(FinPoset.build(els, [(str(a), str(b)) for a, b in key]))
    return out
