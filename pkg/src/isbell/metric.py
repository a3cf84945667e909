"""Conjugacy over ``[0, ∞]``: finite generalized metric spaces and cost vectors.

Values are exact: a :class:`fractions.Fraction` or the singleton :data:`INF`.
Truncated subtraction ``x ∸ y`` is the internal hom, the least ``z`` with
``z + y ≥ x``; in particular ``∞ ∸ ∞ = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .fincat import ValidationReport, Violation

CONTRA = "contra"
CO = "co"


class _Infinity:
    _instance = None

    def __new__(cls) -> "_Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __hash__(self) -> int:
        return hash("inf")

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return other is self

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __ge__(self, other: object) -> bool:
        return True

    def __add__(self, other: object) -> "_Infinity":
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
Ext = Union[Fraction, _Infinity]


class MetricError(ValueError):
    pass


def ext(v: object) -> Ext:
    """Parse ``"inf"``, ``"3/2"``, ``"0.25"``, ints or Fractions; negative values are rejected."""
    if v is INF:
        return INF
    if isinstance(v, str) and v.strip().lower() in ("inf", "infinity", "∞"):
        return INF
    if isinstance(v, float):
        raise MetricError("floating point values are not accepted; use a rational string")
    try:
        q = Fraction(v)
    except (TypeError, ValueError) as err:
        raise MetricError(f"not a rational: {v!r}") from err
    if q < 0:
        raise MetricError(f"negative value {v!r}")
    return q


def fmt(x: Ext) -> str:
    return "inf" if x is INF else str(x)


def add(x: Ext, y: Ext) -> Ext:
    return INF if x is INF or y is INF else x + y


def tsub(x: Ext, y: Ext) -> Ext:
    """``x ∸ y``."""
    if y is INF:
        return Fraction(0)
    if x is INF:
        return INF
    return max(x - y, Fraction(0))


def emax(xs: Iterable[Ext]) -> Ext:
    out: Ext = Fraction(0)
    for x in xs:
        if x > out:
            out = x
    return out


def emin(xs: Iterable[Ext]) -> Ext:
    out: Ext = INF
    for x in xs:
        if x < out:
            out = x
    return out


@dataclass(frozen=True)
class GenMetric:
    points: tuple[str, ...]
    d: tuple[tuple[Ext, ...], ...]
    symmetric: bool = False

    @classmethod
    def build(cls, points: Sequence[str], d: Sequence[Sequence[object]], symmetric: bool = False) -> "GenMetric":
        return cls(tuple(points), tuple(tuple(ext(v) for v in row) for row in d), symmetric)

    def dist(self, a: str, b: str) -> Ext:
        return self.d[self.points.index(a)][self.points.index(b)]

    def __len__(self) -> int:
        return len(self.points)

    def to_json(self) -> dict:
        return {
            "points": list(self.points),
            "d": [[fmt(v) for v in row] for row in self.d],
            "symmetric": self.symmetric,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "GenMetric":
        return cls.build(data["points"], data["d"], bool(data.get("symmetric", False)))


def two_point(D: object) -> GenMetric:
    D = ext(D)
    return GenMetric(("0", "D"), ((Fraction(0), D), (D, Fraction(0))), True)


@dataclass(frozen=True)
class CostVector:
    space: GenMetric
    variance: str
    f: tuple[Ext, ...]

    @classmethod
    def build(cls, space: GenMetric, values: Sequence[object] | Mapping[str, object], variance: str = CONTRA) -> "CostVector":
        if isinstance(values, Mapping):
            values = [values[p] for p in space.points]
        return cls(space, variance, tuple(ext(v) for v in values))

    def __getitem__(self, a: str) -> Ext:
        return self.f[self.space.points.index(a)]

    def to_json(self) -> dict:
        return {"variance": self.variance, "f": {p: fmt(v) for p, v in zip(self.space.points, self.f)}}

    @classmethod
    def from_json(cls, data: Mapping, space: GenMetric) -> "CostVector":
        return cls.build(space, data["f"], data.get("variance", CONTRA))


def validate_metric(m: GenMetric) -> ValidationReport:
    out: list[Violation] = []
    n = len(m.points)
    if len(m.d) != n or any(len(row) != n for row in m.d):
        return ValidationReport((Violation("shape", (n,), "distance matrix is not square"),))
    for i in range(n):
        if m.d[i][i] != 0:
            out.append(Violation("zero-diagonal", (m.points[i],)))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if m.d[i][k] > add(m.d[i][j], m.d[j][k]):
                    out.append(Violation("triangle", (m.points[i], m.points[j], m.points[k])))
            if m.symmetric and m.d[i][j] != m.d[j][i]:
                out.append(Violation("symmetry", (m.points[i], m.points[j])))
    return ValidationReport(tuple(out))


def validate_cost(f: CostVector) -> ValidationReport:
    m = f.space
    out: list[Violation] = []
    if f.variance not in (CONTRA, CO):
        return ValidationReport((Violation("variance", (f.variance,)),))
    if len(f.f) != len(m.points):
        return ValidationReport((Violation("shape", (len(f.f),)),))
    for i, a in enumerate(m.points):
        for j, b in enumerate(m.points):
            # contravariant: f(a) ∸ f(b) ≤ d(a, b); covariant: f(b) ∸ f(a) ≤ d(a, b)
            lhs = tsub(f.f[i], f.f[j]) if f.variance == CONTRA else tsub(f.f[j], f.f[i])
            if lhs > m.d[i][j]:
                out.append(Violation("distance-decreasing", (a, b)))
    return ValidationReport(tuple(out))


def yoneda_cost(m: GenMetric, a: str, variance: str = CONTRA) -> CostVector:
    """``d(-, a)`` for presheaves, ``d(a, -)`` for copresheaves."""
    i = m.points.index(a)
    if variance == CONTRA:
        return CostVector(m, CONTRA, tuple(row[i] for row in m.d))
    return CostVector(m, CO, m.d[i])


def conj_cost(f: CostVector) -> CostVector:
    m, n = f.space, len(f.space.points)
    if f.variance == CONTRA:
        g = tuple(emax(tsub(m.d[b][a], f.f[b]) for b in range(n)) for a in range(n))
        return CostVector(m, CO, g)
    g = tuple(emax(tsub(m.d[a][b], f.f[b]) for b in range(n)) for a in range(n))
    return CostVector(m, CONTRA, g)


class InconsistencyError(ArithmeticError):
    pass


def double_conj_direct(f: CostVector) -> CostVector:
    """``max_b min_a (d(c,b) ∸ (d(a,b) ∸ f(a)))`` evaluated as written."""
    if f.variance != CONTRA:
        raise MetricError("expected a contravariant cost vector")
    m, n = f.space, len(f.space.points)
    return CostVector(
        m,
        CONTRA,
        tuple(
            emax(emin(tsub(m.d[c][b], tsub(m.d[a][b], f.f[a])) for a in range(n)) for b in range(n))
            for c in range(n)
        ),
    )


def double_conj_cost(f: CostVector) -> CostVector:
    """Computed twice, by the closed formula and by conjugating twice; the two must agree."""
    direct = double_conj_direct(f)
    twice = conj_cost(conj_cost(f))
    if direct.f != twice.f:
        raise InconsistencyError(f"double conjugate disagrees: {direct.f} vs {twice.f}")
    return twice


def is_isbell_point(f: CostVector) -> bool:
    return double_conj_cost(f).f == f.f


def is_tight_span_point(f: CostVector) -> bool:
    """On a symmetric space, ``f`` equals its conjugate read as a vector."""
    if not f.space.symmetric:
        raise MetricError("tight span membership needs a symmetric space")
    return conj_cost(f).f == f.f


def completion_distance(f: CostVector, g: CostVector) -> Ext:
    """``max_a (g(a) ∸ f(a))``."""
    if f.space != g.space or f.variance != g.variance:
        raise MetricError("vectors on different spaces or of different variance")
    return emax(tsub(y, x) for x, y in zip(f.f, g.f))


def leq_pointwise(f: CostVector, g: CostVector) -> bool:
    return all(x <= y for x, y in zip(f.f, g.f))
