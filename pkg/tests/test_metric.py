from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from isbell.metric import (
    INF,
    CostVector,
    GenMetric,
    MetricError,
    completion_distance,
    conj_cost,
    double_conj_cost,
    double_conj_direct,
    emax,
    emin,
    ext,
    fmt,
    is_isbell_point,
    is_tight_span_point,
    leq_pointwise,
    tsub,
    two_point,
    validate_cost,
    validate_metric,
    yoneda_cost,
)

import oracles

values = st.one_of(
    st.fractions(min_value=0, max_value=4, max_denominator=4),
    st.just(INF),
)


@st.composite
def metrics(draw, symmetric=False):
    n = draw(st.integers(1, 4))
    raw = [[Fraction(0) if i == j else draw(values) for j in range(n)] for i in range(n)]
    if symmetric:
        raw = [[min(raw[i][j], raw[j][i]) for j in range(n)] for i in range(n)]
    d = oracles.shortest_paths(raw)
    return GenMetric([f"p{i}" for i in range(n)], d, symmetric)


@st.composite
def costs(draw, symmetric=False):
    m = draw(metrics(symmetric))
    g = [draw(values) for _ in m.points]
    n = len(m.points)
    # the largest distance-decreasing vector below g
    from isbell.metric import add

    f = [emin(add(g[b], m.d[a][b]) for b in range(n)) for a in range(n)]
    return CostVector.build(m, f)


def test_extended_arithmetic():
    assert tsub(INF, INF) == 0
    assert tsub(INF, Fraction(3)) is INF
    assert tsub(Fraction(1), INF) == 0
    assert tsub(Fraction(1), Fraction(3)) == 0
    assert emax([]) == 0 and emin([]) is INF
    assert ext("inf") is INF and ext("3/2") == Fraction(3, 2) and ext("0.25") == Fraction(1, 4)
    assert fmt(INF) == "inf" and fmt(Fraction(1, 2)) == "1/2"
    with pytest.raises(MetricError):
        ext(0.5)
    with pytest.raises(MetricError):
        ext(-1)


def test_validation():
    assert validate_metric(two_point(1)).ok
    bad = GenMetric.build("abc", [[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    assert "triangle" in validate_metric(bad).laws()
    assert "zero-diagonal" in validate_metric(GenMetric.build("a", [[1]])).laws()
    m = two_point(1)
    assert not validate_cost(CostVector.build(m, [0, 2])).ok
    assert validate_cost(CostVector.build(m, [0, 1])).ok


def test_two_point_values():
    m = two_point(1)
    assert is_isbell_point(CostVector.build(m, ["3/10", "4/5"]))
    assert double_conj_cost(CostVector.build(m, [5, 5])).f == (1, 1)
    assert double_conj_cost(CostVector.build(m, [2, 1])).f == (1, 1)
    assert conj_cost(CostVector.build(m, [0, 0])).f == (1, 1)
    assert is_tight_span_point(CostVector.build(m, ["1/2", "1/2"]))
    assert is_tight_span_point(CostVector.build(m, [0, 1]))
    assert not is_tight_span_point(CostVector.build(m, [0, 0]))
    assert completion_distance(yoneda_cost(m, "0"), yoneda_cost(m, "D")) == 1


def test_tight_span_needs_symmetry():
    m = GenMetric.build("ab", [[0, 1], [2, 0]])
    with pytest.raises(MetricError):
        is_tight_span_point(yoneda_cost(m, "a"))


@given(metrics())
def test_random_metrics_are_valid(m):
    assert validate_metric(m).ok


@given(costs())
def test_conjugate_matches_definition(f):
    g = conj_cost(f)
    assert list(g.f) == oracles.conj_vector(f.space.d, f.f)
    assert validate_cost(g).ok


@given(costs())
def test_double_conjugate_lies_below(f):
    assert validate_cost(f).ok
    ff = double_conj_cost(f)
    assert double_conj_direct(f).f == ff.f
    assert leq_pointwise(ff, f)


@given(costs())
def test_triple_conjugate_is_single(f):
    g = conj_cost(f)
    assert conj_cost(conj_cost(g)).f == g.f
    assert is_isbell_point(double_conj_cost(f))


@given(metrics(), st.data())
def test_yoneda_is_an_isometry(m, data):
    a = data.draw(st.sampled_from(m.points))
    b = data.draw(st.sampled_from(m.points))
    assert completion_distance(yoneda_cost(m, a), yoneda_cost(m, b)) == m.dist(a, b)
    assert is_isbell_point(yoneda_cost(m, a))


@given(costs(symmetric=True))
def test_tight_span_inside_isbell_completion(f):
    if is_tight_span_point(f):
        assert is_isbell_point(f)


@given(metrics(symmetric=True), st.data())
def test_symmetric_yoneda_points_are_tight(m, data):
    a = data.draw(st.sampled_from(m.points))
    assert is_tight_span_point(yoneda_cost(m, a))


def test_json_round_trip():
    m = GenMetric.build("ab", [[0, "inf"], ["1/3", 0]])
    assert GenMetric.from_json(m.to_json()) == m
    f = CostVector.build(m, {"a": "inf", "b": 0})
    assert CostVector.from_json(f.to_json(), m) == f


@pytest.mark.parametrize("D", [1, 2, "1/2"])
def test_distances_between_tight_span_points_are_symmetric(D):
    m = two_point(D)
    grid = [Fraction(k, 4) for k in range(9)]
    tight = [f for f in (CostVector.build(m, [a, b]) for a in grid for b in grid)
             if validate_cost(f).ok and is_tight_span_point(f)]
    assert len(tight) > 2
    for f in tight:
        for g in tight:
            assert completion_distance(f, g) == completion_distance(g, f)


@given(metrics(symmetric=True), st.data())
def test_symmetric_distances_among_yoneda_points(m, data):
    a = data.draw(st.sampled_from(m.points))
    b = data.draw(st.sampled_from(m.points))
    fa, fb = yoneda_cost(m, a), yoneda_cost(m, b)
    assert completion_distance(fa, fb) == completion_distance(fb, fa)
