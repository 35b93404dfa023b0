import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from powerfree.errors import DomainError, EmptyModelError, ModelTooLargeError, ShapeError
from powerfree.ratefn import (RateVector, SanovModel, exact_count_distribution, exact_region_probability,
                              deviation_region_contains, rate_function, scaling_frequencies,
                              simulate_omega_model)

positive = st.floats(0.01, 5.0)
nonneg = st.floats(0.0, 5.0)


def _normalised(values):
    total = math.fsum(values)
    return {i: v / total for i, v in enumerate(values)}


def test_rate_examples():
    assert rate_function({"e": 1 / 3}, {"e": 1.0}) == pytest.approx(math.log(3), abs=1e-15)
    assert rate_function({"a": 0.0, "b": 1.0}, {"a": 0.5, "b": 1.0}) == math.inf
    assert rate_function({"a": 0.0, "b": 1.0}, {"a": 0.0, "b": 1.0}) == 0.0


def test_rate_shape_error():
    with pytest.raises(ShapeError):
        rate_function({"a": 1.0}, {"b": 1.0})


def test_rate_vector_validation():
    with pytest.raises(DomainError):
        RateVector(("a",), (-1.0,))
    with pytest.raises(DomainError):
        RateVector(("a",), (math.inf,))


@given(st.lists(positive, min_size=1, max_size=6))
def test_rate_zero_at_centre(c):
    # I_c(c) = 1 - sum(c): zero for probability vectors
    cv = _normalised(c)
    assert abs(rate_function(cv, cv)) < 1e-12


@given(st.lists(st.tuples(positive, nonneg), min_size=1, max_size=6))
def test_rate_nonnegative(pairs):
    c = _normalised([a for a, _ in pairs])
    x = {i: b for i, (_, b) in enumerate(pairs)}
    assert rate_function(c, x) >= -1e-12


@given(st.lists(st.tuples(positive, nonneg, nonneg), min_size=1, max_size=5), st.floats(0, 1))
def test_rate_convex(triples, t):
    c = {i: a for i, (a, _, _) in enumerate(triples)}
    x = {i: b for i, (_, b, _) in enumerate(triples)}
    y = {i: e for i, (_, _, e) in enumerate(triples)}
    m = {i: t * x[i] + (1 - t) * y[i] for i in x}
    assert rate_function(c, m) <= t * rate_function(c, x) + (1 - t) * rate_function(c, y) + 1e-12


def test_deviation_region_examples():
    assert deviation_region_contains({"a": 1}, {"a": 2}, {"a": 3})
    assert not deviation_region_contains({"a": 1}, {"a": 2}, {"a": 2})
    assert deviation_region_contains({"a": 1}, {"a": 1}, {"a": 0.2})
    with pytest.raises(ShapeError):
        deviation_region_contains({"a": 1}, {"b": 1}, {"a": 1})


@given(st.lists(st.tuples(positive, positive, positive), min_size=1, max_size=5))
def test_region_contains_far_points(triples):
    c = {i: a for i, (a, _, _) in enumerate(triples)}
    x = {i: b for i, (_, b, _) in enumerate(triples)}
    # push y further from c than x in every coordinate
    y = {i: x[i] + (x[i] - c[i]) * s for i, (_, _, s) in enumerate(triples)}
    assume(all(v >= 0 for v in y.values()))
    assert deviation_region_contains(c, x, y)


def test_model_validation():
    with pytest.raises(DomainError):
        SanovModel.single_class([2], s=3)
    with pytest.raises(DomainError):
        SanovModel((2, 2), {2: "e"}, {"e": 1})
    with pytest.raises(EmptyModelError):
        simulate_omega_model(SanovModel((), {}, {"e": 1}), 10, 0)


def test_exact_examples():
    two = SanovModel.single_class([2, 3])
    assert exact_region_probability(two, lambda v: v["e"] == 2) == Fraction(1, 6)
    assert exact_region_probability(two, lambda v: True) == 1
    three = SanovModel.single_class([2, 3, 5])
    assert exact_region_probability(three, lambda v: v["e"] >= 1) == Fraction(11, 15)


def test_exact_size_limit():
    primes = [p for p in range(2, 200) if all(p % q for q in range(2, p))][:21]
    with pytest.raises(ModelTooLargeError):
        exact_count_distribution(SanovModel.single_class(primes))


@given(st.lists(st.sampled_from([2, 3, 5, 7, 11, 13, 17, 19]), min_size=1, max_size=8, unique=True),
       st.integers(0, 2))
@settings(max_examples=30)
def test_exact_distribution_sums_to_one(primes, s):
    m = SanovModel.single_class(primes, s=Fraction(s, 2))
    dist = exact_count_distribution(m)
    assert sum(dist.values()) == 1
    assert sum(v[0] * w for v, w in dist.items()) == sum(m.probabilities())


@given(st.lists(st.sampled_from([2, 3, 5, 7, 11, 13, 17, 19, 23, 29]), min_size=1, max_size=9, unique=True))
@settings(max_examples=25, deadline=None)
def test_exact_distribution_matches_subset_enumeration(primes):
    model = SanovModel(tuple(primes), {p: p % 3 for p in primes}, {0: 1, 1: 1, 2: Fraction(3, 2)})
    labels = model.labels
    brute = {}
    for fired in itertools.product((0, 1), repeat=len(primes)):
        w = Fraction(1)
        vec = [0] * len(labels)
        for p, q, b in zip(primes, model.probabilities(), fired):
            w *= q if b else 1 - q
            vec[labels.index(model.class_of[p])] += b
        brute[tuple(vec)] = brute.get(tuple(vec), Fraction(0)) + w
    got = exact_count_distribution(model)
    assert {v: w for v, w in got.items() if w} == {v: w for v, w in brute.items() if w}


def test_simulation_zero_model():
    m = SanovModel.single_class([2, 3, 5], s=0)
    res = simulate_omega_model(m, 500, 1)
    assert res.frequencies() == {(0,): 1.0}


def test_simulation_two_primes():
    m = SanovModel.single_class([2, 3])
    res = simulate_omega_model(m, 60000, 11)
    se = math.sqrt((1 / 6) * (5 / 6) / 60000)
    assert abs(res.frequency(lambda v: v["e"] == 2) - 1 / 6) < 3 * se


@given(st.integers(0, 2 ** 64 - 1))
@settings(max_examples=10, deadline=None)
def test_simulation_deterministic(seed):
    m = SanovModel((2, 3, 5, 7), {2: "a", 3: "b", 5: "a", 7: "b"}, {"a": 1, "b": 1})
    assert simulate_omega_model(m, 300, seed).counts == simulate_omega_model(m, 300, seed).counts


def test_simulation_independent_of_worker_count():
    m = SanovModel.single_class([2, 3, 5, 7, 11])
    a = simulate_omega_model(m, 3000, 5, workers=1)
    b = simulate_omega_model(m, 3000, 5, workers=3)
    assert a.counts == b.counts


def test_scaling_diagnostic_shape():
    rows = scaling_frequencies({1: 0.9, 3: 0.9}, [1.5, 2.0], trials=200, seed=3)
    assert len(rows) == 2
    for row in rows:
        assert 0 <= row["frequency"] <= 1
