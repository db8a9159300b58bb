import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newtonlab import helpers
from newtonlab.errors import DegenerateInput, PoleHit
from newtonlab.polyalg.complexpoly import ComplexPoly
from newtonlab.polyalg.ratmap import RatMap, rat_derivative, rat_reduce


class TestRatMap:

    def test_zero_denominator(self):
        with pytest.raises(DegenerateInput):
            RatMap(ComplexPoly([1]), ComplexPoly())

    def test_degree(self):
        r = RatMap(ComplexPoly([1, 0, 1]), ComplexPoly([0, 2]))
        assert r.degree() == 2

    def test_reduce(self):
        r = RatMap(ComplexPoly([-1, 0, 1]), ComplexPoly([-1, 1]))
        reduced = rat_reduce(r)
        assert reduced.almost_equal(RatMap(ComplexPoly([1, 1]), ComplexPoly([1])))

    def test_reduce_coprime(self):
        r = RatMap(ComplexPoly([1, 0, 1]), ComplexPoly([0, 2]))
        assert rat_reduce(r) is r

    def test_reduce_zero_numerator(self):
        reduced = rat_reduce(RatMap(ComplexPoly(), ComplexPoly([1, 1])))
        assert reduced.num.is_zero()
        assert reduced.den.degree() == 0

    def test_reduce_constructed(self):
        rng = np.random.default_rng(2)
        for _ in range(5):
            a = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            n = ComplexPoly(rng.normal(size=3) + 1j * rng.normal(size=3))
            d = ComplexPoly(rng.normal(size=3) + 1j * rng.normal(size=3))
            factor = ComplexPoly([-a, 1])
            reduced = rat_reduce(RatMap(factor * n, factor * d))
            assert reduced.almost_equal(RatMap(n, d), 1e-10)

    def test_reduce_idempotent(self):
        r = RatMap(ComplexPoly.from_roots([1, 2, 0.5j]), ComplexPoly.from_roots([2, -1]))
        once = rat_reduce(r)
        twice = rat_reduce(once)
        assert twice.almost_equal(once)

    def test_derivative(self):
        r = RatMap(ComplexPoly([1, 0, 1]), ComplexPoly([0, 2]))
        expected = RatMap(ComplexPoly([-1, 0, 1]), ComplexPoly([0, 0, 2]))
        assert rat_derivative(r).almost_equal(expected)

        constant = RatMap(ComplexPoly([3]), ComplexPoly([2]))
        derivative = rat_derivative(constant)
        assert derivative.num.is_zero()

    def test_derivative_finite_difference(self):
        rng = np.random.default_rng(4)
        r = RatMap(ComplexPoly(rng.normal(size=4) + 1j * rng.normal(size=4)),
                   ComplexPoly.from_roots([2 + 2j, -2.5 + 0.5j], leading=1.5))
        derivative = rat_derivative(r)
        h = 1e-5
        for z in rng.uniform(-1, 1, size=5) + 1j * rng.uniform(-1, 1, size=5):
            central = (r.evaluate(z + h) - r.evaluate(z - h)) / (2 * h)
            assert abs(derivative.evaluate(z) - central) < 1e-6 * max(1.0, abs(central))
            assert abs(r.derivative_at(z) - central) < 1e-6 * max(1.0, abs(central))

    @settings(max_examples=30, deadline=None)
    @given(st.complex_numbers(min_magnitude=0.1, max_magnitude=3, allow_nan=False, allow_infinity=False))
    def test_derivative_at_matches(self, z):
        r = RatMap(ComplexPoly([1, 0, 1]), ComplexPoly([0, 2]))
        assert abs(r.derivative_at(z) - (z * z - 1) / (2 * z * z)) < 1e-12 * max(1.0, abs(1 / z) ** 2)

    def test_chart(self):
        r = RatMap(ComplexPoly([0, 0, 1]), ComplexPoly([1, 1]))
        assert r.chart.almost_equal(RatMap(ComplexPoly([0, 1, 1]), ComplexPoly([1])))

    def test_evaluate_sphere(self):
        r = RatMap(ComplexPoly([1, 0, 1]), ComplexPoly([0, 2]))
        assert helpers.is_infinity(r(0))
        assert helpers.is_infinity(r(helpers.INFINITY))
        assert abs(r(1) - 1) < 1e-15
        for z in [3 + 4j, 1e8 - 2e8j, -1e150j]:
            expected = (z * z + 1) / (2 * z) if abs(z) < 1e100 else z / 2
            assert abs(r(z) - expected) <= 1e-14 * abs(expected)
        values = r(np.array([1, 0, helpers.INFINITY, -1]))
        assert values.shape == (4,)
        assert helpers.is_infinity(values[1]) and helpers.is_infinity(values[2])

        flat = RatMap(ComplexPoly([1]), ComplexPoly([1, 0, 1]))
        assert flat(helpers.INFINITY) == 0
        assert helpers.is_infinity(flat(1j))

        with pytest.raises(PoleHit):
            flat.evaluate(1j)

    def test_taylor(self):
        geometric = RatMap(ComplexPoly([1]), ComplexPoly([1, -1]))
        assert np.allclose(geometric.taylor_at(0, 5), np.ones(6))

        r = RatMap(ComplexPoly([1, 0, 1]), ComplexPoly([0, 2]))
        series = r.taylor_at(1, 3)
        # N(1+h) = 1 + h^2/2 - h^3/2 + ...
        assert np.allclose(series, [1, 0, 0.5, -0.5])

        with pytest.raises(PoleHit):
            r.taylor_at(0, 2)

    def test_normalized(self):
        r = RatMap(ComplexPoly([2, 4]), ComplexPoly([0, 2]))
        normalized = r.normalized()
        assert normalized.den.leading() == 1
        assert abs(normalized(cmath.exp(0.3j)) - r(cmath.exp(0.3j))) < 1e-14
