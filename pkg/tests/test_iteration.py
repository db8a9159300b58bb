import numpy as np
import pytest

from newtonlab import helpers
from newtonlab.errors import NotParabolic
from newtonlab.newton.model.newtonmap import build_newton_map
from newtonlab.orbits.model.iteration import OrbitRules, PetalGeometry, iterate, petal_directions
from newtonlab.orbits.model.orbitrecord import Outcome
from newtonlab.polyalg.complexpoly import ComplexPoly


class TestIterate:

    @classmethod
    def setup_class(cls):
        cls.quadratic = build_newton_map(ComplexPoly([-1, 0, 1]), ComplexPoly())
        cls.exponential = build_newton_map(ComplexPoly([0, 1]), ComplexPoly([0, 1]))
        # 0 -> 1 -> 0 is a superattracting 2-cycle
        cls.cyclic = build_newton_map(ComplexPoly([2, -2, 0, 1]), ComplexPoly())

    def test_converges(self):
        record = iterate(TestIterate.quadratic, 2)
        assert record.outcome == Outcome.converged_to(1)
        assert abs(record.points[-1] - 1) < 1e-9
        assert record.points[0] == 2
        assert len(record.points) == record.steps + 1

        record = iterate(TestIterate.quadratic, -0.5 + 3j)
        assert record.outcome == Outcome.converged_to(0)

    def test_fixed_start(self):
        record = iterate(TestIterate.quadratic, 1)
        assert record.outcome == Outcome.cycle(1, 0)
        assert record.steps == 0

        record = iterate(TestIterate.exponential, helpers.INFINITY)
        assert record.outcome == Outcome.cycle(1, 0)

    def test_petal(self):
        record = iterate(TestIterate.exponential, -3)
        assert record.outcome == Outcome.petal(0)
        assert record.outcome.is_attracted()
        assert record.points[-1].real < -4

    def test_cycle(self):
        record = iterate(TestIterate.cyclic, 0)
        assert record.outcome == Outcome.cycle(2, 0)
        assert record.points[:3] == [0, 1, 0]

    def test_undecided(self):
        # the imaginary axis is the Julia set
        record = iterate(TestIterate.quadratic, 0.5j, max_steps=30)
        assert record.outcome.kind == Outcome.UNDECIDED
        assert record.steps == 30

    def test_shared_rules(self):
        rules = OrbitRules(TestIterate.quadratic, eps_conv=1e-3)
        loose = iterate(TestIterate.quadratic, 3, rules=rules)
        tight = iterate(TestIterate.quadratic, 3)
        assert loose.outcome == tight.outcome
        assert loose.steps < tight.steps

    def test_to_dict(self):
        record = iterate(TestIterate.cyclic, 0)
        data = record.to_dict(include_points=True)
        assert data['outcome'] == {'kind': 'cycle', 'period': 2, 'preperiod': 0}
        assert data['points'][1] == 1
        assert 'points' not in record.to_dict()


class TestPetals:

    def test_exponential(self):
        directions = petal_directions(build_newton_map(ComplexPoly([0, 1]), ComplexPoly([0, 1])))
        assert len(directions) == 1
        assert abs(directions[0] + 1) < 1e-12

    def test_cubic_exponent(self):
        N = build_newton_map(ComplexPoly([-1, 0, 1]), ComplexPoly([0, 0, 0, 1]))
        directions = petal_directions(N)
        assert len(directions) == 3
        geometry = PetalGeometry.create_from_map(N)
        for direction in directions:
            assert abs(abs(direction) - 1) < 1e-12
            value = geometry.coefficient * direction ** 3
            assert value.real < 0
            assert abs(value.imag) < 1e-9 * abs(value)

    def test_not_parabolic(self):
        with pytest.raises(NotParabolic):
            petal_directions(build_newton_map(ComplexPoly([-1, 0, 1]), ComplexPoly()))
        assert PetalGeometry.create_from_map(build_newton_map(ComplexPoly([-1, 0, 1]), ComplexPoly())) is None

    def test_petal_index(self):
        geometry = PetalGeometry(1, 1)
        index = geometry.petal_index(np.array([-10, 10, -1, 0, helpers.INFINITY, -10 + 1j]))
        assert list(index) == [0, -1, -1, -1, -1, 0]
        assert geometry.petal_index(np.array([geometry.anchor(0)]))[0] == 0
