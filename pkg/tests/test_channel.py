import numpy as np
import pytest

from newtonlab.channel.model.boettcher import local_boettcher
from newtonlab.channel.model.ray import (RAY_TOL, build_channel_diagram, count_accesses, mark, ray_invariance_error,
                                         ray_separation, trace_ray)
from newtonlab.errors import DoubleMark, MarkingInvalid, NonSuperattracting, NotFixed
from newtonlab.newton.model.newtonmap import build_newton_map
from newtonlab.orbits.model.iteration import iterate
from newtonlab.orbits.model.orbitrecord import Outcome
from newtonlab.polyalg.complexpoly import ComplexPoly
from newtonlab.polyalg.ratmap import RatMap


def root_index(N, point):
    return int(np.argmin([abs(root - point) for root in N.root_points()]))


def power_minus_one(d):
    coeffs = [0] * (d + 1)
    coeffs[0], coeffs[d] = -1, 1
    return build_newton_map(ComplexPoly(coeffs), ComplexPoly())


class TestBoettcher:

    @classmethod
    def setup_class(cls):
        cls.quadratic = build_newton_map(ComplexPoly([-1, 0, 1]), ComplexPoly())

    def test_functional_equation(self):
        chart = local_boettcher(TestBoettcher.quadratic, 1)
        assert chart.degree == 2
        assert abs(chart.scale - 0.5) < 1e-12
        assert chart(1) == 0

        radii = np.linspace(0.01, 0.099, 10)
        angles = np.linspace(0, 2 * np.pi, 12, endpoint=False)
        z = 1 + (radii[:, None] * np.exp(1j * angles[None, :])).ravel()
        assert chart.residual(z) < 1e-10

    def test_model_identity(self):
        square = RatMap(ComplexPoly([0, 0, 1]), ComplexPoly([1]))
        chart = local_boettcher(square, 0)
        for z in [0.3 + 0.1j, -0.2j, 1e-3]:
            assert abs(chart(z) - z) < 1e-15

    def test_inverse(self):
        chart = local_boettcher(TestBoettcher.quadratic, 1)
        for t in [0.2, 0.1j, -0.05 + 0.05j]:
            assert abs(chart(chart.inverse(t)) - t) < 1e-12

    def test_errors(self):
        double = build_newton_map(ComplexPoly([-1, -1, 1, 1]), ComplexPoly())
        with pytest.raises(NonSuperattracting):
            local_boettcher(double, -1)
        with pytest.raises(NotFixed):
            local_boettcher(TestBoettcher.quadratic, 0.5)


class TestRays:

    @classmethod
    def setup_class(cls):
        cls.quadratic = build_newton_map(ComplexPoly([-1, 0, 1]), ComplexPoly())
        cls.cubic = power_minus_one(3)
        cls.double_critical = build_newton_map(ComplexPoly([0, -1, 0, 1]), ComplexPoly())

    def test_cubic_ray(self):
        basin = root_index(TestRays.cubic, 1)
        ray = trace_ray(TestRays.cubic, basin, 1)
        assert ray.escaped is True
        assert abs(ray.endpoint) > 1e3
        assert np.all(np.abs(ray.polyline.imag) < 1e-6 * np.maximum(np.abs(ray.polyline), 1))
        assert np.all(ray.polyline.real > 1 - 1e-6)
        assert ray_invariance_error(TestRays.cubic, ray) < RAY_TOL
        for z in ray.polyline[::25]:
            assert iterate(TestRays.cubic, z).outcome == Outcome.converged_to(basin)

        with pytest.raises(MarkingInvalid):
            trace_ray(TestRays.cubic, basin, 2)

    def test_quadratic_symmetry(self):
        right = trace_ray(TestRays.quadratic, root_index(TestRays.quadratic, 1), 1)
        left = trace_ray(TestRays.quadratic, root_index(TestRays.quadratic, -1), 1)
        assert np.all(right.polyline.real > 0)
        assert np.all(left.polyline.real < 0)
        assert len(left.polyline) == len(right.polyline)
        assert np.allclose(left.polyline, -right.polyline, rtol=1e-9, atol=1e-12)

    def test_double_critical_rays(self):
        N = TestRays.double_critical
        basin = root_index(N, 0)
        assert local_boettcher(N, 0).degree == 3

        rays = [trace_ray(N, basin, 1), trace_ray(N, basin, 2)]
        upper, lower = sorted(rays, key=lambda ray: -ray.endpoint.imag)
        for ray in rays:
            assert ray.escaped is True
            assert np.all(np.abs(ray.polyline.real) < 1e-6 * np.maximum(np.abs(ray.polyline), 1))
            assert ray_invariance_error(N, ray) < RAY_TOL
        assert np.all(upper.polyline.imag > 0)
        assert np.all(lower.polyline.imag < 0)
        assert ray_separation(upper, lower, 1e-3) > 1e-3

    def test_power_family(self):
        for d in [3, 4, 5]:
            N = power_minus_one(d)
            diagram = build_channel_diagram(N, workers=1)
            assert len(diagram.rays) == d
            assert all(count == 1 for count in diagram.access_counts.values())
            for ray in diagram.rays:
                root = N.roots[ray.basin][0]
                assert ray.escaped is True
                assert ray_invariance_error(N, ray) < RAY_TOL
                assert abs(ray.direction() - root) < 1e-6

    def test_count_accesses(self):
        cubic = TestRays.cubic
        for basin in range(3):
            assert count_accesses(cubic, basin)['count'] == 1

        data = count_accesses(TestRays.double_critical, root_index(TestRays.double_critical, 0))
        assert data['count'] == 2

        exponential = build_newton_map(ComplexPoly([0, 1]), ComplexPoly([0, 1]))
        data = count_accesses(exponential, Outcome.petal(0))
        assert data['count'] == 1
        assert abs(data['critical_points'][0] + 2) < 1e-9
        assert abs(data['dynamical']['direction'] + 1) < 1e-2

    def test_mark(self):
        diagram = build_channel_diagram(TestRays.cubic, workers=1)
        assert mark(diagram, []).n_marked == 0

        marked = mark(diagram, [(0, 1), (1, 1), (2, 1)])
        assert marked.n_marked == 3
        assert diagram.n_marked == 0

        with pytest.raises(DoubleMark):
            mark(diagram, [(0, 1), (0, 1)])
        with pytest.raises(MarkingInvalid):
            mark(diagram, [(0, 2)])

        rows = marked.rays[0].to_csv().splitlines()
        assert rows[0] == 'basin,j,re,im'
        assert len(rows) == len(marked.rays[0].polyline) + 1
