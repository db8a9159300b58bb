import numpy as np
import pytest

from newtonlab.blaschke.model.blaschkemodel import solve_b_for_multiplier
from newtonlab.errors import BadRadius
from newtonlab.surgery.model.dilatation import dilatation_profile, numerical_dilatation, refined_dilatation
from newtonlab.surgery.model.disk import DiskSurgeryModel, build_model_g, interpolate_h
from newtonlab.surgery.model.pipeline import disk_report, gluing_radius, holomorphic_deviation


class TestDiskModel:

    @classmethod
    def setup_class(cls):
        cls.blaschke = solve_b_for_multiplier(2, 0.5)
        cls.model = build_model_g(2, cls.blaschke.b, 0.8)

    def test_geometry(self):
        model = TestDiskModel.model
        assert model.inner == pytest.approx(0.64)
        assert abs(model.alpha - (2 - np.sqrt(3))) < 1e-10
        assert model.center - model.radius == pytest.approx((model.b - 0.64) / (1 - model.b * 0.64))
        assert model.center + model.radius == pytest.approx((0.64 + model.b) / (1 + model.b * 0.64))

    def test_pieces(self):
        model = TestDiskModel.model
        assert abs(model.g(0.9) - 0.81) < 1e-15
        assert abs(model(0.9j) + 0.81) < 1e-15
        z = 0.1 - 0.2j
        assert abs(model.g(z) - ((z + model.b) / (1 + model.b * z)) ** 2) < 1e-15
        values = model.g(np.array([0.9, 0.7, 0.1]))
        assert values.shape == (3,)

    def test_continuity(self):
        model = TestDiskModel.model
        assert model.continuity_max_jump() < 1e-9
        errors = model.boundary_errors()
        assert errors['outer'] < 1e-12
        assert errors['inner'] < 1e-12

    def test_fixed_point(self):
        model = TestDiskModel.model
        xi = model.fixed_point()
        assert abs(xi - model.alpha ** 2) < 1e-12
        assert abs(model.g(xi) - xi) < 1e-12

    def test_bad_radius(self):
        with pytest.raises(BadRadius):
            DiskSurgeryModel(2, TestDiskModel.blaschke.b, 1.0)
        with pytest.raises(BadRadius):
            build_model_g(2, TestDiskModel.blaschke.b, TestDiskModel.blaschke.alpha / 2)

    def test_gluing_radius(self):
        assert gluing_radius(0.3) == 0.8
        assert gluing_radius(0.9) == pytest.approx(0.95)


class TestDiskDilatation:

    @classmethod
    def setup_class(cls):
        cls.model = build_model_g(2, solve_b_for_multiplier(2, 0.5).b, 0.8)

    def test_holomorphic_pieces(self):
        assert holomorphic_deviation(TestDiskDilatation.model) < 1e-6

    def test_interpolation_is_quasiconformal(self):
        h = interpolate_h(2, TestDiskDilatation.model.b, 0.8)
        z = 0.72 * np.exp(1j * np.linspace(0.1, 6.2, 32))
        values, change = refined_dilatation(h, z)
        assert np.all(values >= 1)
        assert np.all(np.isfinite(values))
        assert change < 1e-2
        assert np.allclose(values, numerical_dilatation(h, z), rtol=1e-2)

    def test_profile_is_level_independent(self):
        profile = dilatation_profile(TestDiskDilatation.model, [0, 1, 2, 3])
        largest = [row['max'] for row in profile]
        assert largest[0] > 1
        assert max(largest) / min(largest) - 1 < 1e-2
        assert [row['m'] for row in profile] == [0, 1, 2, 3]

    def test_report(self):
        report = disk_report(2)
        assert report['r'] == 0.8
        assert abs(report['b'] - 0.2) < 1e-10
        assert abs(report['multiplier'] - 0.5) < 1e-10
        assert report['multiplier_at_one'] == pytest.approx(2 * 0.8 / 1.2)
        assert report['continuity_max_jump'] < 1e-9
        assert report['passed'] is True
