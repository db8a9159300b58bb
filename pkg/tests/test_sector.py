import numpy as np
import pytest
from hypothesis import given
from hypothesis.strategies import floats

from newtonlab.errors import BranchCut, OutOfDomain
from newtonlab.surgery.model.dilatation import dilatation_profile, numerical_dilatation
from newtonlab.surgery.model.sector import SectorModel, measure_rm, model_conjugacy, omega_map, parabolic_model


class TestOmega:

    def test_values(self):
        assert omega_map(2.0, 0.1) == pytest.approx(-0.301030, abs=1e-6)
        assert omega_map(2.0, 0.2) == pytest.approx(-0.430677, abs=1e-6)
        assert parabolic_model(omega_map(2.0, 0.1)) == pytest.approx(omega_map(2.0, 0.2), abs=1e-12)

    @given(floats(1e-3, 0.4), floats(-3.0, 3.0))
    def test_conjugacy(self, modulus, angle):
        z = modulus * np.exp(1j * angle)
        expected = omega_map(2.0, 2.0 * z)
        assert abs(parabolic_model(omega_map(2.0, z)) - expected) < 1e-12 * max(1.0, abs(expected))

    def test_branch_cut(self):
        for z in [0, 1, -0.5]:
            with pytest.raises(BranchCut):
                omega_map(2.0, z)

    def test_model_conjugacy(self):
        for lam in (1.5, 2.0, 3.0):
            assert model_conjugacy(lam) < 1e-12
        assert model_conjugacy(2.0, np.pi / 2, 10, samples=10) < 1e-12

    def test_rm(self):
        rows = measure_rm(2.0, np.pi / 4, [5, 10, 20, 40, 80])
        for row in rows:
            assert 0.9 < row['m_r_m'] < 1.0
        assert rows[-1]['r_m'] < rows[0]['r_m']


class TestSector:

    @classmethod
    def setup_class(cls):
        cls.sector = SectorModel(2.0)

    def test_bad_parameters(self):
        with pytest.raises(OutOfDomain):
            SectorModel(1.0)
        with pytest.raises(OutOfDomain):
            SectorModel(2.0, np.pi)

    def test_contains(self):
        sector = TestSector.sector
        assert bool(sector.contains(-0.1)) is True
        assert bool(sector.contains(0.1)) is False
        assert bool(sector.contains(0.1j)) is True
        with pytest.raises(OutOfDomain):
            sector.chi(0.1)

    def test_edges(self):
        sector = TestSector.sector
        r = 2.0 ** -7.5
        upper = sector.chi(r * np.exp(1j * (np.pi / 4 + 1e-12)))
        lower = sector.chi(r * np.exp(-1j * (np.pi / 4 + 1e-12)))
        assert abs(upper - omega_map(2.0, r * np.exp(1j * np.pi / 4))) < 1e-9
        assert abs(lower - omega_map(2.0, r * np.exp(-1j * np.pi / 4))) < 1e-9

    def test_grid(self):
        sector = TestSector.sector
        points, areas = sector.quadrilateral_grid(6, 8, 24)
        assert points.shape == areas.shape == (8 * 24,)
        assert np.all(sector.contains(points))
        inner, outer = sector.quadrilateral_bounds(6)
        assert np.all((np.abs(points) > inner) & (np.abs(points) < outer))
        assert np.sum(areas) == pytest.approx(0.5 * (outer ** 2 - inner ** 2) * 1.5 * np.pi)

    def test_dilatation_grows_linearly(self):
        profile = dilatation_profile(TestSector.sector, [20, 40, 80])
        largest = [row['max'] for row in profile]
        assert all(value > 1 for value in largest)
        assert 1.5 <= largest[1] / largest[0] <= 2.5
        assert 1.5 <= largest[2] / largest[1] <= 2.5
        # K is about (4/3) |log |z|| for theta = pi/4
        assert largest[1] == pytest.approx(4 / 3 * 41 * np.log(2), rel=0.1)

    def test_chi_is_smooth(self):
        z = 2.0 ** -10.5 * np.exp(1j * np.linspace(1.0, 5.2, 9))
        values = numerical_dilatation(TestSector.sector.chi, z)
        assert np.max(values) / np.min(values) < 1.1
