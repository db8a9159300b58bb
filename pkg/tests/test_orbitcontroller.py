from unittest import mock

from newtonlab.errors import Ambiguous, NotParabolic
from newtonlab.frontend.raster import Viewport
from newtonlab.newton.model.newtonmap import build_newton_map
from newtonlab.orbits.controller import OrbitController
from newtonlab.orbits.model.orbitrecord import Outcome
from newtonlab.polyalg.complexpoly import ComplexPoly


class TestOrbitController:
    MODEL_BASE = 'newtonlab.orbits.model'

    @classmethod
    def setup_class(cls):
        cls.quadratic = build_newton_map(ComplexPoly([-1, 0, 1]), ComplexPoly())
        cls.exponential = build_newton_map(ComplexPoly([0, 1]), ComplexPoly([0, 1]))

    def test_run_orbit(self):
        success, data = OrbitController.run_orbit(TestOrbitController.quadratic, 2)
        assert success is True
        assert data.outcome == Outcome.converged_to(1)

    def test_classify(self):
        success, data = OrbitController.classify(TestOrbitController.quadratic, Viewport.square(2), (4, 4), workers=1)
        assert success is True
        assert data.labels.shape == (4, 4)

    def test_find_center(self):
        succeed = True

        # noinspection PyUnusedLocal
        def mock_find_centers(N, sample, entry, max_steps, eps_conv):
            if not succeed:
                raise Ambiguous('two candidates')
            return -2 + 0j

        with mock.patch("{}.basins.find_centers".format(TestOrbitController.MODEL_BASE), mock_find_centers):
            # Success
            succeed = True
            success, data = OrbitController.find_center(TestOrbitController.exponential, -5)
            assert success is True
            assert data == -2

            # Fail
            succeed = False
            success, data = OrbitController.find_center(TestOrbitController.exponential, -5)
            assert success is False
            assert 'two candidates' in data

    def test_check_pcm(self):
        success, data = OrbitController.check_pcm(TestOrbitController.exponential)
        assert success is True
        assert data.overall == 'pass'

        success, data = OrbitController.check_pcm(TestOrbitController.quadratic)
        assert success is False
        assert 'PCM' in data

    def test_check_pcm_error(self):
        # noinspection PyUnusedLocal
        def mock_pcm_report(N, max_steps, eps_conv):
            raise NotParabolic('no petals')

        with mock.patch("{}.pcm.pcm_report".format(TestOrbitController.MODEL_BASE), mock_pcm_report):
            success, data = OrbitController.check_pcm(TestOrbitController.exponential)
            assert success is False
            assert 'no petals' in data
