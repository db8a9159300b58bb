from unittest import mock

from newtonlab.errors import BadRadius
from newtonlab.newton.model.newtonmap import build_newton_map
from newtonlab.polyalg.complexpoly import ComplexPoly
from newtonlab.surgery.controller import SurgeryController


class TestSurgeryController:
    MODEL_BASE = 'newtonlab.surgery.model'

    @classmethod
    def setup_class(cls):
        cls.cubic = build_newton_map(ComplexPoly([-1, 0, 0, 1]), ComplexPoly())

    def test_check_model(self):
        success, data = SurgeryController.check_model(2, mmax=16, grid=8)
        assert success is True
        assert data['verdict'] == 'pass'
        assert data['disk']['k'] == 2

        success, data = SurgeryController.check_model(2, r=0.1)
        assert success is False
        assert 'Radius' in data

    def test_check_model_failure(self):
        succeed = True

        # noinspection PyUnusedLocal
        def mock_check_report(k, r, lam, theta, mmax, grid):
            if not succeed:
                raise BadRadius('no room for the annulus')
            return {'verdict': 'fail'}

        with mock.patch("{}.pipeline.surgery_check_report".format(TestSurgeryController.MODEL_BASE), mock_check_report):
            # Success
            succeed = True
            success, data = SurgeryController.check_model(3)
            assert success is True
            assert data['verdict'] == 'fail'

            # Fail
            succeed = False
            success, data = SurgeryController.check_model(3)
            assert success is False
            assert 'no room for the annulus' in data

    def test_run_pipeline(self):
        success, data = SurgeryController.run_pipeline(TestSurgeryController.cubic, [], workers=1)
        assert success is True
        assert data['verdict'] == 'pass'

        success, data = SurgeryController.run_pipeline(TestSurgeryController.cubic, [(0, 1), (0, 1)], workers=1)
        assert success is False
        assert 'share a basin' in data
