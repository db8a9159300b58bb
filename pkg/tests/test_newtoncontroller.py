from unittest import mock

from newtonlab.errors import NonConvergence
from newtonlab.newton.controller import NewtonController


class TestNewtonController:
    MODEL_BASE = 'newtonlab.newton.model'

    def test_build_map(self):
        success, data = NewtonController.build_map([-1, 0, 1], [0])
        assert success is True
        assert data.d == 2

        success, data = NewtonController.build_map([0], [0, 1])
        assert success is False
        assert 'Failed to build Newton map' in data

    def test_find_fixed_points(self):
        succeed = True

        # noinspection PyUnusedLocal
        def mock_fixed_points(spec, tol):
            if not succeed:
                raise NonConvergence('no luck')
            return []

        NewtonController.build_map([-1, 0, 1], [0])
        with mock.patch("{}.fixedpoint.fixed_points".format(TestNewtonController.MODEL_BASE), mock_fixed_points):
            # Success
            succeed = True
            success, data = NewtonController.find_fixed_points()
            assert success is True

            # Fail
            succeed = False
            success, data = NewtonController.find_fixed_points()
            assert success is False

    def test_find_critical_points(self):
        succeed = True

        # noinspection PyUnusedLocal
        def mock_critical_points(spec):
            if not succeed:
                raise NonConvergence('no luck')
            return []

        NewtonController.build_map([-1, 0, 1], [0])
        with mock.patch("{}.newtonmap.critical_points".format(TestNewtonController.MODEL_BASE), mock_critical_points):
            # Success
            succeed = True
            success, data = NewtonController.find_critical_points()
            assert success is True

            # Fail
            succeed = False
            success, data = NewtonController.find_critical_points()
            assert success is False

    def test_build_report(self):
        NewtonController.build_map([-1, 0, 1], [0])
        NewtonController.find_fixed_points()
        NewtonController.find_critical_points()
        report = NewtonController.build_report()
        assert report['degree'] == 2
        assert report['n'] == 0
        assert len(report['fixed_points']) == 3
        assert report['fixed_points'][-1]['class'] == 'repelling'
        assert sum(entry['multiplicity'] for entry in report['critical_points']) == 2
