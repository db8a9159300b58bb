from unittest import mock

from newtonlab.channel.controller import ChannelController
from newtonlab.errors import BranchLoss
from newtonlab.newton.model.newtonmap import build_newton_map
from newtonlab.polyalg.complexpoly import ComplexPoly


class TestChannelController:
    MODEL_BASE = 'newtonlab.channel.model'

    @classmethod
    def setup_class(cls):
        cls.cubic = build_newton_map(ComplexPoly([-1, 0, 0, 1]), ComplexPoly())

    def test_build_diagram(self):
        success, data = ChannelController.build_diagram(TestChannelController.cubic, [(0, 1)], workers=1)
        assert success is True
        assert len(data.rays) == 3
        assert data.n_marked == 1

        success, data = ChannelController.build_diagram(TestChannelController.cubic, [(0, 1), (0, 1)], workers=1)
        assert success is False
        assert 'share a basin' in data

    def test_build_diagram_failure(self):
        # noinspection PyUnusedLocal
        def mock_trace_ray(N, basin, j, levels, escape):
            raise BranchLoss('left the basin')

        with mock.patch("{}.ray.trace_ray".format(TestChannelController.MODEL_BASE), mock_trace_ray):
            success, data = ChannelController.build_diagram(TestChannelController.cubic, workers=1)
            assert success is False
            assert 'left the basin' in data

    def test_count_accesses(self):
        success, data = ChannelController.count_accesses(TestChannelController.cubic, 0)
        assert success is True
        assert data['count'] == 1

        success, data = ChannelController.count_accesses(TestChannelController.cubic, 5)
        assert success is False
