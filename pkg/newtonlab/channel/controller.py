"""
This is the channel controller. It builds and marks channel diagrams for the CLI and the surgery pipeline.
"""
from __future__ import annotations

import logging
from typing import List, Tuple

from newtonlab.channel.model import ray
from newtonlab.channel.model.ray import ChannelDiagram
from newtonlab.errors import NewtonLabError
from newtonlab.newton.model.newtonmap import NewtonMapSpec


class ChannelController:
    """
    Contains various static methods for channel diagrams.
    """

    #: Pullback levels per ray
    MAX_LEVELS: int = ray.MAX_LEVELS
    #: Rays stop once they leave this radius
    ESCAPE_RADIUS: float = ray.ESCAPE_RADIUS

    @staticmethod
    def build_diagram(N: NewtonMapSpec,
                      selections: List[Tuple[int, int]] | None = None,
                      workers: int | None = None) -> tuple[bool, str] | tuple[bool, ChannelDiagram]:
        """
        Trace the channel diagram of ``N`` and mark the selected rays.

        :param N: the Newton map.
        :param selections: ``(basin, j)`` pairs to mark.
        :param workers: processes tracing rays, ``None`` for the configured count.

        :returns:

            -success (:py:class:`bool`) - true if the diagram is built.

            -data (:py:class:`str` | :py:class:`ChannelDiagram`) - error message on failure, or the diagram.

        """
        try:
            diagram = ray.build_channel_diagram(N, ChannelController.MAX_LEVELS, ChannelController.ESCAPE_RADIUS,
                                                workers)
            diagram = ray.mark(diagram, selections or [])
        except NewtonLabError as e:
            error = 'Failed to build the channel diagram of {}: {}'.format(N, e)
            logging.critical(error)
            return False, error
        for ray_ in diagram.rays:
            if not ray_.escaped:
                logging.warning('{!r} did not reach radius {}'.format(ray_, ChannelController.ESCAPE_RADIUS))
        debug_msg = 'Channel diagram of {}: {} rays, {} marked'.format(N, len(diagram.rays), diagram.n_marked)
        logging.debug(debug_msg)
        return True, diagram

    @staticmethod
    def count_accesses(N: NewtonMapSpec, basin: int) -> tuple[bool, str] | tuple[bool, dict]:
        """
        Count the accesses to infinity of the immediate basin of a root.

        :param N: the Newton map.
        :param basin: index of the root.

        :returns:

            -success (:py:class:`bool`) - true if the count is computed.

            -data (:py:class:`str` | :py:class:`dict`) - error message on failure, or the access report.

        """
        try:
            if not 0 <= basin < len(N.roots):
                raise IndexError('no root with index {}'.format(basin))
            data = ray.count_accesses(N, basin)
        except (NewtonLabError, IndexError) as e:
            error = 'Failed to count accesses of basin {}: {}'.format(basin, e)
            logging.critical(error)
            return False, error
        return True, data
