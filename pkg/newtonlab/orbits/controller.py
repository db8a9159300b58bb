"""
This is the orbit controller. It wraps single orbits, basin grids, component centers and the postcritically-minimal
check so the CLI gets a success flag and either a result or an error message.
"""
from __future__ import annotations

import logging
from typing import Tuple

from newtonlab.errors import NewtonLabError
from newtonlab.frontend.raster import BasinRaster, Viewport
from newtonlab.newton.model.newtonmap import NewtonMapSpec
from newtonlab.orbits.model import basins, grid, iteration, pcm
from newtonlab.orbits.model.orbitrecord import OrbitRecord
from newtonlab.orbits.model.pcm import PCMReport


class OrbitController:
    """
    Contains various static methods for orbit analysis of a Newton map.
    """

    #: Step budget for single orbits
    MAX_STEPS: int = iteration.MAX_STEPS
    #: Step budget per pixel
    GRID_STEPS: int = grid.GRID_STEPS
    #: Convergence radius around roots
    EPS_CONV: float = iteration.EPS_CONV
    #: Petal sector radius in the chart at infinity
    PETAL_RADIUS: float = iteration.PETAL_RADIUS

    @staticmethod
    def run_orbit(N: NewtonMapSpec, z0: complex) -> tuple[bool, str] | tuple[bool, OrbitRecord]:
        """
        Iterate and classify the orbit of ``z0``.

        :param N: the Newton map.
        :param z0: the start point.

        :returns:

            -success (:py:class:`bool`) - true if the orbit is computed.

            -data (:py:class:`str` | :py:class:`OrbitRecord`) - error message on failure, or the orbit.

        """
        try:
            rules = iteration.OrbitRules(N, OrbitController.EPS_CONV, petal_radius=OrbitController.PETAL_RADIUS)
            record = iteration.iterate(N, z0, OrbitController.MAX_STEPS, rules=rules)
        except NewtonLabError as e:
            error = 'Failed to iterate {}: {}'.format(z0, e)
            logging.critical(error)
            return False, error
        debug_msg = 'Orbit of {}: {!r} after {} steps'.format(z0, record.outcome, record.steps)
        logging.debug(debug_msg)
        return True, record

    @staticmethod
    def classify(N: NewtonMapSpec,
                 viewport: Viewport,
                 resolution: Tuple[int, int],
                 workers: int | None = None) -> tuple[bool, str] | tuple[bool, BasinRaster]:
        """
        Classify a pixel grid.

        :param N: the Newton map.
        :param viewport: the region.
        :param resolution: ``(width, height)``.
        :param workers: worker processes, ``None`` for the configured count.

        :returns:

            -success (:py:class:`bool`) - true if the grid is classified.

            -data (:py:class:`str` | :py:class:`BasinRaster`) - error message on failure, or the raster.

        """
        try:
            raster = grid.classify_grid(N, viewport, resolution, OrbitController.GRID_STEPS, OrbitController.EPS_CONV,
                                        workers, OrbitController.PETAL_RADIUS)
        except (NewtonLabError, ValueError) as e:
            error = 'Failed to classify grid: {}'.format(e)
            logging.critical(error)
            return False, error
        debug_msg = 'Grid classified: {}'.format(raster.summary()['label_counts'])
        logging.debug(debug_msg)
        return True, raster

    @staticmethod
    def find_center(N: NewtonMapSpec, sample: complex, entry: int | None = None) -> tuple[bool, str] | tuple[bool, complex]:
        """
        Find the center of the Fatou component containing ``sample``.

        :param N: the Newton map.
        :param sample: a point of the component.
        :param entry: the entry time of ``sample``, computed when omitted.

        :returns:

            -success (:py:class:`bool`) - true if a center is found.

            -data (:py:class:`str` | :py:class:`complex`) - error message on failure, or the center.

        """
        try:
            center = basins.find_centers(N, sample, entry, OrbitController.MAX_STEPS, OrbitController.EPS_CONV)
        except NewtonLabError as e:
            error = 'Failed to find the center for {}: {}'.format(sample, e)
            logging.critical(error)
            return False, error
        debug_msg = 'Center of the component of {}: {}'.format(sample, center)
        logging.debug(debug_msg)
        return True, center

    @staticmethod
    def check_pcm(N: NewtonMapSpec) -> tuple[bool, str] | tuple[bool, PCMReport]:
        """
        Run the postcritically-minimal check.

        :param N: the Newton map.

        :returns:

            -success (:py:class:`bool`) - true if the check ran, whatever its verdict.

            -data (:py:class:`str` | :py:class:`PCMReport`) - error message on failure, or the report.

        """
        try:
            report = pcm.pcm_report(N, OrbitController.MAX_STEPS, OrbitController.EPS_CONV)
        except NewtonLabError as e:
            error = 'Failed to run the PCM check: {}'.format(e)
            logging.critical(error)
            return False, error
        if report.overall != basins.Verdict.PASS:
            logging.warning('PCM check {}: {}'.format(report.overall, '; '.join(report.failures + report.unknowns)))
        debug_msg = 'PCM check of {}: {}'.format(N, report.overall)
        logging.debug(debug_msg)
        return True, report
