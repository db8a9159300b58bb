"""
This is the surgery controller. It runs the model checks and the surgery pipeline for the CLI.
"""
from __future__ import annotations

import logging
from typing import List, Tuple

from newtonlab.errors import NewtonLabError
from newtonlab.newton.model.newtonmap import NewtonMapSpec
from newtonlab.surgery.model import pipeline


class SurgeryController:
    """
    Contains various static methods for the surgery models.
    """

    @staticmethod
    def check_model(k: int, r: float | None = None, lam: float = 2.0, theta: float = pipeline.THETA,
                    mmax: int = 40, grid: int = 16) -> tuple[bool, str] | tuple[bool, dict]:
        """
        Check the disk model of degree ``k`` and the sector model of multiplier ``lam``.

        :param k: the disk degree.
        :param r: the gluing radius, chosen from ``alpha`` when omitted.
        :param lam: the sector multiplier.
        :param theta: the sector gap.
        :param mmax: the last quadrilateral.
        :param grid: radial cells per quadrilateral.

        :returns:

            -success (:py:class:`bool`) - true if the report is computed, whatever its verdict.

            -data (:py:class:`str` | :py:class:`dict`) - error message on failure, or the report.

        """
        try:
            report = pipeline.surgery_check_report(k, r, lam, theta, mmax, grid)
        except NewtonLabError as e:
            error = 'Failed to check the surgery models for k={}, lambda={}: {}'.format(k, lam, e)
            logging.critical(error)
            return False, error
        if report['verdict'] != 'pass':
            logging.warning('Surgery models for k={}, lambda={} did not pass'.format(k, lam))
        debug_msg = 'Surgery check k={} lambda={}: {}'.format(k, lam, report['verdict'])
        logging.debug(debug_msg)
        return True, report

    @staticmethod
    def run_pipeline(N: NewtonMapSpec, markings: List[Tuple[int, int]], multiplier: float = pipeline.TARGET_MULTIPLIER,
                     area_depth: int = 1, workers: int | None = None) -> tuple[bool, str] | tuple[bool, dict]:
        """
        Run the constructive part of the surgery on the marked basins of ``N``.

        :param N: a polynomial Newton map.
        :param markings: ``(basin, j)`` pairs.
        :param multiplier: multiplier of the disk models.
        :param area_depth: preimage depth of the area condition.
        :param workers: processes tracing rays, ``None`` for the configured count.

        :returns:

            -success (:py:class:`bool`) - true if the report is computed.

            -data (:py:class:`str` | :py:class:`dict`) - error message on failure, or the report.

        """
        try:
            report = pipeline.surgery_pipeline_report(N, markings, multiplier, area_depth, workers=workers)
        except NewtonLabError as e:
            error = 'Surgery pipeline failed on {}: {}'.format(N, e)
            logging.critical(error)
            return False, error
        debug_msg = 'Surgery pipeline on {}: {}'.format(N, report['verdict'])
        logging.debug(debug_msg)
        return True, report
