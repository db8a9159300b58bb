"""
This is the Newton map controller. It builds the map and runs the fixed and critical point analysis in stages. These are
called by the CLI, but can be called separately if imported.
"""
from __future__ import annotations

import logging
from typing import List, Tuple

from newtonlab.errors import NewtonLabError
from newtonlab.newton.model import fixedpoint, newtonmap
from newtonlab.newton.model.fixedpoint import FixedPointInfo
from newtonlab.newton.model.newtonmap import NewtonMapSpec
from newtonlab.polyalg.complexpoly import ComplexPoly


class NewtonController:
    """
    Contains various static methods for the stages of Newton map analysis.
    """

    #: The map being analysed
    NEWTON_MAP: NewtonMapSpec | None = None
    #: Fixed points of the map, infinity last
    FIXED_POINTS: List[FixedPointInfo] = []
    #: Critical points of the map with multiplicities
    CRITICAL_POINTS: List[Tuple[complex, int]] = []
    #: Multiplier tolerance used for classification
    MULTIPLIER_TOL: float = fixedpoint.MULTIPLIER_TOL

    @staticmethod
    def build_map(p_coeffs: List[complex], q_coeffs: List[complex]) -> tuple[bool, str] | tuple[bool, NewtonMapSpec]:
        """
        Build the Newton map of ``p e^q``.

        :param p_coeffs: coefficients of ``p``, lowest power first.
        :param q_coeffs: coefficients of ``q``, lowest power first.

        :returns:

            -success (:py:class:`bool`) - true if the map is built.

            -data (:py:class:`str` | :py:class:`NewtonMapSpec`) - error message on failure, or the map.

        """
        try:
            NewtonController.NEWTON_MAP = newtonmap.build_newton_map(ComplexPoly(p_coeffs), ComplexPoly(q_coeffs))
        except NewtonLabError as e:
            error = 'Failed to build Newton map: {}'.format(e)
            logging.critical(error)
            return False, error
        debug_msg = 'Newton map built: {}'.format(NewtonController.NEWTON_MAP)
        logging.debug(debug_msg)
        return True, NewtonController.NEWTON_MAP

    @staticmethod
    def find_fixed_points() -> tuple[bool, str] | tuple[bool, List[FixedPointInfo]]:
        """
        Find and classify the fixed points of the current map.

        :returns:

            -success (:py:class:`bool`) - true if the fixed points are found.

            -data (:py:class:`str` | :py:class:`List[FixedPointInfo]`) - error message on failure, or the fixed points.

        """
        try:
            NewtonController.FIXED_POINTS = fixedpoint.fixed_points(NewtonController.NEWTON_MAP,
                                                                    NewtonController.MULTIPLIER_TOL)
        except NewtonLabError as e:
            error = 'Failed to find fixed points: {}'.format(e)
            logging.critical(error)
            return False, error
        debug_msg = 'Found fixed points: {}'.format([str(info) for info in NewtonController.FIXED_POINTS])
        logging.debug(debug_msg)
        return True, NewtonController.FIXED_POINTS

    @staticmethod
    def find_critical_points() -> tuple[bool, str] | tuple[bool, List[Tuple[complex, int]]]:
        """
        Find the critical points of the current map.

        :returns:

            -success (:py:class:`bool`) - true if the critical points are found.

            -data (:py:class:`str` | :py:class:`List[Tuple[complex, int]]`) - error message on failure, or the
            critical points with multiplicities.

        """
        try:
            NewtonController.CRITICAL_POINTS = newtonmap.critical_points(NewtonController.NEWTON_MAP)
        except NewtonLabError as e:
            error = 'Failed to find critical points: {}'.format(e)
            logging.critical(error)
            return False, error
        debug_msg = 'Found critical points: {}'.format(NewtonController.CRITICAL_POINTS)
        logging.debug(debug_msg)
        return True, NewtonController.CRITICAL_POINTS

    @staticmethod
    def build_report() -> dict:
        """
        Assemble the ``build`` report from the current state. Returns a dictionary with the following keys:

        - ``p``, ``q`` - the input coefficients.
        - ``num``, ``den`` - coefficients of the reduced map.
        - ``degree``, ``n`` - the degree of the map and of ``q``.
        - ``fixed_points`` - one entry per fixed point.
        - ``critical_points`` - ``point`` and ``multiplicity`` per critical point.

        :return: the report.
        """
        spec = NewtonController.NEWTON_MAP
        return {
            'p': list(spec.p.coeffs),
            'q': list(spec.q.coeffs),
            'num': list(spec.map.num.coeffs),
            'den': list(spec.map.den.coeffs),
            'degree': spec.d,
            'n': spec.n,
            'fixed_points': [info.to_dict() for info in NewtonController.FIXED_POINTS],
            'critical_points': [{'point': point, 'multiplicity': mult}
                                for point, mult in NewtonController.CRITICAL_POINTS]
        }
