"""
Contains the ``FixedPointInfo`` class and the fixed point analysis of Newton maps: location, multiplier and class of
every fixed point on the sphere, the petal count at a parabolic point at infinity and the multiplier test that a
rational map is the Newton map of an entire function.
"""

from __future__ import annotations

import logging
from typing import List

import numpy as np

from newtonlab import helpers
from newtonlab.errors import NotFixed
from newtonlab.newton.model.newtonmap import NewtonMapSpec, first_nonvanishing, infinity_germ
from newtonlab.polyalg.complexpoly import ComplexPoly, poly_roots
from newtonlab.polyalg.ratmap import RatMap

FIXED_TOL: float = 1e-10  #: Spherical residual allowed for a fixed point.
MULTIPLIER_TOL: float = 1e-6  #: Tolerance when matching multipliers to 0, 1 or (m-1)/m.
ROOT_MATCH_TOL: float = 1e-6  #: Distance within which a fixed point is matched to a root of p.
MAX_CHARACTER_M: int = 64  #: Largest m tried in the Newton character test.


class FixedPointInfo:
    """
    A fixed point on the sphere with its multiplier and class.
    """

    SUPERATTRACTING = 'superattracting'
    ATTRACTING = 'attracting'
    REPELLING = 'repelling'
    PARABOLIC = 'parabolic'

    def __init__(self,
                 location: complex,
                 multiplier: complex,
                 kind: str,
                 petals: int = 0,
                 root_multiplicity: int = 0,
                 germ_coefficient: complex | None = None):
        """
        Create a new fixed point record.

        :param location: the point, possibly :py:data:`newtonlab.helpers.INFINITY`.
        :param multiplier: the derivative of the map at the point (in the chart at infinity for infinity).
        :param kind: one of the class constants.
        :param petals: number of attracting petals, parabolic points only.
        :param root_multiplicity: multiplicity ``m`` of the root of ``p`` at this point, 0 when not a root.
        :param germ_coefficient: for a parabolic point, ``a`` in the germ ``w + a w^(petals+1) + ...``.
        """
        self.location: complex = location
        self.multiplier: complex = multiplier
        self.kind: str = kind
        self.petals: int = petals
        self.root_multiplicity: int = root_multiplicity
        self.germ_coefficient: complex | None = germ_coefficient

    def is_infinity(self) -> bool:
        return helpers.is_infinity(self.location)

    def to_dict(self) -> dict:
        return {
            'location': self.location,
            'multiplier': self.multiplier,
            'class': self.kind,
            'petals': self.petals,
            'm': self.root_multiplicity
        }

    def __str__(self):
        return '{} fixed point at {} (multiplier {})'.format(self.kind, self.location, self.multiplier)


def classify_multiplier(multiplier: complex, tol: float = MULTIPLIER_TOL) -> str:
    if abs(multiplier) <= tol:
        return FixedPointInfo.SUPERATTRACTING
    if abs(multiplier - 1) <= tol:
        return FixedPointInfo.PARABOLIC
    if abs(multiplier) < 1:
        return FixedPointInfo.ATTRACTING
    return FixedPointInfo.REPELLING


def fixed_point_polynomial(newton_map: RatMap) -> ComplexPoly:
    z = ComplexPoly([0, 1])
    return (newton_map.num - z * newton_map.den).trimmed(1e-10)


def finite_fixed_points(newton_map: RatMap) -> List[complex]:
    poly = fixed_point_polynomial(newton_map)
    if poly.degree() < 1:
        return []
    return [root for root, _ in poly_roots(poly)]


def infinity_fixed_point(N: NewtonMapSpec, tol: float = MULTIPLIER_TOL) -> FixedPointInfo:
    """
    Analyse infinity in the chart ``w = 1/z``. For a parabolic point the petal count is the order of the first
    nonvanishing term of the germ beyond the linear one, cross-checked against ``deg q``.

    :param N: the Newton map.
    :param tol: multiplier tolerance.
    :return: the fixed point record for infinity.
    """
    series = infinity_germ(N.map, max(N.n, 1) + 2)
    multiplier = complex(series[1])
    kind = classify_multiplier(multiplier, tol)
    petals = 0
    germ = None
    if kind == FixedPointInfo.PARABOLIC:
        order = first_nonvanishing(series, 2)
        if order is None:
            series = infinity_germ(N.map, 2 * N.d + 2)
            order = first_nonvanishing(series, 2)
        if order is not None:
            petals = order - 1
            germ = complex(series[order])
        if petals != N.n:
            logging.warning('Petal count {} at infinity differs from deg q = {}'.format(petals, N.n))
    return FixedPointInfo(helpers.INFINITY, multiplier, kind, petals=petals, germ_coefficient=germ)


def fixed_points(N: NewtonMapSpec, tol: float = MULTIPLIER_TOL) -> List[FixedPointInfo]:
    """
    All fixed points of the Newton map: the finite ones are the roots of ``num - z den`` and infinity is appended.

    :param N: the Newton map.
    :param tol: multiplier tolerance used for classification.
    :return: finite fixed points (sorted) followed by infinity.
    """
    infos = []
    for location in finite_fixed_points(N.map):
        multiplier = N.map.derivative_at(location)
        m = 0
        for root, mult in N.roots:
            if abs(root - location) <= ROOT_MATCH_TOL * max(1.0, abs(root)):
                m = mult
                break
        infos.append(FixedPointInfo(location, multiplier, classify_multiplier(multiplier, tol), root_multiplicity=m))
    if helpers.is_infinity(N.map.value_at_infinity()):
        infos.append(infinity_fixed_point(N, tol))
    logging.debug('Fixed points of {}: {}'.format(N, [str(info) for info in infos]))
    return infos


def multiplier_at(N: NewtonMapSpec, xi: complex, tol: float = FIXED_TOL) -> complex:
    """
    Derivative of the map at a fixed point; at infinity, of the conjugated map ``w -> 1/N(1/w)`` at 0.

    :param N: the Newton map.
    :param xi: the fixed point.
    :param tol: allowed spherical distance between ``N(xi)`` and ``xi``.
    :return: the multiplier.
    :raises NotFixed: if ``xi`` is not fixed within ``tol``.
    """
    image = N.map.evaluate_sphere(xi)
    if helpers.spherical_distance(image, xi) > tol:
        raise NotFixed('{} is not a fixed point: N({}) = {}'.format(xi, xi, image))
    if helpers.is_infinity(xi):
        return complex(N.map.chart.taylor_at(0, 1)[1])
    return complex(N.map.derivative_at(xi))


def verify_newton_character(newton_map: RatMap, tol: float = MULTIPLIER_TOL) -> dict:
    """
    Check that every finite fixed point has multiplier ``(m-1)/m`` for some natural ``m <= 64``, a necessary condition
    for a rational map to be the Newton map of an entire function.

    :param newton_map: any rational map.
    :param tol: allowed residual.
    :return: a dictionary with ``passed`` and one ``fixed_points`` entry per finite fixed point (``location``,
        ``multiplier``, ``m``, ``residual``).
    """
    candidates = np.array([(m - 1) / m for m in range(1, MAX_CHARACTER_M + 1)])
    entries = []
    for location in finite_fixed_points(newton_map):
        multiplier = complex(newton_map.derivative_at(location))
        distances = np.abs(candidates - multiplier)
        best = int(np.argmin(distances))
        entries.append({
            'location': location,
            'multiplier': multiplier,
            'm': best + 1,
            'residual': float(distances[best])
        })
    passed = all(entry['residual'] < tol for entry in entries)
    return {'passed': passed, 'fixed_points': entries}
