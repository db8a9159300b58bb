"""
Contains the ``NewtonMapSpec`` class, the Newton map ``N(z) = z - p/(p' + p q')`` of ``p(z)e^{q(z)}`` as a reduced
rational map, and the critical point computation.
"""

from __future__ import annotations

import logging
from typing import List, Tuple

import numpy as np

from newtonlab import helpers
from newtonlab.errors import DegenerateInput
from newtonlab.polyalg.complexpoly import ComplexPoly, poly_roots
from newtonlab.polyalg.ratmap import RatMap

SERIES_TOL: float = 1e-9  #: Relative size below which a Taylor coefficient counts as vanishing.


class NewtonMapSpec:
    """
    The Newton map of ``p e^q`` together with the data it was built from.
    """

    def __init__(self,
                 p: ComplexPoly,
                 q: ComplexPoly,
                 newton_map: RatMap,
                 roots: List[Tuple[complex, int]]):
        """
        Create a new Newton map record. Use :py:func:`build_newton_map` rather than calling this directly.

        :param p: the polynomial factor.
        :param q: the exponent polynomial.
        :param newton_map: the reduced rational map.
        :param roots: roots of ``p`` with multiplicities.
        """
        self.p: ComplexPoly = p
        self.q: ComplexPoly = q
        self.map: RatMap = newton_map
        self.d: int = newton_map.degree()
        self.n: int = q.degree()
        self.roots: List[Tuple[complex, int]] = roots

    @staticmethod
    def create_from_coefficients(p_coeffs: List[complex], q_coeffs: List[complex]) -> NewtonMapSpec:
        return build_newton_map(ComplexPoly(p_coeffs), ComplexPoly(q_coeffs))

    def root_points(self) -> List[complex]:
        return [root for root, _ in self.roots]

    def __call__(self, z):
        return self.map.evaluate_sphere(z)

    def __str__(self):
        return 'N(p={}, q={}, d={}, n={})'.format(
            helpers.format_coefficients(self.p.coeffs), helpers.format_coefficients(self.q.coeffs), self.d, self.n)


def build_newton_map(p: ComplexPoly, q: ComplexPoly) -> NewtonMapSpec:
    """
    Build the reduced Newton map of ``p e^q``. For constant ``q`` this is the classical ``z - p/p'``.

    :param p: a nonzero polynomial.
    :param q: any polynomial.
    :return: the Newton map record.
    :raises DegenerateInput: if ``p`` is zero or ``p e^q`` is constant.
    """
    if p.is_zero():
        raise DegenerateInput('p must not be the zero polynomial')
    z = ComplexPoly([0, 1])
    den = (p.derivative() + p * q.derivative()).trimmed()
    if den.is_zero():
        raise DegenerateInput('p e^q is constant, its Newton map is undefined')
    num = (z * den - p).trimmed()
    newton_map = RatMap(num, den).reduced()
    roots = poly_roots(p) if p.degree() >= 1 else []
    spec = NewtonMapSpec(p, q, newton_map, roots)
    logging.debug('Built Newton map {} with d={}, n={}'.format(spec, spec.d, spec.n))
    return spec


def first_nonvanishing(series: np.ndarray, start: int) -> int | None:
    """
    Index of the first Taylor coefficient at or after ``start`` that is not negligible relative to the largest one.

    :param series: Taylor coefficients.
    :param start: first index to consider.
    :return: the index, or None if all vanish.
    """
    scale = max(1.0, float(np.max(np.abs(series[start:])))) if len(series) > start else 1.0
    for k in range(start, len(series)):
        if abs(series[k]) > SERIES_TOL * scale:
            return k
    return None


def infinity_germ(newton_map: RatMap, order: int) -> np.ndarray:
    """
    Taylor coefficients of the map near infinity: of ``w -> 1/N(1/w)`` when infinity is fixed, else of
    ``w -> N(1/w)``.

    :param newton_map: the map.
    :param order: highest power wanted.
    :return: ``order + 1`` coefficients at ``w = 0``.
    """
    if helpers.is_infinity(newton_map.value_at_infinity()):
        return newton_map.chart.taylor_at(0, order)
    top = newton_map.degree()
    return RatMap(newton_map.num.reversed(top), newton_map.den.reversed(top)).taylor_at(0, order)


def critical_points(N: NewtonMapSpec) -> List[Tuple[complex, int]]:
    """
    Critical points of the Newton map with multiplicities: roots of ``num' den - num den'`` (multiple poles included)
    and infinity when the map is not locally injective there. The multiplicities add up to ``2d - 2``.

    :param N: the Newton map.
    :return: ``(point, multiplicity)`` pairs; infinity is :py:data:`newtonlab.helpers.INFINITY`.
    """
    if N.d < 2:
        raise DegenerateInput('Critical points need a map of degree at least 2, got {}'.format(N.d))
    num, den = N.map.num, N.map.den
    wronskian = (num.derivative() * den - num * den.derivative()).trimmed()
    found = poly_roots(wronskian) if wronskian.degree() >= 1 else []

    series = infinity_germ(N.map, N.d + 1)
    local_degree = first_nonvanishing(series, 1)
    if local_degree is not None and local_degree > 1:
        found.append((helpers.INFINITY, local_degree - 1))

    total = sum(mult for _, mult in found)
    if total != 2 * N.d - 2:
        logging.warning('Critical count {} differs from 2d-2={} for {}'.format(total, 2 * N.d - 2, N))
    return found
