"""
Contains the ``RatMap`` class, a ratio of two ``ComplexPoly`` acting on the Riemann sphere, together with reduction,
differentiation, the chart at infinity and local Taylor expansions.
"""

from __future__ import annotations

import logging
from functools import cached_property
from typing import List, Tuple

import numpy as np

from newtonlab import helpers
from newtonlab.errors import DegenerateInput, PoleHit
from newtonlab.polyalg.complexpoly import ComplexPoly, poly_roots

GCD_TOL: float = 1e-8  #: Common roots pair within this times the largest root modulus.
CHART_RADIUS: float = 1.0  #: Beyond this modulus, evaluation goes through the chart at infinity.


class RatMap:
    """
    A rational map ``num / den``. Instances are immutable; ``reduced()`` returns a new map with common factors removed.
    """

    def __init__(self, num: ComplexPoly, den: ComplexPoly):
        """
        Create a new rational map.

        :param num: the numerator.
        :param den: the denominator, not the zero polynomial.
        """
        if den.is_zero():
            raise DegenerateInput('Denominator of a rational map cannot be zero')
        self.num: ComplexPoly = num
        self.den: ComplexPoly = den

    @staticmethod
    def constant(value: complex) -> RatMap:
        return RatMap(ComplexPoly([value]), ComplexPoly([1]))

    def degree(self) -> int:
        return max(self.num.degree(), self.den.degree())

    def is_constant(self) -> bool:
        return self.num.degree() == 0 and self.den.degree() == 0

    def normalized(self) -> RatMap:
        """
        Scale numerator and denominator so the denominator is monic.
        """
        lead = self.den.leading()
        return RatMap(self.num * (1 / lead), self.den * (1 / lead))

    def almost_equal(self, other: RatMap, tol: float = 1e-10) -> bool:
        a = self.normalized()
        b = other.normalized()
        return a.num.almost_equal(b.num, tol) and a.den.almost_equal(b.den, tol)

    def value_at_infinity(self) -> complex:
        if self.num.is_zero():
            return 0j
        if self.num.degree() > self.den.degree():
            return helpers.INFINITY
        if self.num.degree() < self.den.degree():
            return 0j
        return self.num.leading() / self.den.leading()

    @cached_property
    def chart(self) -> RatMap:
        """
        The conjugated map ``w -> 1/N(1/w)`` in the chart at infinity, formed by coefficient reversal.
        """
        top = self.degree()
        return RatMap(self.den.reversed(top), self.num.reversed(top))

    def evaluate(self, z: complex) -> complex:
        """
        Finite evaluation ``num(z) / den(z)``.

        :param z: a finite point.
        :return: the value.
        :raises PoleHit: if ``z`` is a pole.
        """
        den = self.den(z)
        if den == 0:
            raise PoleHit('Evaluation at a pole z={}'.format(z))
        return self.num(z) / den

    def __call__(self, z):
        return self.evaluate_sphere(z)

    def evaluate_sphere(self, z):
        """
        Evaluate on the Riemann sphere, elementwise on arrays. Poles map to infinity, infinity maps to
        ``value_at_infinity()`` and points of modulus above ``CHART_RADIUS`` go through the chart so large arguments do
        not overflow.

        :param z: point or array of points, infinity allowed.
        :return: the image point(s).
        """
        z = np.asarray(z, dtype=complex)
        scalar = z.ndim == 0
        z = np.atleast_1d(z)
        finite = np.isfinite(z)
        with np.errstate(all='ignore'):
            zf = np.where(finite, z, 0)
            far = np.abs(zf) > CHART_RADIUS
            w = np.where(far, 1.0 / np.where(far, zf, 1.0), 0)
            chart = self.chart
            cnum = chart.num(w)
            cden = chart.den(w)
            chart_value = np.where(cnum == 0, helpers.INFINITY, 1.0 / np.where(cnum == 0, 1.0, cnum / cden))
            chart_value = np.where(cden == 0, 0j, chart_value)
            num = self.num(zf)
            den = self.den(zf)
            near_value = np.where(den == 0, helpers.INFINITY, num / np.where(den == 0, 1.0, den))
            out = np.where(far, chart_value, near_value)
            out = np.where(finite, out, self.value_at_infinity())
        if scalar:
            return complex(out[0])
        return out

    def reduced(self, tol: float | None = None) -> RatMap:
        return rat_reduce(self, tol)

    def derivative(self) -> RatMap:
        return rat_derivative(self)

    def derivative_at(self, z: complex) -> complex:
        """
        Derivative at a finite non-pole point by the quotient rule.
        """
        den = self.den(z)
        if den == 0:
            raise PoleHit('Derivative at a pole z={}'.format(z))
        return (self.num.derivative()(z) * den - self.num(z) * self.den.derivative()(z)) / (den * den)

    def taylor_at(self, center: complex, order: int) -> np.ndarray:
        """
        Taylor coefficients of ``h -> N(center + h)`` up to ``h^order`` by series division.

        :param center: a finite non-pole point.
        :param order: highest power wanted.
        :return: ``order + 1`` coefficients.
        """
        num = _padded(self.num.shift(center).coeffs, order)
        den = _padded(self.den.shift(center).coeffs, order)
        if den[0] == 0:
            raise PoleHit('Taylor expansion at a pole z={}'.format(center))
        series = np.zeros(order + 1, dtype=complex)
        for k in range(order + 1):
            series[k] = (num[k] - np.dot(den[1:k + 1], series[k - 1::-1] if k > 0 else [])) / den[0]
        return series

    def __repr__(self):
        return 'RatMap({!r} / {!r})'.format(self.num, self.den)


def _padded(coeffs: np.ndarray, order: int) -> np.ndarray:
    out = np.zeros(order + 1, dtype=complex)
    size = min(len(coeffs), order + 1)
    out[:size] = coeffs[:size]
    return out


def _common_roots(num_roots: List[Tuple[complex, int]],
                  den_roots: List[Tuple[complex, int]],
                  radius: float) -> List[Tuple[complex, int]]:
    remaining = {idx: mult for idx, (_, mult) in enumerate(den_roots)}
    common = []
    for root, mult in num_roots:
        for idx, (other, _) in enumerate(den_roots):
            if remaining[idx] > 0 and abs(root - other) <= radius:
                count = min(mult, remaining[idx])
                remaining[idx] -= count
                common.append(((root + other) / 2, count))
                break
    return common


def rat_reduce(r: RatMap, tol: float | None = None) -> RatMap:
    """
    Cancel common roots of numerator and denominator.

    :param r: the map.
    :param tol: pairing radius; defaults to ``GCD_TOL`` times the largest root modulus (at least 1).
    :return: the reduced map; ``r`` itself if nothing cancels.
    """
    if r.num.is_zero():
        return RatMap(ComplexPoly([0]), ComplexPoly([1]))
    if r.num.degree() == 0 or r.den.degree() == 0:
        return r
    num_roots = poly_roots(r.num)
    den_roots = poly_roots(r.den)
    if tol is None:
        scale = max([1.0] + [abs(z) for z, _ in num_roots + den_roots])
        tol = GCD_TOL * scale
    common = _common_roots(num_roots, den_roots, tol)
    if not common:
        return r
    num, den = r.num, r.den
    for root, count in common:
        factor = ComplexPoly.from_roots([root] * count)
        num = num.divmod(factor)[0]
        den = den.divmod(factor)[0]
    logging.debug('Cancelled common roots {}'.format(common))
    return RatMap(num, den)


def rat_derivative(r: RatMap) -> RatMap:
    """
    Quotient rule ``(num' den - num den') / den^2``, reduced.
    """
    top = (r.num.derivative() * r.den - r.num * r.den.derivative()).trimmed()
    if top.is_zero():
        return RatMap.constant(0)
    return rat_reduce(RatMap(top, r.den * r.den))
