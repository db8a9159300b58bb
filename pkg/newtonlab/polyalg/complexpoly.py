"""
Contains the ``ComplexPoly`` class, a dense polynomial with complex coefficients stored lowest power first, and the
module-level operations built on it.
"""

from __future__ import annotations

import logging
from typing import List, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from newtonlab.errors import DegenerateInput
from newtonlab.polyalg import roots as rootfinder

#: Relative size below which a leading coefficient produced by cancellation is treated as zero.
CANCELLATION_TOL: float = 1e-12


class ComplexPoly:
    """
    Immutable dense polynomial. Exact trailing zeros are trimmed on construction, so ``degree()`` is the index of the
    leading coefficient; the zero polynomial is stored as a single zero coefficient.
    """

    def __init__(self, coeffs: Sequence[complex] | np.ndarray | None = None):
        """
        Create a new polynomial.

        :param coeffs: coefficients, lowest power first. ``None`` or an empty list gives the zero polynomial.
        """
        if coeffs is None:
            coeffs = [0]
        arr = np.array(coeffs, dtype=complex, ndmin=1).ravel()
        if arr.size == 0:
            arr = np.zeros(1, dtype=complex)
        nonzero = np.nonzero(arr)[0]
        arr = arr[:nonzero[-1] + 1] if nonzero.size else np.zeros(1, dtype=complex)
        arr.setflags(write=False)
        self.coeffs: np.ndarray = arr

    @staticmethod
    def from_roots(roots: Sequence[complex], leading: complex = 1.0) -> ComplexPoly:
        """
        Build ``leading * prod(z - r)``.

        :param roots: the roots, repeated according to multiplicity.
        :param leading: the leading coefficient.
        :return: the polynomial.
        """
        if len(roots) == 0:
            return ComplexPoly([leading])
        return ComplexPoly(leading * P.polyfromroots(np.asarray(roots, dtype=complex)))

    @staticmethod
    def monomial(power: int, coeff: complex = 1.0) -> ComplexPoly:
        coeffs = np.zeros(power + 1, dtype=complex)
        coeffs[power] = coeff
        return ComplexPoly(coeffs)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def leading(self) -> complex:
        return complex(self.coeffs[-1])

    def trimmed(self, tol: float = CANCELLATION_TOL) -> ComplexPoly:
        """
        Drop leading coefficients that are tiny relative to the largest one. Used after subtractions whose top terms
        cancel in exact arithmetic.

        :param tol: relative threshold.
        :return: the trimmed polynomial.
        """
        scale = np.max(np.abs(self.coeffs))
        if scale == 0:
            return self
        coeffs = self.coeffs
        top = len(coeffs) - 1
        while top > 0 and abs(coeffs[top]) <= tol * scale:
            top -= 1
        if top == len(coeffs) - 1:
            return self
        return ComplexPoly(coeffs[:top + 1])

    def monic(self) -> ComplexPoly:
        if self.is_zero():
            return self
        return ComplexPoly(self.coeffs / self.coeffs[-1])

    def __call__(self, z):
        """
        Horner evaluation, elementwise on arrays.

        :param z: point or array of points.
        :return: ``p(z)``.
        """
        value = P.polyval(np.asarray(z, dtype=complex), self.coeffs)
        if np.ndim(value) == 0:
            return complex(value)
        return value

    def derivative(self, order: int = 1) -> ComplexPoly:
        if self.degree() < order:
            return ComplexPoly([0])
        return ComplexPoly(P.polyder(self.coeffs, order))

    def shift(self, center: complex) -> ComplexPoly:
        """
        Taylor shift: the polynomial ``h -> p(center + h)``.

        :param center: the expansion point.
        :return: the shifted polynomial.
        """
        result = np.array([self.coeffs[-1]], dtype=complex)
        linear = np.array([center, 1.0], dtype=complex)
        for coeff in self.coeffs[-2::-1]:
            result = P.polyadd(P.polymul(result, linear), [coeff])
        return ComplexPoly(result)

    def reversed(self, degree: int | None = None) -> ComplexPoly:
        """
        Coefficient reversal ``w^D p(1/w)``.

        :param degree: the padding degree ``D``, at least ``degree()``; defaults to ``degree()``.
        :return: the reversed polynomial.
        """
        if degree is None:
            degree = self.degree()
        padded = np.zeros(degree + 1, dtype=complex)
        padded[:len(self.coeffs)] = self.coeffs
        return ComplexPoly(padded[::-1])

    def divmod(self, divisor: ComplexPoly) -> Tuple[ComplexPoly, ComplexPoly]:
        """
        Euclidean division.

        :param divisor: a nonzero polynomial.
        :return: quotient and remainder.
        """
        if divisor.is_zero():
            raise DegenerateInput('Division by the zero polynomial')
        quotient, remainder = P.polydiv(self.coeffs, divisor.coeffs)
        return ComplexPoly(quotient), ComplexPoly(remainder)

    def roots(self, tol: float = rootfinder.CLUSTER_TOL) -> List[Tuple[complex, int]]:
        return poly_roots(self, tol)

    def almost_equal(self, other: ComplexPoly, tol: float = 1e-10) -> bool:
        """
        Coefficientwise comparison after trimming, relative to the larger coefficient scale.
        """
        a = self.trimmed(tol)
        b = other.trimmed(tol)
        if a.degree() != b.degree():
            return False
        scale = max(1.0, float(np.max(np.abs(a.coeffs))), float(np.max(np.abs(b.coeffs))))
        return bool(np.max(np.abs(a.coeffs - b.coeffs)) <= tol * scale)

    def __add__(self, other) -> ComplexPoly:
        return poly_arith(self, _as_poly(other), 'add')

    __radd__ = __add__

    def __sub__(self, other) -> ComplexPoly:
        return poly_arith(self, _as_poly(other), 'sub')

    def __rsub__(self, other) -> ComplexPoly:
        return poly_arith(_as_poly(other), self, 'sub')

    def __mul__(self, other) -> ComplexPoly:
        if isinstance(other, ComplexPoly):
            return poly_arith(self, other, 'mul')
        return poly_arith(self, other, 'scale')

    __rmul__ = __mul__

    def __neg__(self) -> ComplexPoly:
        return ComplexPoly(-self.coeffs)

    def __repr__(self):
        return 'ComplexPoly({})'.format([complex(c) for c in self.coeffs])


def _as_poly(value) -> ComplexPoly:
    if isinstance(value, ComplexPoly):
        return value
    return ComplexPoly([value])


def poly_arith(a: ComplexPoly, b: ComplexPoly | complex, op: str) -> ComplexPoly:
    """
    Polynomial arithmetic.

    :param a: left operand.
    :param b: right operand; a scalar for ``scale``.
    :param op: one of ``add``, ``sub``, ``mul`` or ``scale``.
    :return: the trimmed result.
    """
    if op == 'add':
        return ComplexPoly(P.polyadd(a.coeffs, b.coeffs))
    if op == 'sub':
        return ComplexPoly(P.polysub(a.coeffs, b.coeffs))
    if op == 'mul':
        return ComplexPoly(P.polymul(a.coeffs, b.coeffs))
    if op == 'scale':
        factor = b.coeffs[0] if isinstance(b, ComplexPoly) else complex(b)
        return ComplexPoly(a.coeffs * factor)
    raise ValueError('Unknown polynomial operation {}'.format(op))


def poly_eval(p: ComplexPoly, z: complex) -> complex:
    return p(z)


def poly_derivative(p: ComplexPoly) -> ComplexPoly:
    return p.derivative()


def poly_roots(p: ComplexPoly, tol: float = rootfinder.CLUSTER_TOL) -> List[Tuple[complex, int]]:
    """
    Roots of ``p`` with multiplicities. Exact zero low-order coefficients are factored out as a root at 0; the rest
    goes through the simultaneous Aberth-Ehrlich solver, near-coincident roots are merged into clusters and every
    cluster is polished.

    :param p: a polynomial of degree at least 1.
    :param tol: clustering tolerance; a cluster of ``m`` roots may spread over ``tol**(1/m)``.
    :return: ``(root, multiplicity)`` pairs, multiplicities summing to ``deg p``, sorted by real then imaginary part.
    """
    if p.degree() < 1:
        raise DegenerateInput('Cannot find roots of a constant polynomial {}'.format(p))
    coeffs = p.coeffs
    zero_mult = int(np.argmax(coeffs != 0))
    found: List[Tuple[complex, int]] = []
    if zero_mult > 0:
        found.append((0j, zero_mult))
    reduced = coeffs[zero_mult:]
    if len(reduced) > 1:
        approx = rootfinder.aberth(reduced)
        for center, mult in rootfinder.cluster(approx, tol):
            found.append((rootfinder.polish(reduced, center, mult), mult))
    found.sort(key=lambda rm: (round(rm[0].real, 9), round(rm[0].imag, 9)))
    logging.debug('Roots of degree {} polynomial: {}'.format(p.degree(), found))
    return found
