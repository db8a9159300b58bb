"""
Contains the ``MoebiusTransform`` class. Transforms are stored as 2x2 coefficient matrices, so composition is a
matrix product and the inverse swaps the diagonal and negates the off-diagonal.
"""

from __future__ import annotations

import numpy as np

from newtonlab import helpers
from newtonlab.errors import DegenerateInput


class MoebiusTransform:
    """
    The map ``z -> (a z + b) / (c z + d)`` with ``ad - bc != 0``, acting on the Riemann sphere.
    """

    def __init__(self, a: complex, b: complex, c: complex, d: complex):
        self.matrix: np.ndarray = np.array([[a, b], [c, d]], dtype=complex)
        if self.determinant() == 0:
            raise DegenerateInput('Singular Moebius transform ({}, {}, {}, {})'.format(a, b, c, d))

    @staticmethod
    def identity() -> MoebiusTransform:
        return MoebiusTransform(1, 0, 0, 1)

    @staticmethod
    def create_disk_translation(b: complex) -> MoebiusTransform:
        """
        ``M_b(z) = (z + b) / (1 + b z)``, a disk automorphism for real ``|b| < 1`` sending 0 to ``b``.
        """
        return MoebiusTransform(1, b, b, 1)

    @staticmethod
    def create_disk_automorphism(a: complex) -> MoebiusTransform:
        """
        The disk automorphism sending ``a`` to 0 and fixing 1.

        :param a: a point of the open unit disk.
        :return: ``z -> (1 - conj(a)) / (1 - a) * (z - a) / (1 - conj(a) z)``.
        """
        scale = (1 - np.conj(a)) / (1 - a)
        return MoebiusTransform(scale, -scale * a, -np.conj(a), 1)

    @property
    def coefficients(self) -> tuple:
        return tuple(complex(value) for value in self.matrix.ravel())

    def determinant(self) -> complex:
        return complex(self.matrix[0, 0] * self.matrix[1, 1] - self.matrix[0, 1] * self.matrix[1, 0])

    def __call__(self, z):
        """
        Evaluate at a point or an array of points; the pole maps to infinity and infinity to ``a / c``.
        """
        (a, b), (c, d) = self.matrix
        z = np.asarray(z, dtype=complex)
        scalar = z.ndim == 0
        z = np.atleast_1d(z)
        finite = np.isfinite(z)
        with np.errstate(all='ignore'):
            zf = np.where(finite, z, 0)
            den = c * zf + d
            out = np.where(den == 0, helpers.INFINITY, (a * zf + b) / np.where(den == 0, 1, den))
            at_infinity = helpers.INFINITY if c == 0 else a / c
            out = np.where(finite, out, at_infinity)
        if scalar:
            return complex(out[0])
        return out

    def compose(self, other: MoebiusTransform) -> MoebiusTransform:
        """
        The transform ``self(other(z))``.
        """
        product = self.matrix @ other.matrix
        return MoebiusTransform(*product.ravel())

    def inverse(self) -> MoebiusTransform:
        (a, b), (c, d) = self.matrix
        return MoebiusTransform(d, -b, -c, a)

    def almost_equal(self, other: MoebiusTransform, tol: float = 1e-12) -> bool:
        """
        Equality as maps, i.e. of the coefficient matrices up to a common scalar.
        """
        pivot = np.unravel_index(np.argmax(np.abs(self.matrix)), self.matrix.shape)
        if other.matrix[pivot] == 0:
            return False
        scaled = other.matrix * (self.matrix[pivot] / other.matrix[pivot])
        return bool(np.max(np.abs(scaled - self.matrix)) <= tol * np.max(np.abs(self.matrix)))

    def __repr__(self):
        return 'MoebiusTransform{}'.format(self.coefficients)
