"""
Contains the ``DiskSurgeryModel`` class: the piecewise map ``g`` on the unit disk that equals ``z^k`` near the
boundary, ``M_b(z)^k`` on the small disk ``|z| <= r^k`` and ``h(z)^k`` on the annulus between, where ``h`` interpolates
the identity on ``|z| = r`` and ``M_b`` on ``|z| = r^k``.

``h`` works in polar coordinates about the center ``c0`` of the circle ``M_b(|z| = r^k)``: angles and log-radii about
``c0`` are interpolated linearly in the log-radius parameter of ``z``. Both boundary circles are star-shaped about
``c0``, so every ray from ``c0`` meets the annulus in one segment and ``h`` is a homeomorphism.
"""

from __future__ import annotations

import logging

import numpy as np

from newtonlab.blaschke.model.blaschkemodel import BlaschkeModel, attracting_fixed_point
from newtonlab.blaschke.model.moebius import MoebiusTransform
from newtonlab.errors import BadRadius

CONTINUITY_SAMPLES: int = 4096
FIXED_TOL: float = 1e-10


class DiskSurgeryModel:
    """
    The model map ``g`` for the parameters ``(k, b, r)``.
    """

    def __init__(self, k: int, b: float, r: float):
        """
        Create a new model.

        :param k: the degree.
        :param b: the Blaschke parameter, ``0 <= b < (k-1)/(k+1)``.
        :param r: the outer radius of the interpolation annulus, ``alpha < r < 1``.
        :raises BadRadius: if ``r`` is outside ``(alpha, 1)``.
        """
        self.k: int = k
        self.b: float = b
        self.alpha: float = attracting_fixed_point(k, b)
        if not self.alpha < r < 1:
            raise BadRadius('Radius {} outside ({}, 1)'.format(r, self.alpha))
        self.r: float = r
        self.inner: float = r ** k
        self.moebius: MoebiusTransform = MoebiusTransform.create_disk_translation(b)
        x1 = (self.inner + b) / (1 + b * self.inner)
        x2 = (b - self.inner) / (1 - b * self.inner)
        #: Center and radius of the image circle ``M_b(|z| = r^k)``
        self.center: float = (x1 + x2) / 2
        self.radius: float = (x1 - x2) / 2

    def blaschke(self) -> BlaschkeModel:
        return BlaschkeModel(self.k, self.b, self.alpha, 0.0)

    def _outer_distance(self, phi):
        c0 = self.center
        return -c0 * np.cos(phi) + np.sqrt(self.r ** 2 - (c0 * np.sin(phi)) ** 2)

    def h(self, z):
        """
        The interpolating map on the annulus ``r^k <= |z| <= r``, vectorised.
        """
        z = np.asarray(z, dtype=complex)
        modulus = np.abs(z)
        angle = np.angle(z)
        t = (np.log(modulus) - self.k * np.log(self.r)) / ((1 - self.k) * np.log(self.r))
        inner_point = self.moebius(self.inner * np.exp(1j * angle)) - self.center
        outer_point = self.r * np.exp(1j * angle) - self.center
        psi = np.angle(inner_point)
        beta = psi + np.angle(outer_point / inner_point)
        phi = (1 - t) * psi + t * beta
        log_rho = (1 - t) * np.log(self.radius) + t * np.log(self._outer_distance(phi))
        value = self.center + np.exp(log_rho + 1j * phi)
        return complex(value) if value.ndim == 0 else value

    def g(self, z):
        """
        The piecewise model map, vectorised over the closed unit disk.
        """
        z = np.asarray(z, dtype=complex)
        scalar = z.ndim == 0
        z = np.atleast_1d(z)
        modulus = np.abs(z)
        out = z ** self.k
        annulus = (modulus >= self.inner) & (modulus < self.r)
        if np.any(annulus):
            out[annulus] = self.h(z[annulus]) ** self.k
        small = modulus < self.inner
        if np.any(small):
            out[small] = self.moebius(z[small]) ** self.k
        return complex(out[0]) if scalar else out

    def __call__(self, z):
        return self.g(z)

    def fixed_point(self) -> complex:
        """
        The attracting fixed point of ``g``, ``M_b^-1(alpha) = alpha^k``.
        """
        return self.moebius.inverse()(self.alpha)

    def continuity_max_jump(self, samples: int = CONTINUITY_SAMPLES) -> float:
        """
        Largest difference between the two pieces of ``g`` on the circles ``|z| = r`` and ``|z| = r^k``.
        """
        circle = np.exp(2j * np.pi * np.arange(samples) / samples)
        outer = self.r * circle
        inner = self.inner * circle
        jump_outer = np.abs(outer ** self.k - self.h(outer) ** self.k)
        jump_inner = np.abs(self.h(inner) ** self.k - self.moebius(inner) ** self.k)
        return float(max(np.max(jump_outer), np.max(jump_inner)))

    def boundary_errors(self, samples: int = CONTINUITY_SAMPLES) -> dict:
        """
        Deviation of ``h`` from the identity on ``|z| = r`` and from ``M_b`` on ``|z| = r^k``.
        """
        circle = np.exp(2j * np.pi * np.arange(samples) / samples)
        outer = self.r * circle
        inner = self.inner * circle
        return {
            'outer': float(np.max(np.abs(self.h(outer) - outer))),
            'inner': float(np.max(np.abs(self.h(inner) - self.moebius(inner))))
        }

    def to_dict(self) -> dict:
        return {
            'k': self.k,
            'b': self.b,
            'alpha': self.alpha,
            'r': self.r,
            'fixed_point': self.fixed_point(),
            'continuity_max_jump': self.continuity_max_jump()
        }


def interpolate_h(k: int, b: float, r: float):
    """
    The interpolation map ``h`` of the model ``(k, b, r)``.

    :raises BadRadius: if ``r`` is outside ``(alpha, 1)``.
    """
    return DiskSurgeryModel(k, b, r).h


def build_model_g(k: int, b: float, r: float) -> DiskSurgeryModel:
    """
    Build the model map and check its fixed point.

    :param k: the degree.
    :param b: the Blaschke parameter.
    :param r: the annulus radius.
    :return: the model.
    :raises BadRadius: if ``r`` is outside ``(alpha, 1)``.
    """
    model = DiskSurgeryModel(k, b, r)
    xi = model.fixed_point()
    residual = abs(model.g(xi) - xi)
    if residual > FIXED_TOL:
        logging.warning('Model fixed point {} is off by {:.3g}'.format(xi, residual))
    logging.debug('Built disk model k={} b={} r={}'.format(k, b, r))
    return model
