"""
Local model at a repelling fixed point with multiplier ``lambda``: the map ``f(z) = lambda z`` near 0, the coordinate
``omega(z) = Log(lambda) / Log(z)`` which conjugates ``f`` to ``w -> w / (w + 1)``, the sector
``S = {theta <= arg z <= 2 pi - theta, 0 < |z| < lambda^-m0}`` and its quadrilaterals
``Q_m = {z in S : lambda^-(m+1) <= |z| <= lambda^-m}``.

Inside ``S`` the coordinate is replaced by ``chi``, which keeps ``|omega|`` of the sector edge at the same modulus and
turns the argument from one edge value to the other through the half-plane that ``omega`` leaves uncovered.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from newtonlab.errors import BranchCut, OutOfDomain

THETA: float = np.pi / 4  #: Default half-opening of the sector gap.
M0: int = 5  #: Default first quadrilateral.
CONJUGACY_SAMPLES: int = 1000


def omega_map(lam: float, z):
    """
    ``Log(lambda) / Log(z)`` on the principal branch, vectorised.

    :param lam: the multiplier, ``lambda > 1``.
    :param z: point or array of points.
    :return: the coordinate value.
    :raises BranchCut: at 0, at 1 and on the negative real axis.
    """
    z = np.asarray(z, dtype=complex)
    if np.any((z == 0) | (z == 1) | ((z.imag == 0) & (z.real < 0))):
        raise BranchCut('Log undefined or ambiguous at {}'.format(z))
    value = np.log(lam) / np.log(z)
    return complex(value) if value.ndim == 0 else value


def parabolic_model(w):
    """
    The parabolic germ ``w / (w + 1)``, conjugate to ``z -> lambda z`` through :py:func:`omega_map`.
    """
    return w / (w + 1)


def model_conjugacy(lam: float, theta: float = THETA, m0: int = M0, samples: int = CONJUGACY_SAMPLES,
                    seed: int = 0) -> float:
    """
    Largest ``|omega(lambda z) - omega(z) / (omega(z) + 1)|`` over random points of the gap ``|arg z| < theta``, where
    ``omega`` is not replaced by ``chi``. The moduli stay below ``lambda^-(m0+1)`` so ``lambda z`` is inside the disk too.

    :param lam: the multiplier, ``lambda > 1``.
    :param theta: half-opening of the gap.
    :param m0: index of the outermost quadrilateral.
    :param samples: number of points.
    :param seed: seed of the sample generator.
    :return: the largest deviation.
    """
    rng = np.random.default_rng(seed)
    z = lam ** -(m0 + 1 + rng.uniform(0, 8, samples)) * np.exp(1j * rng.uniform(-theta, theta, samples))
    return float(np.max(np.abs(omega_map(lam, lam * z) - parabolic_model(omega_map(lam, z)))))


class SectorModel:
    """
    The sector ``S`` and quadrilaterals ``Q_m`` for one multiplier.
    """

    def __init__(self, lam: float, theta: float = THETA, m0: int = M0):
        """
        Create a new sector model.

        :param lam: the multiplier, ``lambda > 1``.
        :param theta: half-opening of the gap around the positive real axis, in ``(0, pi)``.
        :param m0: index of the outermost quadrilateral.
        """
        if not lam > 1:
            raise OutOfDomain('Sector model needs lambda > 1, got {}'.format(lam))
        if not 0 < theta < np.pi:
            raise OutOfDomain('Sector angle {} outside (0, pi)'.format(theta))
        self.lam: float = lam
        self.theta: float = theta
        self.m0: int = m0

    def contains(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        angle = np.mod(np.angle(z), 2 * np.pi)
        return (z != 0) & (np.abs(z) < 1) & (angle >= self.theta) & (angle <= 2 * np.pi - self.theta)

    def chi(self, z):
        """
        The extension of ``omega`` into the sector, vectorised. It equals ``omega`` on both edges.

        :param z: point or array of points of the sector, ``0 < |z| < 1``.
        :return: the extended coordinate.
        :raises OutOfDomain: if a point lies outside the sector.
        """
        z = np.asarray(z, dtype=complex)
        if not np.all(self.contains(z)):
            raise OutOfDomain('Point outside the sector: {}'.format(z[~self.contains(z)] if z.ndim else z))
        modulus = np.abs(z)
        phi = np.mod(np.angle(z), 2 * np.pi)
        edge = omega_map(self.lam, modulus * np.exp(1j * self.theta))
        start = np.angle(edge)
        stop = -start
        t = (phi - self.theta) / (2 * np.pi - 2 * self.theta)
        value = np.abs(edge) * np.exp(1j * (start + t * (stop - start)))
        value = np.where(phi == self.theta, edge, value)
        value = np.where(phi == 2 * np.pi - self.theta, np.conj(edge), value)
        return complex(value) if value.ndim == 0 else value

    def __call__(self, z):
        return self.chi(z)

    def quadrilateral_bounds(self, m: int) -> Tuple[float, float]:
        return self.lam ** -(m + 1), self.lam ** -m

    def ring_edges(self, m: int, radial: int = 16) -> np.ndarray:
        """
        Log-spaced radii splitting ``Q_m`` into ``radial`` rings, innermost first.
        """
        inner, outer = self.quadrilateral_bounds(m)
        return np.exp(np.linspace(np.log(inner), np.log(outer), radial + 1))

    def quadrilateral_grid(self, m: int, radial: int = 16, angular: int = 48) -> Tuple[np.ndarray, np.ndarray]:
        """
        Cell centres of a log-polar grid on ``Q_m`` and the area of each cell.

        :param m: the quadrilateral index.
        :param radial: cells along the radius.
        :param angular: cells along the angle.
        :return: points and cell areas.
        """
        edges = self.ring_edges(m, radial)
        span = 2 * np.pi - 2 * self.theta
        angles = self.theta + (np.arange(angular) + 0.5) * span / angular
        radii = np.sqrt(edges[:-1] * edges[1:])
        ring_area = 0.5 * (edges[1:] ** 2 - edges[:-1] ** 2) * span / angular
        points = (radii[:, None] * np.exp(1j * angles[None, :])).ravel()
        areas = np.repeat(ring_area, angular)
        return points, areas

    def to_dict(self) -> dict:
        return {'lambda': self.lam, 'theta': self.theta, 'm0': self.m0}


def measure_rm(lam: float, theta: float, ms: List[int]) -> List[dict]:
    """
    ``r_m = |omega(lambda^-m e^(i theta))|`` and ``m r_m``, which stays bounded above and below.

    :param lam: the multiplier.
    :param theta: the edge angle.
    :param ms: quadrilateral indices.
    :return: one ``{m, r_m, m_r_m}`` entry per index.
    """
    rows = []
    for m in ms:
        r_m = abs(omega_map(lam, lam ** -m * np.exp(1j * theta)))
        rows.append({'m': m, 'r_m': r_m, 'm_r_m': m * r_m})
    return rows
