"""
Numerical dilatation of the surgery maps and the decay of the area where it is large.

The dilatation of a map ``F`` at ``z`` is ``K = (|F_z| + |F_zbar|) / (|F_z| - |F_zbar|)``, with the Wirtinger
derivatives taken from central differences along the real and imaginary directions.
"""

from __future__ import annotations

import logging
from typing import Callable, List, Sequence, Tuple

import numpy as np
from scipy import stats

from newtonlab.errors import DegenerateJacobian, EmptyTail
from newtonlab.surgery.model.disk import DiskSurgeryModel
from newtonlab.surgery.model.sector import SectorModel

DELTA_SCALE: float = 1e-5  #: Difference step relative to ``|z|``.
TINY: float = 1e-300
HOLOMORPHIC_TOL: float = 1e-9  #: Fields with ``max K <= 1 + HOLOMORPHIC_TOL`` count as conformal.
FLOOR_TOL: float = 1e-9  #: Slack below 1 tolerated in a field.
EXPONENTIAL_R2: float = 0.9
HALF_SLOPE_LIMIT: float = 2.0
MIN_FIT_POINTS: int = 4


def numerical_dilatation(func: Callable, z, delta: float | None = None):
    """
    Dilatation of ``func`` at a point or an array of points.

    :param func: a vectorised map.
    :param z: evaluation points.
    :param delta: difference step, ``1e-5 max(|z|, tiny)`` per point by default.
    :return: ``K``, a float for a scalar ``z``.
    :raises DegenerateJacobian: if ``|F_z| <= |F_zbar|`` at some point.
    """
    z = np.asarray(z, dtype=complex)
    step = delta if delta is not None else DELTA_SCALE * np.maximum(np.abs(z), TINY)
    fx = (np.asarray(func(z + step)) - np.asarray(func(z - step))) / (2 * step)
    fy = (np.asarray(func(z + 1j * step)) - np.asarray(func(z - 1j * step))) / (2 * step)
    holomorphic = np.abs((fx - 1j * fy) / 2)
    antiholomorphic = np.abs((fx + 1j * fy) / 2)
    if np.any(holomorphic <= antiholomorphic):
        raise DegenerateJacobian('Jacobian is not orientation preserving at {}'.format(
            z[holomorphic <= antiholomorphic] if z.ndim else z))
    value = (holomorphic + antiholomorphic) / (holomorphic - antiholomorphic)
    return float(value) if value.ndim == 0 else value


def refined_dilatation(func: Callable, z) -> Tuple[np.ndarray, float]:
    """
    Dilatation at the default step and the largest relative change when the step is halved.
    """
    z = np.asarray(z, dtype=complex)
    step = DELTA_SCALE * np.maximum(np.abs(z), TINY)
    coarse = np.asarray(numerical_dilatation(func, z, step))
    fine = np.asarray(numerical_dilatation(func, z, step / 2))
    return fine, float(np.max(np.abs(fine - coarse) / fine))


class DilatationField:
    """
    Sampled dilatation: points, their ``K`` values and the area each sample stands for.
    """

    def __init__(self, points: np.ndarray, values: np.ndarray, areas: np.ndarray, domain: str = ''):
        """
        Create a new field.

        :param points: sample points.
        :param values: dilatation at each point, at least 1.
        :param areas: area weight of each point.
        :param domain: a short description of where the samples lie.
        """
        self.points: np.ndarray = np.asarray(points, dtype=complex).ravel()
        self.values: np.ndarray = np.asarray(values, dtype=float).ravel()
        self.areas: np.ndarray = np.asarray(areas, dtype=float).ravel()
        self.domain: str = domain
        if self.values.size and np.min(self.values) < 1 - FLOOR_TOL:
            raise ValueError('Dilatation below 1 in {}: {}'.format(domain, np.min(self.values)))

    @staticmethod
    def create_from_map(func: Callable, points, areas, domain: str = '') -> DilatationField:
        points = np.asarray(points, dtype=complex).ravel()
        return DilatationField(points, numerical_dilatation(func, points), areas, domain)

    @staticmethod
    def combine(fields: Sequence[DilatationField], domain: str = '') -> DilatationField:
        return DilatationField(np.concatenate([field.points for field in fields]),
                               np.concatenate([field.values for field in fields]),
                               np.concatenate([field.areas for field in fields]),
                               domain)

    def is_conformal(self) -> bool:
        return bool(self.values.size == 0 or np.max(self.values) <= 1 + HOLOMORPHIC_TOL)

    def total_area(self) -> float:
        return float(np.sum(self.areas))

    def summary(self) -> dict:
        return {
            'domain': self.domain,
            'samples': int(self.values.size),
            'max': float(np.max(self.values)) if self.values.size else 1.0,
            'median': float(np.median(self.values)) if self.values.size else 1.0,
            'area': self.total_area()
        }


def _annulus_grid(model: DiskSurgeryModel, radial: int, angular: int) -> Tuple[np.ndarray, np.ndarray]:
    edges = np.exp(np.linspace(np.log(model.inner), np.log(model.r), radial + 1))
    radii = np.sqrt(edges[:-1] * edges[1:])
    angles = (np.arange(angular) + 0.5) * 2 * np.pi / angular
    points = (radii[:, None] * np.exp(1j * angles[None, :])).ravel()
    areas = np.repeat(0.5 * (edges[1:] ** 2 - edges[:-1] ** 2) * 2 * np.pi / angular, angular)
    return points, areas


def disk_field(model: DiskSurgeryModel, m: int = 0, radial: int = 16, angular: int = 48) -> DilatationField:
    """
    Dilatation of ``z -> h(z^(k^m))`` on the preimage of the interpolation annulus under ``z^(k^m)``.

    The samples are the pullbacks of a log-polar grid of the annulus along the principal branch, so one sector of the
    preimage stands for all ``k^m`` of them.
    """
    power = model.k ** m
    points, areas = _annulus_grid(model, radial, angular)
    pulled = np.abs(points) ** (1.0 / power) * np.exp(1j * np.angle(points) / power)

    def composed(z):
        return model.h(z ** power)

    values = numerical_dilatation(composed, pulled)
    # Jacobian of z^P is P^2 |z|^(2P-2); P branches share each value
    weights = power / (power ** 2 * np.abs(pulled) ** (2 * power - 2))
    return DilatationField(pulled, values, areas * weights, 'disk level {}'.format(m))


def sector_field(sector: SectorModel, ms: Sequence[int], radial: int = 16, angular: int = 48) -> DilatationField:
    """
    Dilatation of ``chi`` sampled on the quadrilaterals ``Q_m`` for each ``m`` in ``ms``.
    """
    fields = []
    for m in ms:
        points, areas = sector.quadrilateral_grid(m, radial, angular)
        fields.append(DilatationField.create_from_map(sector.chi, points, areas, 'Q_{}'.format(m)))
    return DilatationField.combine(fields, 'sector lambda={}'.format(sector.lam))


def dilatation_profile(target, ms: Sequence[int], radial: int = 16, angular: int = 48) -> List[dict]:
    """
    Largest and median dilatation per level ``m``.

    :param target: a :py:class:`SectorModel` (levels are the quadrilaterals ``Q_m``) or a
        :py:class:`DiskSurgeryModel` (levels are the pullbacks of the annulus under ``z^(k^m)``).
    :param ms: the levels.
    :param radial: grid cells along the radius.
    :param angular: grid cells along the angle.
    :return: one ``{m, max, median}`` entry per level.
    """
    rows = []
    for m in ms:
        if isinstance(target, SectorModel):
            field = sector_field(target, [m], radial, angular)
        elif isinstance(target, DiskSurgeryModel):
            field = disk_field(target, m, radial, angular)
        else:
            raise TypeError('No dilatation profile for {}'.format(type(target).__name__))
        summary = field.summary()
        rows.append({'m': m, 'max': summary['max'], 'median': summary['median']})
    return rows


def area_tail(field: DilatationField, thresholds: Sequence[float]) -> List[Tuple[float, float]]:
    """
    Area of ``{K > K0}`` for each threshold ``K0``.

    :param field: the sampled field.
    :param thresholds: the thresholds.
    :return: ``(K0, area)`` pairs; all areas are 0 for a conformal field.
    :raises EmptyTail: if a non-conformal field has no sample above the smallest threshold.
    """
    thresholds = sorted(float(value) for value in thresholds)
    tail = [(k0, float(np.sum(field.areas[field.values > k0]))) for k0 in thresholds]
    if not field.is_conformal() and tail and tail[0][1] == 0:
        raise EmptyTail('No sample of {} exceeds K0 = {}'.format(field.domain, thresholds[0]))
    return tail


def _slope(x: np.ndarray, y: np.ndarray) -> float:
    if x.size < 2:
        return float('nan')
    return float(stats.linregress(x, y).slope)


def fit_tail(xs: Sequence[float], areas: Sequence[float]) -> dict:
    """
    Fit ``log(area)`` linearly against ``xs`` and decide whether the decay is exponential.

    The decay counts as exponential when the slope is negative, the fit explains at least 90% of the variance and the
    slopes fitted on the two halves of the range agree within a factor of 2.

    :param xs: the abscissae, thresholds ``K0`` or levels ``m``.
    :param areas: the areas.
    :return: a dictionary with ``slope``, ``intercept``, ``r2``, ``half_slope_ratio``, ``exponential`` and ``points``.
    :raises EmptyTail: if fewer than 4 areas are positive.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(areas, dtype=float)
    keep = y > 0
    x, y = x[keep], np.log(y[keep])
    if x.size < MIN_FIT_POINTS:
        raise EmptyTail('Need {} positive areas to fit a tail, got {}'.format(MIN_FIT_POINTS, x.size))
    fit = stats.linregress(x, y)
    half = x.size // 2
    first, second = _slope(x[:half], y[:half]), _slope(x[half:], y[half:])
    low, high = sorted((abs(first), abs(second)))
    ratio = high / low if low > 0 else float('inf')
    r2 = float(fit.rvalue ** 2)
    exponential = bool(fit.slope < 0 and r2 >= EXPONENTIAL_R2 and ratio <= HALF_SLOPE_LIMIT)
    logging.debug('Tail fit slope={:.4g} r2={:.4g} half ratio={:.3g}'.format(fit.slope, r2, ratio))
    return {
        'slope': float(fit.slope),
        'intercept': float(fit.intercept),
        'r2': r2,
        'half_slope_ratio': ratio,
        'exponential': exponential,
        'points': int(x.size)
    }


def level_maxima(field: DilatationField, levels: int) -> List[float]:
    """
    Largest dilatation of each level of a field sampled level by level with the same number of cells per level.
    """
    return [float(np.max(values)) for values in field.values.reshape(levels, -1)]
