"""
Area condition for the surgery at the repelling fixed point infinity of a polynomial Newton map.

The model sector lives in the chart ``w = 1/z`` at infinity, where the map multiplies by ``rho = d / (d - 1)``. Every
point ``y`` with ``N^j(y) = infinity`` carries a pulled-back copy of the sector: near ``y`` the composite
``w = 1 / N^j(z)`` behaves like ``c (z - y)^e``, so the copy has ``e`` components, the same dilatation values as the
model, and areas scaled by the local germ. Every sample is then moved by Newton's method onto an exact solution of
``1 / N^j(z) = w``.

Areas are spherical, ``4 dA / (1 + |z|^2)^2``, in the chart and in the plane alike.
"""

from __future__ import annotations

import logging
from typing import List, Sequence, Tuple

import numpy as np

from newtonlab.errors import DepthOverflow, EmptyTail, OutOfDomain
from newtonlab.newton.model.newtonmap import NewtonMapSpec, first_nonvanishing
from newtonlab.polyalg.complexpoly import poly_roots
from newtonlab.polyalg.ratmap import RatMap
from newtonlab.surgery.model.dilatation import DilatationField, area_tail, fit_tail, level_maxima, sector_field
from newtonlab.surgery.model.sector import M0, THETA, SectorModel

MAX_PREIMAGES: int = 4096  #: Budget on the number of preimage sectors.
LEVELS: int = 16  #: Default number of quadrilaterals sampled.
REFINE_STEPS: int = 50
REFINE_TOL: float = 1e-15  #: Relative Newton step below which a pulled-back sample counts as refined.
RESIDUAL_TOL: float = 1e-10  #: Relative residual of ``1 / N^j(z) = w`` tolerated after refinement.
SPHERICAL_DENSITY_MAX: float = 4.0


class PreimageSector:
    """
    A pulled-back copy of the model sector at a point ``y`` with ``N^depth(y) = infinity``.
    """

    def __init__(self, point: complex, depth: int, local_degree: int, coefficient: complex):
        """
        Create a new preimage sector.

        :param point: the point ``y``.
        :param depth: the ``j`` with ``N^j(y) = infinity``.
        :param local_degree: ``e``, the local degree of ``N^j`` at ``y`` and the number of components.
        :param coefficient: ``c`` in ``1 / N^j(z) ~ c (z - y)^e``.
        """
        self.point: complex = point
        self.depth: int = depth
        self.local_degree: int = local_degree
        self.coefficient: complex = coefficient

    def radius(self, chart_radius) -> np.ndarray:
        """
        Distance from ``y`` of the points whose chart coordinate has modulus ``chart_radius``.
        """
        return (np.asarray(chart_radius) / abs(self.coefficient)) ** (1.0 / self.local_degree)

    def pull_back(self, w, ratmap: RatMap | None = None) -> np.ndarray:
        """
        One representative preimage of each chart point ``w`` next to the principal branch of the germ.

        :param w: chart point or array of chart points.
        :param ratmap: the map ``N``; when given, the germ value is refined onto ``1 / N^depth(z) = w``.
        :return: the preimages.
        """
        w = np.asarray(w, dtype=complex)
        z = self.point + (w / self.coefficient) ** (1.0 / self.local_degree)
        if ratmap is None:
            return z
        return refine_preimage(ratmap, self.depth, w, z)

    def to_dict(self, area: float | None = None) -> dict:
        data = {
            'point': self.point,
            'depth': self.depth,
            'local_degree': self.local_degree,
            'components': self.local_degree,
            'coefficient': self.coefficient
        }
        if area is not None:
            data['area'] = area
        return data


def chart_multiplier(N: NewtonMapSpec) -> float:
    """
    ``rho``, the multiplier of infinity in the chart ``w = 1/z``, ``d / (d - 1)`` for a polynomial with simple roots.

    :raises OutOfDomain: if infinity is not repelling.
    """
    derivative = complex(N.map.chart.taylor_at(0, 1)[1])
    if abs(derivative) <= 1:
        raise OutOfDomain('Infinity is not a repelling fixed point of {}'.format(N))
    return abs(derivative)


def chart_orbit(ratmap: RatMap, depth: int, z) -> Tuple[np.ndarray, np.ndarray]:
    """
    ``1 / N^depth(z)`` and its derivative, elementwise.

    :param ratmap: the map ``N``.
    :param depth: number of iterates, at least 1.
    :param z: point or array of finite points.
    :return: the chart value and its derivative.
    """
    value = np.asarray(z, dtype=complex)
    slope = np.ones_like(value)
    dnum, dden = ratmap.num.derivative(), ratmap.den.derivative()
    with np.errstate(all='ignore'):
        for _ in range(depth - 1):
            top, bottom = ratmap.num(value), ratmap.den(value)
            slope = slope * (dnum(value) * bottom - top * dden(value)) / bottom ** 2
            value = top / bottom
        top, bottom = ratmap.num(value), ratmap.den(value)
        slope = slope * (dden(value) * top - bottom * dnum(value)) / top ** 2
        return bottom / top, slope


def refine_preimage(ratmap: RatMap, depth: int, w, z, steps: int = REFINE_STEPS) -> np.ndarray:
    """
    Newton's method on ``1 / N^depth(z) = w`` from the starting points ``z``.

    :param ratmap: the map ``N``.
    :param depth: number of iterates.
    :param w: chart targets.
    :param z: starting points, of the same shape.
    :param steps: iteration budget.
    :return: the refined points.
    """
    w = np.asarray(w, dtype=complex)
    z = np.array(z, dtype=complex)
    for _ in range(steps):
        value, slope = chart_orbit(ratmap, depth, z)
        with np.errstate(all='ignore'):
            step = (value - w) / slope
        step = np.where(np.isfinite(step), step, 0)
        z = z - step
        if np.all(np.abs(step) <= REFINE_TOL * np.maximum(np.abs(z), 1)):
            break
    residual = np.abs(chart_orbit(ratmap, depth, z)[0] - w)
    if np.any(residual > RESIDUAL_TOL * np.maximum(np.abs(w), REFINE_TOL)):
        logging.warning('Pulled-back samples at depth {} off by up to {:.3g} in the chart'.format(
            depth, float(np.max(residual))))
    return z


def spherical_density(z) -> np.ndarray:
    """
    Density ``4 / (1 + |z|^2)^2`` of the spherical area with respect to the plane area.
    """
    return SPHERICAL_DENSITY_MAX / (1 + np.abs(np.asarray(z)) ** 2) ** 2


def _local_germ(ratmap: RatMap, center: complex, target: complex, order: int, fallback: int) -> Tuple[int, complex]:
    series = ratmap.taylor_at(center, order)
    series[0] -= target
    degree = first_nonvanishing(series, 1) or fallback
    return degree, complex(series[degree]) if degree < len(series) else 1.0


def preimage_sectors(N: NewtonMapSpec, depth: int,
                     max_preimages: int = MAX_PREIMAGES) -> Tuple[List[PreimageSector], List[dict]]:
    """
    Enumerate the points ``y`` with ``N^j(y) = infinity`` for ``1 <= j <= depth`` and the germs there.

    :param N: a polynomial Newton map.
    :param depth: the deepest level.
    :param max_preimages: budget on the total count.
    :return: the sectors and one flag per single step whose local degree exceeds ``d - 2``.
    :raises DepthOverflow: if the count exceeds the budget.
    """
    if depth < 1:
        return [], []
    order = 2 * N.d
    bound = N.d - 2
    flags = []
    level = []
    inverted = RatMap(N.map.den, N.map.num)
    for pole, mult in poly_roots(N.map.den) if N.map.den.degree() > 0 else []:
        degree, coefficient = _local_germ(inverted, pole, 0, order, mult)
        level.append(PreimageSector(pole, 1, degree, coefficient))
        if degree > bound:
            flags.append({'point': pole, 'depth': 1, 'step_degree': degree, 'bound': bound})
    sectors = list(level)
    for j in range(2, depth + 1):
        following = []
        for sector in level:
            fibre = N.map.num - N.map.den * sector.point
            for point, mult in poly_roots(fibre):
                step, a = _local_germ(N.map, point, sector.point, order, mult)
                following.append(PreimageSector(point, j, sector.local_degree * step,
                                                sector.coefficient * a ** sector.local_degree))
                if step > bound:
                    flags.append({'point': point, 'depth': j, 'step_degree': step, 'bound': bound})
        sectors.extend(following)
        if len(sectors) > max_preimages:
            raise DepthOverflow('{} preimage sectors at depth {} exceed the budget {}'.format(
                len(sectors), j, max_preimages))
        level = following
    if len(sectors) > max_preimages:
        raise DepthOverflow('{} preimage sectors exceed the budget {}'.format(len(sectors), max_preimages))
    for flag in flags:
        logging.warning('Local degree {} at {} (depth {}) exceeds d-2 = {}'.format(
            flag['step_degree'], flag['point'], flag['depth'], flag['bound']))
    return sectors, flags


def _sector_areas(sector: SectorModel, ms: Sequence[int], radial: int, angular: int,
                  local_degree: int = 1, coefficient: complex = 1.0) -> np.ndarray:
    """
    Exact area of the preimage of every grid cell under ``z -> c z^e``, in grid order.
    """
    span = 2 * np.pi - 2 * sector.theta
    exponent = 2.0 / local_degree
    scale = abs(coefficient) ** -exponent
    rings = []
    for m in ms:
        edges = sector.ring_edges(m, radial)
        rings.append(0.5 * span / angular * scale * (edges[1:] ** exponent - edges[:-1] ** exponent))
    return np.repeat(np.concatenate(rings), angular)


def newton_area_condition(N: NewtonMapSpec,
                          depth: int = 1,
                          theta: float = THETA,
                          ms: Sequence[int] | None = None,
                          gap_direction: complex = 1.0,
                          radial: int = 16,
                          angular: int = 48,
                          max_preimages: int = MAX_PREIMAGES) -> dict:
    """
    Measure the decay of ``Area{K > K_m}`` over the union of the model sector at infinity and its preimage sectors.

    Every area is spherical, so the sector in the chart and its copies in the plane are measured alike. The thresholds
    ``K_m`` are the largest dilatation on each quadrilateral ``Q_m``, so the tail at ``m`` is the area of all deeper
    quadrilaterals and their copies.

    :param N: a Newton map with ``q = 0``.
    :param depth: deepest preimage level, 0 for the model sector alone.
    :param theta: half-opening of the sector gap.
    :param ms: quadrilateral levels, ``m0 .. m0 + 15`` by default.
    :param gap_direction: unit complex number, the direction of the gap in the chart at infinity.
    :param radial: grid cells along the radius of each quadrilateral.
    :param angular: grid cells along the angle.
    :param max_preimages: budget on the number of preimage sectors.
    :return: the decay report.
    :raises OutOfDomain: if ``deg q > 0`` or infinity is not repelling.
    :raises DepthOverflow: if the preimage count exceeds the budget.
    """
    if N.n != 0:
        raise OutOfDomain('Area condition needs a polynomial Newton map, got deg q = {}'.format(N.n))
    rho = chart_multiplier(N)
    sector = SectorModel(rho, theta, M0)
    ms = list(ms) if ms is not None else list(range(M0, M0 + LEVELS))
    direction = gap_direction / abs(gap_direction)
    model = sector_field(sector, ms, radial, angular)
    preimages, flags = preimage_sectors(N, depth, max_preimages)

    span = 2 * np.pi - 2 * theta
    outer = rho ** -ms[0]
    chart_points = direction * model.points
    fields = [DilatationField(1 / chart_points, model.values,
                              _sector_areas(sector, ms, radial, angular) * spherical_density(chart_points), 'infinity')]
    entries = []
    bound = 0.5 * span * outer ** 2
    for preimage in preimages:
        pulled = preimage.pull_back(chart_points, N.map)
        areas = _sector_areas(sector, ms, radial, angular, preimage.local_degree, preimage.coefficient)
        areas = areas * spherical_density(pulled)
        fields.append(DilatationField(pulled, model.values, areas, 'preimage {}'.format(preimage.point)))
        entries.append(preimage.to_dict(float(np.sum(areas))))
        bound += 0.5 * span * preimage.radius(outer) ** 2
    union = DilatationField.combine(fields, 'union depth {}'.format(depth))

    thresholds = level_maxima(model, len(ms))
    tail = dict(area_tail(union, thresholds))
    areas = [tail[k0] for k0 in thresholds]
    try:
        fit = fit_tail(ms, areas)
        verdict = 'pass' if fit['exponential'] else 'fail'
    except EmptyTail as e:
        logging.warning('Area tail of {} too short to fit: {}'.format(N, e))
        fit, verdict = None, 'inconclusive'

    logging.debug('Area condition of {} at depth {}: {} sectors, verdict {}'.format(N, depth, len(preimages), verdict))
    return {
        'rho': rho,
        'sector': sector.to_dict(),
        'gap_direction': direction,
        'depth': depth,
        'ms': ms,
        'sectors': entries,
        'local_degree_flags': flags,
        'dilatation_profile': [{'m': m, 'max': k0} for m, k0 in zip(ms, thresholds)],
        'area_tail': [{'m': m, 'k0': k0, 'area': area} for m, k0, area in zip(ms, thresholds, areas)],
        'fit': fit,
        'total_area': union.total_area(),
        'area_bound': SPHERICAL_DENSITY_MAX * bound,
        'metric': 'spherical',
        'verdict': verdict
    }
