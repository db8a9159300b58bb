"""
Orchestration of the surgery ingredients: the disk model of every marked basin, the sector model at infinity and the
area condition over its preimages. The final integration of the resulting Beltrami form is not attempted.
"""

from __future__ import annotations

import logging
from typing import List, Sequence, Tuple

import numpy as np

from newtonlab.blaschke.model.blaschkemodel import multiplier_at_one, solve_b_for_multiplier
from newtonlab.channel.model.ray import ChannelDiagram, build_channel_diagram, count_accesses, mark
from newtonlab.errors import DoubleMark, MarkingInvalid, OutOfDomain
from newtonlab.newton.model.newtonmap import NewtonMapSpec
from newtonlab.surgery.model.areacondition import newton_area_condition
from newtonlab.surgery.model.dilatation import (area_tail, dilatation_profile, fit_tail, level_maxima,
                                                numerical_dilatation, sector_field)
from newtonlab.surgery.model.disk import DiskSurgeryModel, build_model_g
from newtonlab.surgery.model.sector import M0, THETA, SectorModel, model_conjugacy

TARGET_MULTIPLIER: float = 0.5  #: Multiplier of the attracting fixed point of the disk models.
DEFAULT_RADIUS: float = 0.8
CONTINUITY_TOL: float = 1e-9
HOLOMORPHIC_TOL: float = 1e-6
CONJUGACY_TOL: float = 1e-12  #: Largest deviation of the local model from the parabolic germ.
PROFILE_SPREAD: float = 1e-2  #: Allowed relative spread of the disk dilatation across levels.
DISK_LEVELS: Tuple[int, ...] = (0, 1, 2, 3)
SECTOR_LEVELS: Tuple[int, ...] = tuple(range(M0, M0 + 8))
HOLOMORPHIC_SAMPLES: int = 16
NOT_PERFORMED: str = 'not performed (out of scope)'


def gluing_radius(alpha: float, preferred: float = DEFAULT_RADIUS) -> float:
    return preferred if alpha < preferred < 1 else (1 + alpha) / 2


def holomorphic_deviation(model: DiskSurgeryModel, samples: int = HOLOMORPHIC_SAMPLES) -> float:
    """
    Largest ``K - 1`` of ``g`` on circles inside the two holomorphic pieces.
    """
    angles = (np.arange(samples) + 0.5) * 2 * np.pi / samples
    circle = np.exp(1j * angles)
    points = np.concatenate([(1 + model.r) / 2 * circle, model.inner / 2 * circle])
    return float(np.max(numerical_dilatation(model.g, points)) - 1)


def disk_report(k: int, r: float | None = None, multiplier: float = TARGET_MULTIPLIER,
                levels: Sequence[int] = DISK_LEVELS) -> dict:
    """
    Build and check the disk model of degree ``k``: continuity, holomorphic pieces and dilatation across levels.

    :param k: the degree.
    :param r: the gluing radius, :py:func:`gluing_radius` by default.
    :param multiplier: the multiplier of the attracting fixed point.
    :param levels: pullback levels of the dilatation profile.
    :return: the report.
    :raises BadRadius: if ``r`` is outside ``(alpha, 1)``.
    """
    blaschke = solve_b_for_multiplier(k, multiplier)
    r = r if r is not None else gluing_radius(blaschke.alpha)
    model = build_model_g(k, blaschke.b, r)
    jump = model.continuity_max_jump()
    deviation = holomorphic_deviation(model)
    profile = dilatation_profile(model, levels)
    largest = [row['max'] for row in profile]
    spread = max(largest) / min(largest) - 1
    return {
        'k': k,
        'b': blaschke.b,
        'alpha': blaschke.alpha,
        'r': r,
        'multiplier': blaschke.multiplier,
        'multiplier_at_one': multiplier_at_one(blaschke),
        'fixed_point': model.fixed_point(),
        'continuity_max_jump': jump,
        'boundary_errors': model.boundary_errors(),
        'holomorphic_max_deviation': deviation,
        'dilatation_profile': profile,
        'passed': jump < CONTINUITY_TOL and deviation < HOLOMORPHIC_TOL and spread < PROFILE_SPREAD
    }


def sector_report(lam: float, theta: float = THETA, ms: Sequence[int] = SECTOR_LEVELS, grid: int = 16) -> dict:
    """
    Conjugacy of the local model, dilatation growth and area tail of the extension ``chi`` on the quadrilaterals ``Q_m``.
    """
    sector = SectorModel(lam, theta, ms[0])
    conjugacy = model_conjugacy(lam, theta, ms[0])
    field = sector_field(sector, ms, grid, 3 * grid)
    thresholds = level_maxima(field, len(ms))
    tail = area_tail(field, thresholds)
    areas = [area for _, area in tail]
    fit = fit_tail(ms, areas)
    return {
        'sector': sector.to_dict(),
        'model_conjugacy_max': conjugacy,
        'dilatation_profile': [{'m': m, 'max': k0} for m, k0 in zip(ms, thresholds)],
        'area_tail': [{'m': m, 'k0': k0, 'area': area} for m, (k0, area) in zip(ms, tail)],
        'fit': fit,
        'verdict': 'pass' if fit['exponential'] and conjugacy < CONJUGACY_TOL else 'fail'
    }


def surgery_check_report(k: int, r: float | None = None, lam: float = 2.0, theta: float = THETA, mmax: int = 40,
                         grid: int = 16) -> dict:
    """
    The disk model for ``k`` and the sector model for ``lambda`` side by side.

    :param k: the disk degree.
    :param r: the gluing radius.
    :param lam: the sector multiplier.
    :param theta: the sector gap.
    :param mmax: the last quadrilateral.
    :param grid: radial cells per quadrilateral, with three times as many angular cells.
    :return: the combined report.
    """
    disk = disk_report(k, r)
    sector = sector_report(lam, theta, list(range(M0, mmax + 1)), grid)
    passed = disk['passed'] and sector['verdict'] == 'pass'
    return {
        'disk': disk,
        'sector': sector,
        'continuity_max_jump': disk['continuity_max_jump'],
        'model_conjugacy_max': sector['model_conjugacy_max'],
        'dilatation_profile': sector['dilatation_profile'],
        'area_tail': sector['area_tail'],
        'fit': sector['fit'],
        'verdict': 'pass' if passed else 'fail'
    }


def _validate_markings(N: NewtonMapSpec, markings: Sequence[Tuple[int, int]]):
    basins = [basin for basin, _ in markings]
    if len(set(basins)) != len(basins):
        raise MarkingInvalid('Two markings share a basin: {}'.format(list(markings)))
    for basin in basins:
        if not 0 <= basin < len(N.roots):
            raise MarkingInvalid('No root with index {}'.format(basin))
        root, mult = N.roots[basin]
        if mult > 1:
            raise MarkingInvalid('Root {} has multiplicity {}, its basin is not superattracting'.format(root, mult))


def surgery_pipeline_report(N: NewtonMapSpec,
                            markings: Sequence[Tuple[int, int]],
                            multiplier: float = TARGET_MULTIPLIER,
                            area_depth: int = 1,
                            diagram: ChannelDiagram | None = None,
                            workers: int | None = 1) -> dict:
    """
    Run the constructive part of the surgery on the marked basins of a polynomial Newton map.

    The area condition uses a single sector at infinity whose gap faces the first marked ray of the diagram, whatever
    the number of markings. The directions of all marked rays are listed in the area report under
    ``marked_directions``.

    :param N: a Newton map with ``q = 0``.
    :param markings: ``(basin, j)`` pairs, one marked ray per basin.
    :param multiplier: multiplier of the disk models.
    :param area_depth: preimage depth of the area condition.
    :param diagram: a traced channel diagram, built when omitted.
    :param workers: processes tracing rays.
    :return: the report with one disk entry per marked basin, the area condition, the conjugacy of the local model at
        infinity and the overall verdict.
    :raises OutOfDomain: if ``deg q > 0``.
    :raises MarkingInvalid: if a marking names a missing or multiple root, a missing ray, or a basin twice.
    """
    if N.n != 0:
        raise OutOfDomain('Surgery needs a polynomial Newton map, got deg q = {}'.format(N.n))
    _validate_markings(N, markings)
    report = {
        'map': str(N),
        'markings': [{'basin': basin, 'j': j} for basin, j in markings],
        'basins': [],
        'area_condition': None,
        'model_conjugacy_max': None,
        'petal_budget': {'n': len(markings), 'd': N.d},
        'david_integration': NOT_PERFORMED
    }
    if not markings:
        report['verdict'] = 'pass'
        return report

    diagram = diagram or build_channel_diagram(N, workers=workers)
    try:
        diagram = mark(diagram, markings)
    except DoubleMark as e:
        raise MarkingInvalid(str(e))
    for ray in diagram.marked_rays():
        accesses = count_accesses(N, ray.basin)['count']
        entry = disk_report(accesses + 1, multiplier=multiplier)
        entry.update({'basin': ray.basin, 'root': N.roots[ray.basin][0], 'ray': ray.to_dict(False)})
        report['basins'].append(entry)

    rays = diagram.marked_rays()
    directions = [complex(np.conj(ray.direction())) for ray in rays]
    if len(rays) > 1:
        logging.info('One sector at infinity for {} markings, its gap faces the ray of basin {}'.format(
            len(rays), rays[0].basin))
    area = newton_area_condition(N, area_depth, gap_direction=directions[0])
    area['marked_directions'] = directions
    report['area_condition'] = area
    report['model_conjugacy_max'] = model_conjugacy(area['rho'], area['sector']['theta'])
    verdicts: List[str] = ['pass' if entry['passed'] else 'fail' for entry in report['basins']] + [area['verdict']]
    verdicts.append('pass' if report['model_conjugacy_max'] < CONJUGACY_TOL else 'fail')
    report['verdict'] = 'fail' if 'fail' in verdicts else 'inconclusive' if 'inconclusive' in verdicts else 'pass'
    logging.debug('Surgery pipeline on {} with {} markings: {}'.format(N, len(markings), report['verdict']))
    return report
