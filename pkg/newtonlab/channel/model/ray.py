"""
Fixed internal rays of immediate root basins, traced from the Boettcher chart out to infinity, and the channel diagram
they form.

A ray starts as the chart preimage of ``{s e^(i angle)}`` for potentials ``s`` from about ``SEED_POTENTIAL`` up to
``CHART_POTENTIAL`` and is continued by pulling its last piece back through the inverse branch of ``N`` that stays
nearest, one level per step, until it leaves the escape radius.
"""

from __future__ import annotations

import csv
import io
import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np

from newtonlab import helpers
from newtonlab.channel.model.boettcher import BoettcherChart, local_boettcher
from newtonlab.errors import BranchLoss, DoubleMark, MarkingInvalid, NonSuperattracting
from newtonlab.newton.model.newtonmap import NewtonMapSpec, critical_points
from newtonlab.orbits.model.basins import BasinTest
from newtonlab.orbits.model.grid import GridKernel
from newtonlab.orbits.model.iteration import MAX_STEPS, OrbitRules, iterate
from newtonlab.orbits.model.orbitrecord import Outcome
from newtonlab.polyalg.ratmap import RatMap

SEED_POTENTIAL: float = 1e-4  #: Smallest chart potential on a ray.
CHART_POTENTIAL: float = 0.25  #: Largest chart potential; beyond it rays are continued by pullback.
SEED_POINTS: int = 32  #: Chart vertices per level of potential.
ESCAPE_RADIUS: float = 1e3
MAX_LEVELS: int = 400  #: Pullback levels before a ray is given up as not escaping.
RELATIVE_STEP: float = 0.05  #: Largest vertex gap relative to ``max(|z|, 1)``.
MAX_REFINE: int = 12
RAY_TOL: float = 1e-6  #: Relative distance allowed between the image of a vertex and the ray.


class Ray:
    """
    A fixed internal ray of an immediate basin as a polyline from near the root towards infinity.
    """

    def __init__(self,
                 basin: int,
                 j: int,
                 angle: float,
                 polyline: np.ndarray,
                 core_start: int = 0,
                 escaped: bool = False,
                 marked: bool = False):
        """
        Create a new ray.

        :param basin: index of the root in ``N.roots``.
        :param j: the ray index, ``1 <= j <= k - 1``.
        :param angle: the chart angle ``2 pi j / (k - 1)`` reduced to ``[0, 2 pi)``.
        :param polyline: the vertices.
        :param core_start: first vertex whose image stays on the polyline.
        :param escaped: whether the last vertex is beyond the escape radius.
        :param marked: whether the ray is marked.
        """
        self.basin: int = basin
        self.j: int = j
        self.angle: float = angle
        self.polyline: np.ndarray = np.asarray(polyline, dtype=complex)
        self.core_start: int = core_start
        self.escaped: bool = escaped
        self.marked: bool = marked

    @property
    def endpoint(self) -> complex:
        return complex(self.polyline[-1])

    def direction(self) -> complex:
        """
        Unit direction of the far end of the ray.
        """
        return self.endpoint / abs(self.endpoint)

    def with_mark(self, marked: bool) -> Ray:
        return Ray(self.basin, self.j, self.angle, self.polyline, self.core_start, self.escaped, marked)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(['basin', 'j', 're', 'im'])
        for z in self.polyline:
            writer.writerow([self.basin, self.j, repr(float(z.real)), repr(float(z.imag))])
        return buffer.getvalue()

    def to_dict(self, include_polyline: bool = True) -> dict:
        data = {
            'basin': self.basin,
            'j': self.j,
            'angle': self.angle,
            'marked': self.marked,
            'escaped': self.escaped,
            'vertices': int(len(self.polyline)),
            'endpoint': self.endpoint
        }
        if include_polyline:
            data['polyline'] = list(self.polyline)
        return data

    def __repr__(self):
        return 'Ray(basin={}, j={}, vertices={}, escaped={})'.format(self.basin, self.j, len(self.polyline), self.escaped)


class ChannelDiagram:
    """
    The rays of all immediate root basins, with at most one marked ray per basin.
    """

    def __init__(self, rays: List[Ray], access_counts: Dict[int, int] | None = None, notes: List[str] | None = None):
        self.rays: List[Ray] = rays
        self.access_counts: Dict[int, int] = access_counts or {}
        self.notes: List[str] = notes or []

    @property
    def n_marked(self) -> int:
        return sum(1 for ray in self.rays if ray.marked)

    def rays_of(self, basin: int) -> List[Ray]:
        return [ray for ray in self.rays if ray.basin == basin]

    def ray(self, basin: int, j: int) -> Ray:
        for ray in self.rays:
            if ray.basin == basin and ray.j == j:
                return ray
        raise MarkingInvalid('No ray {} in basin {}'.format(j, basin))

    def marked_rays(self) -> List[Ray]:
        return [ray for ray in self.rays if ray.marked]

    def to_dict(self, include_polylines: bool = True) -> dict:
        return {
            'rays': [ray.to_dict(include_polylines) for ray in self.rays],
            'n_marked': self.n_marked,
            'access_counts': {str(basin): count for basin, count in sorted(self.access_counts.items())},
            'notes': self.notes
        }


def ray_angle(k: int, j: int) -> float:
    return float(np.mod(2 * np.pi * j / (k - 1), 2 * np.pi))


def _nearest_preimage(ratmap: RatMap, w: complex, near: complex) -> complex:
    candidates = [root for root, _ in (ratmap.num - ratmap.den * w).roots()]
    return min(candidates, key=lambda z: abs(z - near))


def _pull_back_step(ratmap: RatMap, w_from: complex, w_to: complex, z_from: complex, depth: int = 0) -> List[complex]:
    """
    Preimages continuing from ``z_from`` (over ``w_from``) to a point over ``w_to``, halving the step while the gap
    exceeds ``RELATIVE_STEP``.
    """
    z_to = _nearest_preimage(ratmap, w_to, z_from)
    if abs(z_to - z_from) <= RELATIVE_STEP * max(abs(z_to), 1.0) or depth >= MAX_REFINE:
        return [z_to]
    middle = (w_from + w_to) / 2
    left = _pull_back_step(ratmap, w_from, middle, z_from, depth + 1)
    return left + _pull_back_step(ratmap, middle, w_to, left[-1], depth + 1)


def pull_back_segment(ratmap: RatMap, segment: Sequence[complex], start: complex) -> np.ndarray:
    """
    Continue ``segment`` through the inverse branch of ``ratmap`` that starts at ``start``.

    :param ratmap: the map.
    :param segment: consecutive points; ``ratmap(start) = segment[0]``.
    :param start: the first preimage.
    :return: the preimage polyline, starting with ``start``.
    """
    out = [complex(start)]
    for w_from, w_to in zip(segment[:-1], segment[1:]):
        out.extend(_pull_back_step(ratmap, w_from, w_to, out[-1]))
    return np.asarray(out, dtype=complex)


def trace_ray(N: NewtonMapSpec,
              basin: int,
              j: int,
              levels: int = MAX_LEVELS,
              escape: float = ESCAPE_RADIUS,
              chart: BoettcherChart | None = None,
              rules: OrbitRules | None = None) -> Ray:
    """
    Trace the ``j``-th fixed internal ray of the immediate basin of a simple root.

    :param N: the Newton map.
    :param basin: index of the root in ``N.roots``.
    :param j: the ray index, ``1 <= j <= k - 1``.
    :param levels: pullback budget.
    :param escape: stop once the ray leaves this radius.
    :param chart: the Boettcher chart at the root, built when omitted.
    :param rules: precomputed orbit rules for the basin check.
    :return: the ray.
    :raises NonSuperattracting: if the root is multiple.
    :raises BranchLoss: if a pulled-back piece leaves the basin.
    """
    root, mult = N.roots[basin]
    if mult > 1:
        raise NonSuperattracting('Root {} has multiplicity {}'.format(root, mult))
    chart = chart or local_boettcher(N, root)
    k = chart.degree
    if not 1 <= j <= k - 1:
        raise MarkingInvalid('Ray index {} outside 1..{}'.format(j, k - 1))
    rules = rules or OrbitRules(N)
    kernel = GridKernel(rules, None, 0, 0, MAX_STEPS)
    label = rules.label_of(Outcome.converged_to(basin))
    angle = ray_angle(k, j)
    direction = np.exp(1j * angle)

    # s_i = CHART^(k^(i/M)) so that s_i^k = s_(i+M): the image of a seed vertex is again a vertex
    rounds = int(np.ceil(np.log(np.log(SEED_POTENTIAL) / np.log(CHART_POTENTIAL)) / np.log(k)))
    exponents = k ** (np.arange(rounds * SEED_POINTS, -1, -1) / SEED_POINTS)
    potentials = CHART_POTENTIAL ** exponents
    polyline = [chart.inverse(s * direction) for s in potentials]
    core_start = SEED_POINTS
    segment = np.asarray(polyline[-(SEED_POINTS + 1):])

    escaped = bool(abs(polyline[-1]) > escape)
    for _ in range(levels):
        if escaped:
            break
        piece = pull_back_segment(N.map, segment, segment[-1])
        labels, _ = kernel.classify_points(piece)
        if np.any(labels != label):
            raise BranchLoss('Ray {} of basin {} left the basin near {}'.format(j, basin, piece[labels != label][0]))
        polyline.extend(piece[1:])
        segment = piece
        escaped = bool(abs(piece[-1]) > escape)
    if not escaped:
        logging.warning('Ray {} of basin {} stayed within radius {} after {} levels'.format(j, basin, escape, levels))
    return Ray(basin, j, angle, np.asarray(polyline), core_start, escaped)


def _segment_distance(points: np.ndarray, polyline: np.ndarray) -> np.ndarray:
    a = polyline[:-1][None, :]
    b = polyline[1:][None, :]
    x = points[:, None]
    span = b - a
    length = np.abs(span) ** 2
    t = np.clip(np.real((x - a) * np.conj(span)) / np.where(length > 0, length, 1), 0, 1)
    return np.min(np.abs(a + t * span - x), axis=1)


def ray_invariance_error(N: NewtonMapSpec, ray: Ray) -> float:
    """
    Largest relative distance from the image of a ray vertex to the ray.
    """
    vertices = ray.polyline[ray.core_start:]
    images = np.asarray(N.map.evaluate_sphere(vertices))
    distance = _segment_distance(images, ray.polyline)
    return float(np.max(distance / np.maximum(np.abs(images), 1.0)))


def ray_separation(first: Ray, second: Ray, exclude_radius: float) -> float:
    """
    Smallest distance between vertices of two rays away from the shared center, infinity if nothing is left.
    """
    a = first.polyline[np.abs(first.polyline - first.polyline[0]) > exclude_radius]
    b = second.polyline[np.abs(second.polyline - second.polyline[0]) > exclude_radius]
    if a.size == 0 or b.size == 0:
        return float('inf')
    return float(np.min(np.abs(a[:, None] - b[None, :])))


def count_accesses(N: NewtonMapSpec, target: Outcome | int, rules: OrbitRules | None = None,
                   basin_test=None) -> dict:
    """
    Count the accesses to infinity of an immediate basin as its critical points with multiplicity.

    :param N: the Newton map.
    :param target: a ``converged_to`` or ``petal`` outcome, or a root index.
    :param rules: precomputed orbit rules.
    :param basin_test: membership test, a :py:class:`BasinTest` by default.
    :return: ``{target, count, critical_points}``, plus ``dynamical`` for a petal: the critical point whose orbit
        generates the dynamical access and the direction in which that orbit leaves.
    """
    outcome = Outcome.converged_to(target) if isinstance(target, int) else target
    rules = rules or OrbitRules(N)
    test = basin_test or BasinTest(N, outcome, rules)
    members = [(c, mult) for c, mult in critical_points(N) if not helpers.is_infinity(c) and test(c)]
    data = {
        'target': outcome.to_dict(),
        'count': sum(mult for _, mult in members),
        'critical_points': [c for c, _ in members]
    }
    if outcome.kind == Outcome.PETAL and members:
        orbit = iterate(N, members[0][0], rules=rules)
        tail = orbit.points[-1]
        data['dynamical'] = {'critical_point': members[0][0], 'direction': tail / abs(tail) if tail else 0j}
    logging.debug('Accesses of {}: {}'.format(outcome, data['count']))
    return data


def mark(diagram: ChannelDiagram, selections: Sequence[Tuple[int, int]]) -> ChannelDiagram:
    """
    Mark one ray in each selected basin.

    :param diagram: the diagram.
    :param selections: ``(basin, j)`` pairs.
    :return: a new diagram with exactly the selected rays marked.
    :raises DoubleMark: if two selections share a basin.
    :raises MarkingInvalid: if a selection names no ray of the diagram.
    """
    basins = [basin for basin, _ in selections]
    if len(set(basins)) != len(basins):
        raise DoubleMark('Two marked rays share a basin: {}'.format(list(selections)))
    chosen = {(basin, j) for basin, j in selections}
    for basin, j in chosen:
        diagram.ray(basin, j)
    rays = [ray.with_mark((ray.basin, ray.j) in chosen) for ray in diagram.rays]
    return ChannelDiagram(rays, diagram.access_counts, diagram.notes)


class RayTracer:
    """
    Picklable wrapper tracing one ``(basin, j)`` pair, for row-parallel maps.
    """

    def __init__(self, N: NewtonMapSpec, levels: int = MAX_LEVELS, escape: float = ESCAPE_RADIUS):
        self.N: NewtonMapSpec = N
        self.levels: int = levels
        self.escape: float = escape

    def __call__(self, spec: Tuple[int, int]) -> Ray:
        basin, j = spec
        return trace_ray(self.N, basin, j, self.levels, self.escape)


def build_channel_diagram(N: NewtonMapSpec,
                          levels: int = MAX_LEVELS,
                          escape: float = ESCAPE_RADIUS,
                          workers: int | None = 1) -> ChannelDiagram:
    """
    Trace every fixed internal ray of every simple root and count the accesses of each basin.

    :param N: the Newton map.
    :param levels: pullback budget per ray.
    :param escape: escape radius.
    :param workers: processes tracing rays; ``None`` reads the environment.
    :return: the unmarked diagram. Multiple roots are skipped with a note.
    """
    rules = OrbitRules(N)
    specs, notes, counts = [], [], {}
    for basin, (root, mult) in enumerate(N.roots):
        if mult > 1:
            notes.append('root {} has multiplicity {}, its basin is not superattracting'.format(root, mult))
            continue
        k = local_boettcher(N, root).degree
        specs.extend((basin, j) for j in range(1, k))
        counts[basin] = count_accesses(N, basin, rules)['count']
        if counts[basin] != k - 1:
            logging.warning('Basin {} has {} accesses but {} rays'.format(basin, counts[basin], k - 1))
    rays = helpers.row_map(RayTracer(N, levels, escape), specs, workers)
    return ChannelDiagram(rays, counts, notes)
