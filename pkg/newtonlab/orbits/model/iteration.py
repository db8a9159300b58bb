"""
Orbit iteration on the Riemann sphere. ``OrbitRules`` holds the classification rules shared by single orbits and by
grid kernels: convergence to a root, capture by a petal at a parabolic infinity, and eventual periodicity.
"""

from __future__ import annotations

from typing import List

import numpy as np

from newtonlab import helpers
from newtonlab.errors import NotParabolic
from newtonlab.helpers import CYCLE_LABEL, UNDECIDED_LABEL
from newtonlab.newton.model.fixedpoint import FixedPointInfo, infinity_fixed_point
from newtonlab.newton.model.newtonmap import NewtonMapSpec
from newtonlab.orbits.model.orbitrecord import OrbitRecord, Outcome

EPS_CONV: float = 1e-9  #: Spherical distance to a root that counts as converged.
EPS_CYCLE: float = 1e-9  #: Spherical distance between orbit points that counts as a repeat.
PETAL_RADIUS: float = 0.25  #: Radius, in the chart w = 1/z, of the petal sectors.
MAX_STEPS: int = 10000  #: Step budget for single orbits.


class PetalGeometry:
    """
    Attracting sectors of a parabolic germ ``w + a w^(v+1) + ...`` at ``w = 0``. The attracting directions are the
    unit vectors ``d`` with ``a d^v`` negative real; a point is in petal ``j`` when ``|w| < radius``, ``Re(a w^v) < 0``
    and ``d_j`` is the nearest attracting direction.
    """

    def __init__(self, coefficient: complex, petals: int, radius: float = PETAL_RADIUS):
        """
        Create the petal geometry of a germ.

        :param coefficient: the germ coefficient ``a``.
        :param petals: the number of petals ``v``.
        :param radius: the sector radius in the chart.
        """
        self.coefficient: complex = complex(coefficient)
        self.petals: int = petals
        self.radius: float = radius
        self.base_angle: float = (np.pi - np.angle(self.coefficient)) / petals

    @staticmethod
    def create_from_map(N: NewtonMapSpec, radius: float = PETAL_RADIUS) -> PetalGeometry | None:
        """
        Petal geometry at infinity, or None when infinity is not parabolic.
        """
        info = infinity_fixed_point(N)
        if info.kind != FixedPointInfo.PARABOLIC or info.petals < 1 or info.germ_coefficient is None:
            return None
        return PetalGeometry(info.germ_coefficient, info.petals, radius)

    def directions(self) -> List[complex]:
        return [complex(np.exp(1j * (self.base_angle + 2 * np.pi * j / self.petals))) for j in range(self.petals)]

    def anchor(self, index: int) -> complex:
        """
        A point deep inside petal ``index``, in the ``z`` plane.
        """
        return 1.0 / (0.5 * self.radius * self.directions()[index])

    def petal_index(self, z: np.ndarray) -> np.ndarray:
        """
        Petal index of every point, -1 outside all petals.

        :param z: array of sphere points.
        :return: integer array.
        """
        with np.errstate(all='ignore'):
            finite = np.isfinite(z) & (z != 0)
            w = np.where(finite, 1.0 / np.where(finite, z, 1.0), 0)
            inside = finite & (np.abs(w) < self.radius) & ((self.coefficient * w ** self.petals).real < 0)
            step = 2 * np.pi / self.petals
            index = np.mod(np.rint((np.angle(w) - self.base_angle) / step), self.petals).astype(int)
        return np.where(inside, index, -1)


class OrbitRules:
    """
    Classification rules for forward orbits of one Newton map.
    """

    def __init__(self,
                 N: NewtonMapSpec,
                 eps_conv: float = EPS_CONV,
                 eps_cycle: float = EPS_CYCLE,
                 petal_radius: float = PETAL_RADIUS):
        """
        Create the rules for a map.

        :param N: the Newton map.
        :param eps_conv: convergence radius around roots (spherical).
        :param eps_cycle: repeat tolerance for cycle detection (spherical).
        :param petal_radius: sector radius of the petals in the chart at infinity.
        """
        self.newton = N
        self.map = N.map
        self.roots: np.ndarray = np.array(N.root_points(), dtype=complex)
        self.eps_conv: float = eps_conv
        self.eps_cycle: float = eps_cycle
        self.geometry: PetalGeometry | None = PetalGeometry.create_from_map(N, petal_radius) if N.n >= 1 else None
        self.root_count: int = len(self.roots)
        self.petal_count: int = self.geometry.petals if self.geometry is not None else 0

    def step(self, z):
        return self.map.evaluate_sphere(z)

    def root_hit(self, z: np.ndarray) -> np.ndarray:
        if self.root_count == 0:
            return np.full(len(z), -1)
        distances = helpers.spherical_distance(z[:, None], self.roots[None, :])
        nearest = np.argmin(distances, axis=1)
        return np.where(distances[np.arange(len(z)), nearest] < self.eps_conv, nearest, -1)

    def petal_hit(self, z: np.ndarray) -> np.ndarray:
        if self.geometry is None:
            return np.full(len(z), -1)
        return self.geometry.petal_index(z)

    def label_of(self, outcome: Outcome) -> int:
        if outcome.kind == Outcome.CONVERGED:
            return outcome.index
        if outcome.kind == Outcome.PETAL:
            return self.root_count + outcome.index
        if outcome.kind == Outcome.CYCLE:
            return CYCLE_LABEL
        return UNDECIDED_LABEL


def cycle_outcome(points: List[complex], k: int, eps: float) -> Outcome:
    """
    Period and preperiod of an orbit once ``points[k]`` repeats ``points[k // 2]``.

    :param points: the orbit so far.
    :param k: index of the repeat.
    :param eps: repeat tolerance.
    :return: the cycle outcome.
    """
    orbit = np.array(points[:k + 1], dtype=complex)
    back = helpers.spherical_distance(orbit[k], orbit[k - 1::-1])
    period = int(np.argmax(back < eps)) + 1
    ahead = helpers.spherical_distance(orbit[:k + 1 - period], orbit[period:k + 1])
    preperiod = int(np.argmax(ahead < eps))
    return Outcome.cycle(period, preperiod)


def iterate(N: NewtonMapSpec,
            z0: complex,
            max_steps: int = MAX_STEPS,
            eps_conv: float = EPS_CONV,
            rules: OrbitRules | None = None) -> OrbitRecord:
    """
    Iterate and classify an orbit. A start point that is already fixed is a ``cycle(1, 0)``; after that the first
    matching rule wins at each step: root convergence, petal capture, then a Floyd repeat check at even steps.

    :param N: the Newton map.
    :param z0: the start point, infinity allowed.
    :param max_steps: step budget.
    :param eps_conv: convergence radius, ignored when ``rules`` is given.
    :param rules: precomputed rules for the map.
    :return: the orbit record.
    """
    if rules is None:
        rules = OrbitRules(N, eps_conv)
    z = complex(z0)
    points = [z]
    image = rules.step(z)
    if helpers.spherical_distance(image, z) < rules.eps_cycle:
        return OrbitRecord(z, points, Outcome.cycle(1, 0), 0)
    for k in range(1, max_steps + 1):
        z = image if k == 1 else rules.step(z)
        points.append(z)
        probe = np.array([z])
        hit = int(rules.root_hit(probe)[0])
        if hit >= 0:
            return OrbitRecord(points[0], points, Outcome.converged_to(hit), k)
        petal = int(rules.petal_hit(probe)[0])
        if petal >= 0:
            return OrbitRecord(points[0], points, Outcome.petal(petal), k)
        if k % 2 == 0 and helpers.spherical_distance(points[k // 2], z) < rules.eps_cycle:
            return OrbitRecord(points[0], points, cycle_outcome(points, k, rules.eps_cycle), k)
    return OrbitRecord(points[0], points, Outcome.undecided(), max_steps)


def petal_directions(N: NewtonMapSpec) -> List[complex]:
    """
    Attracting directions of the parabolic germ at infinity in the chart ``w = 1/z``.

    :param N: a Newton map with ``deg q >= 1``.
    :return: one unit vector per petal.
    :raises NotParabolic: if infinity is not parabolic.
    """
    info = infinity_fixed_point(N)
    if info.kind != FixedPointInfo.PARABOLIC or info.germ_coefficient is None:
        raise NotParabolic('Infinity is {} with multiplier {}'.format(info.kind, info.multiplier))
    return PetalGeometry(info.germ_coefficient, info.petals).directions()
