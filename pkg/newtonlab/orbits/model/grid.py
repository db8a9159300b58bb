"""
Vectorised basin classification of a pixel grid, one task per row.
"""

from __future__ import annotations

import logging
from typing import Tuple

import numpy as np

from newtonlab import helpers
from newtonlab.frontend.raster import BasinRaster, Viewport
from newtonlab.helpers import CYCLE_LABEL, UNDECIDED_LABEL
from newtonlab.newton.model.newtonmap import NewtonMapSpec
from newtonlab.orbits.model.iteration import EPS_CONV, PETAL_RADIUS, OrbitRules

GRID_STEPS: int = 2000  #: Default per-pixel step budget.


class GridKernel:
    """
    Classifies arrays of start points with the same rules, in the same order, as
    :py:func:`newtonlab.orbits.model.iteration.iterate`. Instances are picklable so rows can be farmed out to worker
    processes.
    """

    def __init__(self, rules: OrbitRules, viewport: Viewport | None, width: int, height: int, max_steps: int):
        self.rules: OrbitRules = rules
        self.viewport: Viewport | None = viewport
        self.width: int = width
        self.height: int = height
        self.max_steps: int = max_steps

    def classify_points(self, start: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Label every start point.

        :param start: array of start points.
        :return: labels and the number of steps taken per point.
        """
        rules = self.rules
        start = np.asarray(start, dtype=complex)
        count = len(start)
        labels = np.full(count, UNDECIDED_LABEL)
        steps = np.full(count, self.max_steps)
        current = rules.step(start)
        fixed = helpers.spherical_distance(current, start) < rules.eps_cycle
        labels[fixed] = CYCLE_LABEL
        steps[fixed] = 0
        active = ~fixed
        tortoise = start.copy()
        for k in range(1, self.max_steps + 1):
            idx = np.nonzero(active)[0]
            if len(idx) == 0:
                break
            if k > 1:
                current[idx] = rules.step(current[idx])
            points = current[idx]
            decided = np.zeros(len(idx), dtype=bool)

            hit = rules.root_hit(points)
            found = hit >= 0
            labels[idx[found]] = hit[found]
            decided |= found

            petal = rules.petal_hit(points)
            found = (petal >= 0) & ~decided
            labels[idx[found]] = rules.root_count + petal[found]
            decided |= found

            if k % 2 == 0:
                tortoise[idx] = rules.step(tortoise[idx])
                found = (helpers.spherical_distance(tortoise[idx], points) < rules.eps_cycle) & ~decided
                labels[idx[found]] = CYCLE_LABEL
                decided |= found

            steps[idx[decided]] = k
            active[idx[decided]] = False
        return labels, steps

    def row(self, index: int) -> Tuple[np.ndarray, np.ndarray]:
        return self.classify_points(self.viewport.row_points(index, self.width, self.height))


def classify_grid(N: NewtonMapSpec,
                  viewport: Viewport,
                  resolution: Tuple[int, int],
                  max_steps: int = GRID_STEPS,
                  eps_conv: float = EPS_CONV,
                  workers: int | None = None,
                  petal_radius: float = PETAL_RADIUS) -> BasinRaster:
    """
    Classify every pixel centre of a viewport. The result is the same for any number of workers.

    :param N: the Newton map.
    :param viewport: the region to sample.
    :param resolution: ``(width, height)`` in pixels.
    :param max_steps: per-pixel step budget.
    :param eps_conv: convergence radius around roots.
    :param workers: process count, ``None`` for :py:func:`newtonlab.helpers.worker_count`.
    :param petal_radius: petal sector radius in the chart at infinity.
    :return: the labelled raster.
    """
    width, height = resolution
    rules = OrbitRules(N, eps_conv, petal_radius=petal_radius)
    kernel = GridKernel(rules, viewport, width, height, max_steps)
    rows = helpers.row_map(kernel.row, range(height), workers)
    labels = np.vstack([labels for labels, _ in rows])
    steps = np.vstack([steps for _, steps in rows])
    logging.debug('Classified a {}x{} grid for {}'.format(width, height, N))
    return BasinRaster(viewport, labels, steps, rules.root_count, rules.petal_count)
