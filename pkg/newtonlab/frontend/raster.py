"""
Contains the ``Viewport`` and ``BasinRaster`` classes, which describe a classified pixel grid, and the ``RunConfig``
class, which holds the validated parameters of a run.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from newtonlab.helpers import CYCLE_LABEL, UNDECIDED_LABEL

MAX_RESOLUTION: int = 4096  #: Default largest accepted raster side.


class Viewport:
    """
    A rectangle ``[xmin, xmax] x [ymin, ymax]`` in the complex plane. Pixel ``(row, col)`` of a ``width x height``
    raster sits at ``xmin + (col + 0.5) dx`` and ``ymax - (row + 0.5) dy``, so row 0 is the top edge.
    """

    def __init__(self, xmin: float, xmax: float, ymin: float, ymax: float):
        if not (xmax > xmin and ymax > ymin):
            raise ValueError('Empty viewport [{}, {}] x [{}, {}]'.format(xmin, xmax, ymin, ymax))
        self.xmin: float = float(xmin)
        self.xmax: float = float(xmax)
        self.ymin: float = float(ymin)
        self.ymax: float = float(ymax)

    @staticmethod
    def create_from_list(values: List[float]) -> Viewport:
        if len(values) != 4:
            raise ValueError('A viewport needs 4 values, got {}'.format(values))
        return Viewport(*values)

    @staticmethod
    def square(half_width: float, center: complex = 0j) -> Viewport:
        return Viewport(center.real - half_width, center.real + half_width,
                        center.imag - half_width, center.imag + half_width)

    def row_points(self, row: int, width: int, height: int) -> np.ndarray:
        dx = (self.xmax - self.xmin) / width
        dy = (self.ymax - self.ymin) / height
        x = self.xmin + (np.arange(width) + 0.5) * dx
        y = self.ymax - (row + 0.5) * dy
        return x + 1j * y

    def pixel_of(self, z: complex, width: int, height: int) -> Tuple[int, int] | None:
        """
        The pixel containing ``z``, or None when ``z`` is outside the viewport.
        """
        col = int(np.floor((z.real - self.xmin) / (self.xmax - self.xmin) * width))
        row = int(np.floor((self.ymax - z.imag) / (self.ymax - self.ymin) * height))
        if 0 <= col < width and 0 <= row < height:
            return row, col
        return None

    def to_list(self) -> List[float]:
        return [self.xmin, self.xmax, self.ymin, self.ymax]


class BasinRaster:
    """
    Per-pixel outcome labels and iteration counts. Labels ``0..root_count-1`` are root basins, the next
    ``petal_count`` labels are petals at infinity, then ``CYCLE_LABEL`` and ``UNDECIDED_LABEL``.
    """

    def __init__(self,
                 viewport: Viewport,
                 labels: np.ndarray,
                 iterations: np.ndarray,
                 root_count: int,
                 petal_count: int):
        self.viewport: Viewport = viewport
        self.labels: np.ndarray = labels
        self.iterations: np.ndarray = iterations
        self.height: int = labels.shape[0]
        self.width: int = labels.shape[1]
        self.root_count: int = root_count
        self.petal_count: int = petal_count

    def label_kind(self, label: int) -> Tuple[str, int | None]:
        if label == CYCLE_LABEL:
            return 'cycle', None
        if label == UNDECIDED_LABEL:
            return 'undecided', None
        if label < self.root_count:
            return 'root', label
        return 'petal', label - self.root_count

    def label_at(self, z: complex) -> int | None:
        pixel = self.viewport.pixel_of(z, self.width, self.height)
        if pixel is None:
            return None
        return int(self.labels[pixel])

    def petal_labels_present(self) -> List[int]:
        present = np.unique(self.labels)
        return [int(label) - self.root_count for label in present
                if self.root_count <= label < self.root_count + self.petal_count]

    def summary(self) -> dict:
        counts = {}
        for label, count in zip(*np.unique(self.labels, return_counts=True)):
            kind, index = self.label_kind(int(label))
            counts['{}{}'.format(kind, '' if index is None else ':{}'.format(index))] = int(count)
        return {
            'width': self.width,
            'height': self.height,
            'viewport': self.viewport.to_list(),
            'label_counts': counts
        }


class RunConfig:
    """
    Parameters of a run, built from the merged CLI settings and validated before any computation.
    """

    def __init__(self,
                 p: List[complex],
                 q: List[complex],
                 viewport: Viewport,
                 resolution: Tuple[int, int],
                 max_steps: int = 10000,
                 grid_steps: int = 2000,
                 eps_conv: float = 1e-9,
                 petal_radius: float = 0.25,
                 max_resolution: int = MAX_RESOLUTION):
        self.p: List[complex] = p
        self.q: List[complex] = q
        self.viewport: Viewport = viewport
        self.resolution: Tuple[int, int] = resolution
        self.max_steps: int = max_steps
        self.grid_steps: int = grid_steps
        self.eps_conv: float = eps_conv
        self.petal_radius: float = petal_radius
        self.max_resolution: int = max_resolution

    def problems(self) -> List[str]:
        """
        Check the configuration.

        :return: a list of problems, empty when the configuration is valid.
        """
        found = []
        for name in ('eps_conv', 'petal_radius'):
            if not getattr(self, name) > 0:
                found.append('{} must be positive, got {}'.format(name, getattr(self, name)))
        for name in ('max_steps', 'grid_steps'):
            if getattr(self, name) < 1:
                found.append('{} must be at least 1, got {}'.format(name, getattr(self, name)))
        for side in self.resolution:
            if not 1 <= side <= self.max_resolution:
                found.append('resolution {} outside 1..{}'.format(side, self.max_resolution))
        return found
