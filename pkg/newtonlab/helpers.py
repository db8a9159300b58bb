"""
Helpers shared across NewtonLab: coefficient parsing and formatting, the spherical metric, the row-parallel map used
by grid computations, the orbit labels and a logging handler that forwards records to a callable.
"""

from __future__ import annotations

import logging
import multiprocessing
import os
from typing import Callable, Iterable, List, Tuple

import numpy as np
from decouple import config

INFINITY: complex = complex(float('inf'), 0.0)  #: The point at infinity of the Riemann sphere.
THREADS_VARIABLE: str = 'NEWTONLAB_THREADS'  #: Environment variable capping the number of grid workers.
CYCLE_LABEL: int = -1  #: Label of points whose orbit is eventually periodic.
UNDECIDED_LABEL: int = -2  #: Label of points with no decision within the step budget.


def is_infinity(z: complex) -> bool:
    """
    Check whether a sphere point is the point at infinity.

    :param z: the point to check.
    :return: True if ``z`` is not a finite complex number.
    """
    z = complex(z)
    return not (np.isfinite(z.real) and np.isfinite(z.imag))


def worker_count() -> int:
    """
    Number of workers to use for row-parallel grids, read from ``NEWTONLAB_THREADS`` and defaulting to the CPU count.

    :return: a worker count of at least 1.
    """
    workers = config(THREADS_VARIABLE, default=os.cpu_count() or 1, cast=int)
    return max(1, workers)


def parse_coefficients(text: str) -> List[complex]:
    """
    Parse a comma-separated list of ascending coefficients written as ``re+imi``, e.g. ``-1+0i,0+0i,1+0i`` for
    ``z^2 - 1``. Plain real numbers are accepted too.

    :param text: the coefficient list.
    :return: the coefficients, lowest power first.
    """
    coeffs = []
    for token in text.split(','):
        token = token.strip().replace(' ', '')
        if token == '':
            raise ValueError('Empty coefficient in "{}"'.format(text))
        if token.endswith('i'):
            token = token[:-1] + 'j'
        try:
            coeffs.append(complex(token))
        except ValueError:
            raise ValueError('Invalid coefficient "{}"'.format(token))
    return coeffs


def format_coefficients(coeffs: Iterable[complex]) -> str:
    """
    Inverse of :py:func:`parse_coefficients`.

    :param coeffs: coefficients, lowest power first.
    :return: the ``re+imi`` comma-separated form.
    """
    return ','.join('{:.17g}{:+.17g}i'.format(complex(c).real, complex(c).imag) for c in coeffs)


def parse_point(text: str) -> complex:
    """
    Parse a point written as ``re,im``.

    :param text: the point.
    :return: the point as a complex number.
    """
    parts = text.split(',')
    if len(parts) != 2:
        raise ValueError('Expected "re,im", got "{}"'.format(text))
    return complex(float(parts[0]), float(parts[1]))


def parse_markings(text: str) -> List[Tuple[int, int]]:
    """
    Parse ray markings written as ``basin:j`` pairs separated by commas, e.g. ``0:1,2:1``. A single pair may also be
    written ``basin,j``.

    :param text: the markings.
    :return: ``(basin, j)`` pairs.
    """
    tokens = [token.strip() for token in text.split(',') if token.strip()]
    try:
        if tokens and all(':' in token for token in tokens):
            return [(int(token.split(':')[0]), int(token.split(':')[1])) for token in tokens]
        if len(tokens) == 2 and not any(':' in token for token in tokens):
            return [(int(tokens[0]), int(tokens[1]))]
    except (ValueError, IndexError):
        pass
    raise ValueError('Expected "basin:j[,basin:j...]" or "basin,j", got "{}"'.format(text))


def parse_basin_marks(text: str) -> List[Tuple[int, int]]:
    """
    Parse marked basins separated by commas, e.g. ``0,2``. A bare index marks the first ray of that basin, and
    ``basin:j`` picks ray ``j`` instead.

    :param text: the marked basins.
    :return: ``(basin, j)`` pairs.
    """
    marks = []
    for token in text.split(','):
        basin, sep, ray = token.strip().partition(':')
        try:
            marks.append((int(basin), int(ray) if sep else 1))
        except ValueError:
            raise ValueError('Expected "basin[,basin...]" or "basin:j[,basin:j...]", got "{}"'.format(text))
    return marks


def spherical_distance(a, b):
    """
    Chordal distance on the Riemann sphere, ``2|a-b| / sqrt((1+|a|^2)(1+|b|^2))``, with infinity allowed on either
    side. Works elementwise on arrays.

    :param a: first point or array of points.
    :param b: second point or array of points.
    :return: the distance, a float for scalar input.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    a, b = np.broadcast_arrays(a, b)
    a_inf = ~np.isfinite(a)
    b_inf = ~np.isfinite(b)
    with np.errstate(all='ignore'):
        # the metric is invariant under z -> 1/z, so large pairs are compared through their inverses
        both_large = (np.abs(a) > 1.0) & (np.abs(b) > 1.0)
        ua = np.where(both_large, 1.0 / a, a)
        ub = np.where(both_large, 1.0 / b, b)
        na = np.hypot(1.0, np.abs(ua))
        nb = np.hypot(1.0, np.abs(ub))
        dist = 2.0 * np.abs(ua / na - ub / na) / nb
        lone_a = a_inf & ~b_inf
        lone_b = b_inf & ~a_inf
        dist = np.where(lone_a, 2.0 / np.hypot(1.0, np.abs(np.where(lone_a, b, 0.0))), dist)
        dist = np.where(lone_b, 2.0 / np.hypot(1.0, np.abs(np.where(lone_b, a, 0.0))), dist)
        dist = np.where(a_inf & b_inf, 0.0, dist)
    if dist.ndim == 0:
        return float(dist)
    return dist


def row_map(func: Callable, items: Iterable, workers: int | None = None) -> list:
    """
    Apply ``func`` to every item, one item per task, across a process pool. Results come back in input order, so
    the output does not depend on the number of workers.

    :param func: a picklable callable.
    :param items: the work items (usually row indices).
    :param workers: number of processes; ``None`` reads :py:func:`worker_count`. 1 runs in-process.
    :return: the list of results.
    """
    items = list(items)
    if workers is None:
        workers = worker_count()
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    logging.debug('Dispatching {} rows to {} workers'.format(len(items), min(workers, len(items))))
    with multiprocessing.Pool(processes=min(workers, len(items))) as pool:
        return pool.map(func, items, chunksize=1)


class FunctionHandler(logging.Handler):
    """
    Logging handler that passes every formatted record to a callable. The CLI uses it to collect warnings into the
    report.
    """

    def __init__(self, func: Callable):
        logging.Handler.__init__(self)
        self.func = func

    def emit(self, record):
        msg = self.format(record)
        self.func(msg)
