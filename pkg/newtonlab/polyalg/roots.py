"""
Simultaneous root finding on raw coefficient arrays: the Aberth-Ehrlich iteration, clustering of near-coincident
roots into multiple roots and Newton polishing of each cluster.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from newtonlab.errors import NonConvergence

MAX_SWEEPS: int = 500  #: Aberth sweeps before giving up.
STEP_TOL: float = 1e-13  #: Convergence when every correction is below this times the Cauchy bound.
CLUSTER_TOL: float = 1e-10  #: Default clustering tolerance; ``m`` roots merge within ``tol**(1/m)``.
SEED: int = 0  #: Seed of the starting configuration, fixed so results are reproducible.


def cauchy_bound(coeffs: np.ndarray) -> float:
    monic = coeffs / coeffs[-1]
    return 1.0 + float(np.max(np.abs(monic[:-1])))


def aberth(coeffs: np.ndarray, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """
    All roots of a polynomial by the Aberth-Ehrlich iteration. Start points lie on a jittered circle scaled by the
    Cauchy root bound. A root stops moving once its correction is negligible or its residual is at the rounding level
    of the evaluation.

    :param coeffs: coefficients, lowest power first, leading coefficient nonzero, degree at least 1.
    :param max_sweeps: sweep budget.
    :return: the ``n`` approximate roots.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    n = len(coeffs) - 1
    if n == 1:
        return np.array([-coeffs[0] / coeffs[1]])
    monic = coeffs / coeffs[-1]
    bound = cauchy_bound(monic)
    rng = np.random.default_rng(SEED)
    radii = bound * rng.uniform(0.5, 1.0, n)
    angles = 2 * np.pi * np.arange(n) / n + rng.uniform(0.0, 2 * np.pi)
    z = radii * np.exp(1j * angles)

    dmonic = P.polyder(monic)
    abs_monic = np.abs(monic)
    eps = np.finfo(float).eps
    for _ in range(max_sweeps):
        with np.errstate(all='ignore'):
            pz = P.polyval(z, monic)
            ratio = pz / P.polyval(z, dmonic)
            diff = z[:, None] - z[None, :]
            inverse = np.where(diff == 0, 0, 1.0 / diff)
            correction = ratio / (1.0 - ratio * inverse.sum(axis=1))
            at_rounding = np.abs(pz) <= 16 * eps * P.polyval(np.abs(z), abs_monic)
        correction = np.where(np.isfinite(correction) & ~at_rounding, correction, 0)
        z = z - correction
        if np.all(np.abs(correction) < STEP_TOL * bound):
            return z
    raise NonConvergence('Aberth iteration did not converge after {} sweeps'.format(max_sweeps),
                         partial=[complex(r) for r in z])


def cluster(approx: np.ndarray, tol: float = CLUSTER_TOL) -> List[Tuple[complex, int]]:
    """
    Merge near-coincident roots. Starting from each unassigned root, the largest group of its nearest neighbours whose
    spread around the group mean is at most ``max(1, |mean|) * tol**(1/m)`` becomes one root of multiplicity ``m``.

    :param approx: approximate roots.
    :param tol: clustering tolerance.
    :return: ``(center, multiplicity)`` pairs.
    """
    pts = np.asarray(approx, dtype=complex)
    remaining = list(range(len(pts)))
    clusters = []
    while remaining:
        first = remaining[0]
        nearest = sorted(remaining, key=lambda j: (abs(pts[j] - pts[first]), j))
        chosen = [first]
        for m in range(len(nearest), 1, -1):
            group = pts[nearest[:m]]
            center = group.mean()
            if np.max(np.abs(group - center)) <= max(1.0, abs(center)) * tol ** (1.0 / m):
                chosen = nearest[:m]
                break
        clusters.append((complex(pts[chosen].mean()), len(chosen)))
        remaining = [j for j in remaining if j not in chosen]
    return clusters


def polish(coeffs: np.ndarray, center: complex, mult: int, steps: int = 8) -> complex:
    """
    Newton refinement of a cluster center on ``p^(m-1)``, which has a simple root at a root of multiplicity ``m``.
    The center is kept when the refinement wanders off.

    :param coeffs: polynomial coefficients, lowest power first.
    :param center: cluster center.
    :param mult: cluster multiplicity.
    :param steps: Newton step budget.
    :return: the refined root.
    """
    target = P.polyder(coeffs, mult - 1) if mult > 1 else np.asarray(coeffs, dtype=complex)
    slope = P.polyder(target)
    reach = 1e-3 * max(1.0, abs(center))
    z = complex(center)
    eps = np.finfo(float).eps
    for _ in range(steps):
        with np.errstate(all='ignore'):
            step = complex(P.polyval(z, target) / P.polyval(z, slope))
        if not np.isfinite(step):
            break
        z_new = z - step
        if abs(z_new - center) > reach:
            return complex(center)
        z = z_new
        if abs(step) <= 4 * eps * max(1.0, abs(z)):
            break
    return z
