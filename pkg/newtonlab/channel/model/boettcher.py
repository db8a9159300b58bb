"""
Local Boettcher coordinate at a superattracting fixed point.

Near a fixed point ``xi`` of local degree ``k`` the map is ``N(xi + h) = xi + a h^k + ...``. With ``c = a^(1/(k-1))``
and ``v = c (z - xi)`` the germ becomes ``F(v) = v^k (1 + O(v))`` and the chart is the limit of ``F^n(v)^(1/k^n)``,
evaluated as ``v`` times the product of ``G(F^n(v))^(1/k^(n+1))`` with ``G(u) = F(u) / u^k``. Each factor is close to 1,
so principal roots keep one branch throughout.
"""

from __future__ import annotations

import numpy as np

from newtonlab.errors import NonSuperattracting, NotFixed
from newtonlab.newton.model.newtonmap import NewtonMapSpec, first_nonvanishing
from newtonlab.polyalg.ratmap import RatMap

SERIES_ORDER: int = 48  #: Taylor order used for ``G`` close to the fixed point.
SERIES_RADIUS: float = 1e-2  #: Below this ``|u|`` the series replaces direct evaluation of ``G``.
STOP_RADIUS: float = 1e-18  #: Orbits below this modulus contribute factors equal to 1 in double precision.
DEGREE_WINDOW: int = 16  #: Local degrees are looked for among the first coefficients only.
MAX_FACTORS: int = 64
FIXED_TOL: float = 1e-10
INVERSE_STEPS: int = 60
INVERSE_TOL: float = 1e-15


class BoettcherChart:
    """
    The chart ``phi`` with ``phi(N(z)) = phi(z)^k`` and ``phi(z) = c (z - xi) + O((z - xi)^2)``.
    """

    def __init__(self, ratmap: RatMap, root: complex):
        """
        Create a new chart.

        :param ratmap: the map.
        :param root: a superattracting fixed point.
        :raises NotFixed: if ``root`` is not fixed.
        :raises NonSuperattracting: if the multiplier at ``root`` is not 0.
        """
        series = ratmap.taylor_at(root, SERIES_ORDER)
        if abs(series[0] - root) > FIXED_TOL * max(1.0, abs(root)):
            raise NotFixed('{} is not fixed, it maps to {}'.format(root, series[0]))
        degree = first_nonvanishing(series[:DEGREE_WINDOW], 1)
        if degree is None or degree < 2:
            raise NonSuperattracting('Multiplier at {} is {}'.format(root, series[1]))
        self.map: RatMap = ratmap
        self.root: complex = complex(root)
        self.degree: int = degree
        #: Leading coefficient of ``N(xi + h) - xi``
        self.leading: complex = complex(series[degree])
        self.scale: complex = self.leading ** (1.0 / (degree - 1))
        # G(u) = sum_j a_j c^(1-j) u^(j-k), highest power first for polyval
        powers = np.arange(degree, SERIES_ORDER + 1)
        self._ratio_series: np.ndarray = (series[degree:] * self.scale ** (1.0 - powers))[::-1]

    def germ(self, v):
        """
        ``F(v) = c (N(xi + v / c) - xi)``, vectorised.
        """
        return self.scale * (self.map.evaluate_sphere(self.root + np.asarray(v) / self.scale) - self.root)

    def ratio(self, u) -> np.ndarray:
        """
        ``G(u) = F(u) / u^k``, from the Taylor series when ``u`` is small.
        """
        u = np.atleast_1d(np.asarray(u, dtype=complex))
        small = np.abs(u) < SERIES_RADIUS
        out = np.empty_like(u)
        out[small] = np.polyval(self._ratio_series, u[small])
        if np.any(~small):
            out[~small] = self.germ(u[~small]) / u[~small] ** self.degree
        return out

    def __call__(self, z):
        """
        Evaluate the chart at a point or an array of points of the immediate basin near the root.
        """
        z = np.asarray(z, dtype=complex)
        scalar = z.ndim == 0
        v = np.atleast_1d(self.scale * (z - self.root))
        value = v.copy()
        orbit = v.copy()
        active = np.abs(orbit) >= STOP_RADIUS
        power = float(self.degree)
        for _ in range(MAX_FACTORS):
            if not np.any(active):
                break
            factor = self.ratio(orbit[active])
            value[active] *= factor ** (1.0 / power)
            orbit[active] = orbit[active] ** self.degree * factor
            active[active] = np.abs(orbit[active]) >= STOP_RADIUS
            power *= self.degree
        return complex(value[0]) if scalar else value

    def inverse(self, t: complex) -> complex:
        """
        The point ``z`` near the root with ``phi(z) = t``, by Newton iteration from ``root + t / c``.
        """
        z = self.root + t / self.scale
        for _ in range(INVERSE_STEPS):
            h = 1e-7 * max(abs(z - self.root), 1e-12)
            slope = (self(z + h) - self(z - h)) / (2 * h)
            step = (self(z) - t) / slope
            z -= step
            if abs(step) <= INVERSE_TOL * max(1.0, abs(z)):
                break
        return complex(z)

    def residual(self, z) -> float:
        """
        Largest ``|phi(N(z)) - phi(z)^k|`` over the given points.
        """
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        return float(np.max(np.abs(self(self.map.evaluate_sphere(z)) - self(z) ** self.degree)))

    def to_dict(self) -> dict:
        return {'root': self.root, 'degree': self.degree, 'leading': self.leading, 'scale': self.scale}


def local_boettcher(N: NewtonMapSpec | RatMap, root: complex) -> BoettcherChart:
    """
    Build the Boettcher chart of ``N`` at a superattracting fixed point.

    :param N: a Newton map or a bare rational map.
    :param root: the fixed point.
    :return: the chart.
    :raises NonSuperattracting: if the multiplier at ``root`` is not 0.
    """
    ratmap = N.map if isinstance(N, NewtonMapSpec) else N
    return BoettcherChart(ratmap, root)
