"""
Disk models for the surgery: the attracting family ``B_b(z) = (z^k + b) / (1 + b z^k)`` on the unit disk, its parabolic
member ``P_k`` at ``b = (k-1)/(k+1)``, and the solver that picks ``b`` for a target multiplier.
"""

from __future__ import annotations

import logging
from typing import List, Tuple

import numpy as np
from scipy import optimize

from newtonlab.blaschke.model.moebius import MoebiusTransform
from newtonlab.errors import BadDegree, NoBracket, PoleHit
from newtonlab.polyalg.complexpoly import ComplexPoly

FIXED_TOL: float = 1e-12  #: Residual allowed for ``B_b(alpha) = alpha``.
STEP_TOL: float = 1e-14  #: Step size at which the iteration towards alpha stops.
MAX_ITERATIONS: int = 1000000  #: Cap on the iteration towards alpha.
REMAINDER_TOL: float = 1e-12  #: Largest remainder coefficient accepted by the triple-root check.
SOLVER_XTOL: float = 1e-15


def parabolic_parameter(k: int) -> float:
    return (k - 1) / (k + 1)


class BlaschkeModel:
    """
    One member ``B_b`` of the family, with its attracting (or parabolic) fixed point ``alpha`` in ``(0, 1]``.
    """

    def __init__(self, k: int, b: float, alpha: float, multiplier: float):
        """
        Create a new model. Use :py:func:`parabolic_blaschke` or :py:func:`solve_b_for_multiplier` rather than calling
        this directly.

        :param k: the degree, at least 2.
        :param b: the parameter, ``0 <= b <= (k-1)/(k+1)``.
        :param alpha: the fixed point on ``(0, 1]``.
        :param multiplier: ``B_b'(alpha)``.
        """
        self.k: int = k
        self.b: float = b
        self.alpha: float = alpha
        self.multiplier: float = multiplier

    def is_parabolic(self) -> bool:
        return self.alpha == 1.0

    def __call__(self, z):
        return eval_blaschke(self, z)

    def derivative(self, z):
        """
        ``B_b'(z) = k (1 - b^2) z^(k-1) / (1 + b z^k)^2``.
        """
        zk = np.power(z, self.k)
        return self.k * (1 - self.b ** 2) * np.power(z, self.k - 1) / (1 + self.b * zk) ** 2

    def to_dict(self) -> dict:
        return {'k': self.k, 'b': self.b, 'alpha': self.alpha, 'multiplier': self.multiplier}

    def __str__(self):
        return 'B(k={}, b={:.15g}, alpha={:.15g})'.format(self.k, self.b, self.alpha)


def _check_degree(k: int):
    if k < 2:
        raise BadDegree('Blaschke degree must be at least 2, got {}'.format(k))


def parabolic_blaschke(k: int) -> BlaschkeModel:
    """
    The parabolic product ``P_k``, with a triple fixed point at 1.

    :param k: the degree.
    :return: the model with ``b = (k-1)/(k+1)``, ``alpha = 1`` and multiplier 1.
    :raises BadDegree: if ``k < 2``.
    """
    _check_degree(k)
    return BlaschkeModel(k, parabolic_parameter(k), 1.0, 1.0)


def eval_blaschke(model: BlaschkeModel, z):
    """
    Evaluate the model at a point or an array of points.

    :raises PoleHit: if ``1 + b z^k`` vanishes.
    """
    zk = np.power(np.asarray(z, dtype=complex), model.k)
    den = 1 + model.b * zk
    if np.any(den == 0):
        raise PoleHit('Blaschke product evaluated at a pole z={}'.format(z))
    value = (zk + model.b) / den
    return complex(value) if np.ndim(value) == 0 else value


def attracting_fixed_point(k: int, b: float) -> float:
    """
    The fixed point of ``B_b`` on ``(0, 1]``, found by iterating from 0 and polishing once with Newton on
    ``B_b(z) - z``.

    :param k: the degree.
    :param b: the parameter.
    :return: alpha.
    """
    if b <= 0:
        return 0.0
    if b >= parabolic_parameter(k):
        return 1.0
    model = BlaschkeModel(k, b, 0.0, 0.0)
    x = 0.0
    for _ in range(MAX_ITERATIONS):
        step = eval_blaschke(model, x).real
        if abs(step - x) < STEP_TOL:
            x = step
            break
        x = step
    else:
        logging.warning('Fixed point iteration for {} stopped after {} steps'.format(model, MAX_ITERATIONS))
    slope = model.derivative(x).real - 1
    if slope != 0:
        x -= (eval_blaschke(model, x).real - x) / slope
    return x


def fixed_point_multiplier(k: int, b: float) -> float:
    if b <= 0:
        return 0.0
    if b >= parabolic_parameter(k):
        return 1.0
    alpha = attracting_fixed_point(k, b)
    return float(BlaschkeModel(k, b, alpha, 0.0).derivative(alpha).real)


def multiplier_identity_residual(k: int, b: float, alpha: float, multiplier: float) -> float:
    """
    Residual of ``k (alpha - b)(1 - alpha b) = multiplier * alpha (1 - b^2)``, which holds at the fixed point.
    """
    return k * (alpha - b) * (1 - alpha * b) - multiplier * alpha * (1 - b ** 2)


def solve_b_for_multiplier(k: int, target: float) -> BlaschkeModel:
    """
    Find ``b`` such that the attracting fixed point of ``B_b`` has multiplier ``target``. The multiplier rises from 0
    at ``b = 0`` to 1 at ``b = (k-1)/(k+1)``, so the solver bisects on that interval.

    :param k: the degree.
    :param target: the multiplier, in ``(0, 1)``.
    :return: the model.
    :raises BadDegree: if ``k < 2``.
    :raises NoBracket: if the endpoint multipliers do not straddle ``target``.
    """
    _check_degree(k)
    top = parabolic_parameter(k)

    def gap(b):
        return fixed_point_multiplier(k, b) - target

    if not gap(0.0) < 0 < gap(top):
        raise NoBracket('Multiplier {} is not between 0 and 1'.format(target))
    b = optimize.bisect(gap, 0.0, top, xtol=SOLVER_XTOL)
    alpha = attracting_fixed_point(k, b)
    model = BlaschkeModel(k, b, alpha, fixed_point_multiplier(k, b))
    residual = multiplier_identity_residual(k, b, alpha, model.multiplier)
    logging.debug('Solved {} for multiplier {}, identity residual {:.3g}'.format(model, target, residual))
    return model


def multiplier_at_one(model: BlaschkeModel) -> float:
    """
    Multiplier of ``B_b`` at its fixed point 1: ``k (1 - b) / (1 + b)``.
    """
    return model.k * (1 - model.b) / (1 + model.b)


def critical_orbit(model: BlaschkeModel, n: int) -> List[float]:
    """
    The orbit ``0, b, B(b), ...`` of the critical point, ``n + 1`` points.
    """
    orbit = [0.0]
    for _ in range(n):
        orbit.append(eval_blaschke(model, orbit[-1]).real)
    return orbit


def fixed_point_polynomial(k: int, a: float, monic: bool = False) -> ComplexPoly:
    """
    The fixed point equation of ``(z^k + a) / (1 + a z^k)``: ``a z^(k+1) - z^k + z - a``.

    :param k: the degree.
    :param a: the parameter.
    :param monic: divide by ``a``.
    :return: the polynomial.
    """
    coeffs = np.zeros(k + 2, dtype=complex)
    coeffs[0] = -a
    coeffs[1] = 1
    coeffs[k] = -1
    coeffs[k + 1] = a
    poly = ComplexPoly(coeffs)
    return poly.monic() if monic else poly


def verify_triple_root(k: int, a: float | None = None) -> dict:
    """
    Check that 1 is a triple fixed point: divide the fixed point polynomial by ``(z-1)^3`` and test the second
    derivative criterion ``(k+1) k - k (k-1) / a = 0``.

    :param k: the degree.
    :param a: the parameter, ``(k-1)/(k+1)`` by default.
    :return: a dictionary with ``passed``, ``remainder_norm``, ``quotient`` and ``second_derivative``.
    """
    _check_degree(k)
    if a is None:
        a = parabolic_parameter(k)
    quotient, remainder = fixed_point_polynomial(k, a, monic=True).divmod(ComplexPoly.from_roots([1, 1, 1]))
    remainder_norm = float(np.max(np.abs(remainder.coeffs)))
    second = (k + 1) * k - k * (k - 1) / a
    return {
        'k': k,
        'a': a,
        'passed': remainder_norm < REMAINDER_TOL and abs(second) < REMAINDER_TOL * k * k,
        'remainder_norm': remainder_norm,
        'quotient': list(quotient.coeffs),
        'second_derivative': second
    }


def moebius_factorization(model: BlaschkeModel, samples: int = 16) -> Tuple[MoebiusTransform, int]:
    """
    Write ``B_b = M_b o (z -> z^k)`` and check it on points of the disk.

    :param model: the model.
    :param samples: number of check points.
    :return: ``M_b`` and the power ``k``.
    """
    factor = MoebiusTransform.create_disk_translation(model.b)
    rng = np.random.default_rng(0)
    z = 0.95 * np.sqrt(rng.uniform(0, 1, samples)) * np.exp(2j * np.pi * rng.uniform(0, 1, samples))
    error = float(np.max(np.abs(factor(z ** model.k) - eval_blaschke(model, z))))
    if error > FIXED_TOL:
        logging.warning('Moebius factorization of {} is off by {:.3g}'.format(model, error))
    return factor, model.k
