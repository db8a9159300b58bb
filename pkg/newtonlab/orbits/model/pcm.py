"""
Postcritically-minimal check for Newton maps with a parabolic point at infinity.

A map passes when every critical orbit outside the parabolic basins is finite or sits in a superattracting basin,
every petal at infinity holds exactly one critical point in its immediate basin, and every other critical orbit
captured by a parabolic basin first enters the immediate basin on that critical point.
"""

from __future__ import annotations

import logging
from typing import List, Tuple

import numpy as np

from newtonlab import helpers
from newtonlab.errors import NotParabolic, PoleHit
from newtonlab.newton.model.newtonmap import NewtonMapSpec
from newtonlab.orbits.model.basins import (BasinTest, Verdict, check_minimal_relations, immediate_critical_points,
                                           postcritical_analysis)
from newtonlab.orbits.model.iteration import EPS_CONV, MAX_STEPS, OrbitRules
from newtonlab.orbits.model.orbitrecord import CriticalOrbit, OrbitRecord, Outcome

SUPERATTRACTING_TOL: float = 1e-6  #: Cycle multipliers below this modulus count as superattracting.
LANDED_TOL: float = 1e-12  #: Relative distance to a root below which a critical orbit has landed on it.


class PCMReport:
    """
    Result of :py:func:`pcm_report`.
    """

    def __init__(self,
                 overall: str,
                 petal_critical_counts: List[int],
                 critical_orbits: List[CriticalOrbit],
                 relations: List[dict],
                 failures: List[str],
                 unknowns: List[str]):
        """
        Create a new report.

        :param overall: ``pass``, ``fail`` or ``inconclusive``.
        :param petal_critical_counts: number of critical points in the immediate basin of each petal.
        :param critical_orbits: the analysed critical orbits.
        :param relations: verdicts of the minimal-relation check for orbits captured by petals.
        :param failures: reasons for a ``fail``.
        :param unknowns: reasons for an ``inconclusive``.
        """
        self.overall: str = overall
        self.petal_critical_counts: List[int] = petal_critical_counts
        self.critical_orbits: List[CriticalOrbit] = critical_orbits
        self.relations: List[dict] = relations
        self.failures: List[str] = failures
        self.unknowns: List[str] = unknowns

    def to_dict(self) -> dict:
        return {
            'overall': self.overall,
            'heuristic': BasinTest.HEURISTIC,
            'petal_critical_counts': self.petal_critical_counts,
            'critical_orbits': [record.to_dict() for record in self.critical_orbits],
            'relations': self.relations,
            'failures': self.failures,
            'unknowns': self.unknowns
        }


def cycle_multiplier(N: NewtonMapSpec, orbit: OrbitRecord) -> complex | None:
    """
    Multiplier of the cycle an eventually periodic orbit falls into.

    :param N: the Newton map.
    :param orbit: an orbit with a ``cycle`` outcome.
    :return: the multiplier, or None when the cycle passes through a pole or through infinity with period above 1.
    """
    period = orbit.outcome.period
    start = orbit.outcome.preperiod
    cycle = orbit.points[start:start + period]
    if any(helpers.is_infinity(z) for z in cycle):
        if period == 1:
            return complex(N.map.chart.taylor_at(0, 1)[1])
        return None
    try:
        return complex(np.prod([N.map.derivative_at(z) for z in cycle]))
    except PoleHit:
        return None


def _clause_nonparabolic(N: NewtonMapSpec, record: CriticalOrbit) -> Tuple[str | None, str | None]:
    """
    Check one critical orbit that is not captured by a petal.

    :return: ``(failure, unknown)``, at most one of them set.
    """
    outcome = record.orbit.outcome
    c = record.critical_point
    if outcome.kind == Outcome.CYCLE:
        multiplier = cycle_multiplier(N, record.orbit)
        if multiplier is not None and SUPERATTRACTING_TOL < abs(multiplier) < 1 - SUPERATTRACTING_TOL:
            return 'critical point {} is attracted by a cycle with multiplier {}'.format(c, multiplier), None
        return None, None
    if outcome.kind == Outcome.CONVERGED:
        root, mult = N.roots[outcome.index]
        if mult > 1:
            return 'critical point {} is attracted by the multiple root {}'.format(c, root), None
        if abs(record.orbit.points[-1] - root) <= LANDED_TOL * max(1.0, abs(root)):
            return None, None
        return None, 'critical orbit of {} converges to {} without landing'.format(c, root)
    if outcome.kind == Outcome.UNDECIDED:
        return None, 'critical orbit of {} undecided after {} steps'.format(c, record.orbit.steps)
    return None, None


def pcm_report(N: NewtonMapSpec,
               max_steps: int = MAX_STEPS,
               eps_conv: float = EPS_CONV,
               basin_test_factory=None) -> PCMReport:
    """
    Run the postcritically-minimal check.

    :param N: a Newton map with ``deg q >= 1``.
    :param max_steps: step budget per critical orbit.
    :param eps_conv: convergence and landing radius.
    :param basin_test_factory: builds an immediate-basin test for an outcome, :py:class:`BasinTest` by default.
    :return: the report.
    :raises NotParabolic: if ``deg q < 1``.
    """
    if N.n < 1:
        raise NotParabolic('The check needs a parabolic infinity, got deg q = {}'.format(N.n))
    rules = OrbitRules(N, eps_conv)

    def default_factory(outcome):
        return BasinTest(N, outcome, rules)

    factory = basin_test_factory or default_factory
    records = postcritical_analysis(N, max_steps, eps_conv, rules)
    failures, unknowns = [], []

    for record in records:
        failure, unknown = _clause_nonparabolic(N, record)
        if failure is not None:
            failures.append(failure)
        if unknown is not None:
            unknowns.append(unknown)

    _, immediate = immediate_critical_points(records, factory)
    counts = [len(immediate.get(Outcome.petal(j), [])) for j in range(rules.petal_count)]
    for j, count in enumerate(counts):
        if count != 1:
            failures.append('petal {} holds {} critical points in its immediate basin'.format(j, count))

    petal_records = [record for record in records if record.orbit.outcome.kind == Outcome.PETAL]
    relations = check_minimal_relations(N, petal_records, factory, eps_conv)
    for entry in relations:
        reason = 'critical point {}: {}'.format(entry['critical_point'], entry.get('reason'))
        {Verdict.FAIL: failures, Verdict.INCONCLUSIVE: unknowns}.get(entry['verdict'], []).append(reason)

    overall = Verdict.FAIL if failures else Verdict.INCONCLUSIVE if unknowns else Verdict.PASS
    logging.debug('PCM check of {}: {}'.format(N, overall))
    return PCMReport(overall, counts, records, relations, failures, unknowns)
