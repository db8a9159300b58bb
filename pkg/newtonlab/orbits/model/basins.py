"""
Immediate basins, entry times, postcritical orbits, pull-backs to component centers and the minimal-relation check
between critical orbits.

Immediate-basin membership is decided by :py:class:`BasinTest`, a heuristic: a point counts as being in the immediate
basin when it and a row of probes on the segment towards the basin anchor all receive the same outcome label. It can
be wrong near thin necks of a basin, so every result built on it is flagged as heuristic in reports.
"""

from __future__ import annotations

import logging
from typing import Callable, Dict, List, Tuple

import numpy as np

from newtonlab import helpers
from newtonlab.errors import Ambiguous, Inconclusive
from newtonlab.newton.model.newtonmap import NewtonMapSpec, critical_points
from newtonlab.orbits.model.grid import GridKernel
from newtonlab.orbits.model.iteration import EPS_CONV, MAX_STEPS, OrbitRules, iterate
from newtonlab.orbits.model.orbitrecord import CriticalOrbit, OrbitRecord, Outcome
from newtonlab.polyalg.complexpoly import poly_roots

PROBES: int = 8  #: Probe points on the segment towards the anchor.
LOOKAHEAD: int = 2000  #: Step budget for each probe.
LINEAR_RADIUS: float = 1e-3  #: Relative radius of the disk around a root that is taken as inside its basin.
CENTER_TOL: float = 1e-9  #: Relative gap below which two pull-back candidates are equidistant.


class Verdict:
    PASS = 'pass'
    FAIL = 'fail'
    INCONCLUSIVE = 'inconclusive'


class BasinTest:
    """
    Heuristic membership test for the immediate basin of a root or of a petal at infinity.
    """

    HEURISTIC = True

    def __init__(self,
                 N: NewtonMapSpec,
                 outcome: Outcome,
                 rules: OrbitRules | None = None,
                 probes: int = PROBES,
                 lookahead: int = LOOKAHEAD):
        """
        Create a test for the immediate basin reached by ``outcome``.

        :param N: the Newton map.
        :param outcome: a ``converged_to`` or ``petal`` outcome.
        :param rules: precomputed rules for the map.
        :param probes: number of probe points.
        :param lookahead: step budget per probe.
        """
        if not outcome.is_attracted():
            raise ValueError('No immediate basin for outcome {!r}'.format(outcome))
        self.rules: OrbitRules = rules if rules is not None else OrbitRules(N)
        self.outcome: Outcome = outcome
        self.kernel = GridKernel(self.rules, None, 0, 0, lookahead)
        self.label: int = self.rules.label_of(outcome)
        self.probes: int = probes
        if outcome.kind == Outcome.CONVERGED:
            self.anchor: complex = complex(self.rules.roots[outcome.index])
        else:
            self.anchor = self.rules.geometry.anchor(outcome.index)

    def __call__(self, z: complex) -> bool:
        if helpers.is_infinity(z):
            return False
        z = complex(z)
        end = self.anchor
        if self.outcome.kind == Outcome.CONVERGED:
            radius = LINEAR_RADIUS * max(1.0, abs(self.anchor))
            gap = abs(z - self.anchor)
            if gap <= radius:
                return True
            end = self.anchor + (z - self.anchor) * radius / gap
        t = np.arange(1, self.probes + 1) / self.probes
        points = np.concatenate([[z], z + t * (end - z)])
        labels, _ = self.kernel.classify_points(points)
        return bool(np.all(labels == self.label))


def entry_time(N: NewtonMapSpec, orbit: OrbitRecord, basin_test: Callable[[complex], bool] | None = None) -> int:
    """
    First iterate of an attracted orbit that lies in the immediate basin.

    :param N: the Newton map.
    :param orbit: an orbit with a ``converged_to`` or ``petal`` outcome.
    :param basin_test: membership test, a :py:class:`BasinTest` by default.
    :return: the entry time.
    :raises Inconclusive: if no orbit point passes the test.
    """
    if not orbit.outcome.is_attracted():
        raise Inconclusive('Orbit of {} is {!r}, no basin to enter'.format(orbit.start, orbit.outcome))
    if basin_test is None:
        basin_test = BasinTest(N, orbit.outcome)
    for k, z in enumerate(orbit.points):
        if basin_test(z):
            return k
    raise Inconclusive('No iterate of {} passed the immediate basin test'.format(orbit.start))


def postcritical_analysis(N: NewtonMapSpec,
                          max_steps: int = MAX_STEPS,
                          eps_conv: float = EPS_CONV,
                          rules: OrbitRules | None = None) -> List[CriticalOrbit]:
    """
    Iterate every critical point and record whether its orbit lands on a different critical point. Roots of ``p``
    are not counted as landing targets.

    :param N: the Newton map.
    :param max_steps: step budget per orbit.
    :param eps_conv: convergence and landing radius.
    :param rules: precomputed rules for the map.
    :return: one record per distinct critical point.
    """
    if rules is None:
        rules = OrbitRules(N, eps_conv)
    crits = critical_points(N)
    targets = [c for c, _ in crits
               if rules.root_count == 0 or np.min(helpers.spherical_distance(c, rules.roots)) >= eps_conv]
    records = []
    for c, mult in crits:
        orbit = iterate(N, c, max_steps, eps_conv, rules)
        landing = None
        for k, z in enumerate(orbit.points[1:], start=1):
            hits = [t for t in targets if helpers.spherical_distance(t, c) >= eps_conv
                    and helpers.spherical_distance(t, z) < eps_conv]
            if hits:
                landing = (hits[0], k)
                break
        records.append(CriticalOrbit(c, mult, orbit, landing))
    logging.debug('Postcritical analysis of {}: {}'.format(
        N, ', '.join('{}->{!r}'.format(r.critical_point, r.orbit.outcome) for r in records)))
    return records


def immediate_critical_points(critical_orbits: List[CriticalOrbit],
                              basin_test_factory: Callable[[Outcome], Callable[[complex], bool]]
                              ) -> Tuple[Dict[Outcome, Callable], Dict[Outcome, List[complex]]]:
    """
    Group the attracted critical points by basin and keep those that pass the immediate basin test.

    :param critical_orbits: output of :py:func:`postcritical_analysis`.
    :param basin_test_factory: builds a membership test for an outcome.
    :return: the test per outcome and the immediate critical points per outcome.
    """
    tests: Dict[Outcome, Callable] = {}
    immediate: Dict[Outcome, List[complex]] = {}
    for record in critical_orbits:
        outcome = record.orbit.outcome
        if not outcome.is_attracted():
            continue
        if outcome not in tests:
            tests[outcome] = basin_test_factory(outcome)
            immediate[outcome] = []
        if tests[outcome](record.critical_point):
            immediate[outcome].append(record.critical_point)
    return tests, immediate


def _relation_verdict(N: NewtonMapSpec,
                      record: CriticalOrbit,
                      basin_test: Callable,
                      targets: List[complex],
                      eps_conv: float) -> dict:
    entry = {'critical_point': record.critical_point, 'outcome': record.orbit.outcome.to_dict(), 'entry_time': None}
    try:
        m = entry_time(N, record.orbit, basin_test)
    except Inconclusive as e:
        entry.update(verdict=Verdict.INCONCLUSIVE, reason=str(e))
        return entry
    entry['entry_time'] = m
    points = record.orbit.points
    landings = [k for k in range(m, len(points))
                if any(helpers.spherical_distance(points[k], t) < eps_conv for t in targets)]
    if m in landings:
        entry['verdict'] = Verdict.PASS
    elif landings:
        entry.update(verdict=Verdict.FAIL, reason='lands on the immediate basin at iterate {}'.format(landings[0]))
    else:
        entry.update(verdict=Verdict.INCONCLUSIVE,
                     reason='iterate {} is not a critical point of the immediate basin'.format(m))
    return entry


def check_minimal_relations(N: NewtonMapSpec,
                            critical_orbits: List[CriticalOrbit],
                            basin_test_factory: Callable[[Outcome], Callable[[complex], bool]] | None = None,
                            eps_conv: float = EPS_CONV) -> List[dict]:
    """
    For every attracted critical orbit outside its immediate basin, check that the iterate at the entry time is a
    critical point of the immediate basin. An orbit that only lands on such a point later fails.

    :param N: the Newton map.
    :param critical_orbits: output of :py:func:`postcritical_analysis`.
    :param basin_test_factory: builds a membership test for an outcome, :py:class:`BasinTest` by default.
    :param eps_conv: landing radius.
    :return: one verdict dictionary per attracted critical orbit.
    """
    rules = OrbitRules(N, eps_conv)

    def default_factory(outcome):
        return BasinTest(N, outcome, rules)

    tests, immediate = immediate_critical_points(critical_orbits, basin_test_factory or default_factory)
    verdicts = []
    for record in critical_orbits:
        outcome = record.orbit.outcome
        if not outcome.is_attracted():
            continue
        if record.critical_point in immediate[outcome]:
            verdicts.append({'critical_point': record.critical_point, 'outcome': outcome.to_dict(),
                             'entry_time': 0, 'verdict': Verdict.PASS})
            continue
        targets = [t for t in immediate[outcome] if t != record.critical_point]
        verdicts.append(_relation_verdict(N, record, tests[outcome], targets, eps_conv))
    return verdicts


def _immediate_center(N: NewtonMapSpec, outcome: Outcome, rules: OrbitRules, basin_test: Callable,
                      max_steps: int) -> complex:
    if outcome.kind == Outcome.CONVERGED:
        return complex(rules.roots[outcome.index])
    found = []
    for c, _ in critical_points(N):
        if helpers.is_infinity(c) or any(helpers.spherical_distance(c, f) < rules.eps_conv for f in found):
            continue
        if iterate(N, c, max_steps, rules=rules).outcome == outcome and basin_test(c):
            found.append(c)
    if len(found) == 0:
        raise Inconclusive('No critical point found in the immediate basin of {!r}'.format(outcome))
    if len(found) > 1:
        raise Ambiguous('Immediate basin of {!r} holds {} critical points'.format(outcome, len(found)))
    return found[0]


def find_centers(N: NewtonMapSpec,
                 sample: complex,
                 entry: int | None = None,
                 max_steps: int = MAX_STEPS,
                 eps_conv: float = EPS_CONV,
                 tol: float = CENTER_TOL) -> complex:
    """
    Center of the Fatou component containing ``sample``: the attracting point (a root) or the unique critical point
    of the immediate basin (a petal), pulled back along the orbit of ``sample``. Each pull-back picks the preimage
    nearest to the orbit point.

    :param N: the Newton map.
    :param sample: a point of the component.
    :param entry: entry time of ``sample``; computed with :py:class:`BasinTest` when omitted.
    :param max_steps: step budget for orbits.
    :param eps_conv: convergence radius.
    :param tol: relative gap below which two candidates count as equidistant.
    :return: the center.
    :raises Inconclusive: if ``sample`` is not attracted or no center is found.
    :raises Ambiguous: if a pull-back has two equidistant candidates.
    """
    rules = OrbitRules(N, eps_conv)
    orbit = iterate(N, sample, max_steps, rules=rules)
    if not orbit.outcome.is_attracted():
        raise Inconclusive('Orbit of {} is {!r}'.format(sample, orbit.outcome))
    basin_test = BasinTest(N, orbit.outcome, rules)
    target = _immediate_center(N, orbit.outcome, rules, basin_test, max_steps)
    if entry is None:
        entry = entry_time(N, orbit, basin_test)
    if entry >= len(orbit.points):
        raise Inconclusive('Entry time {} exceeds the computed orbit'.format(entry))
    for k in range(entry - 1, -1, -1):
        level = N.map.num - N.map.den * target
        candidates = [root for root, _ in poly_roots(level)]
        gaps = sorted((abs(c - orbit.points[k]), idx) for idx, c in enumerate(candidates))
        if len(gaps) > 1 and gaps[1][0] - gaps[0][0] <= tol * max(1.0, gaps[0][0]):
            raise Ambiguous('Two preimages equidistant from {} at step {}'.format(orbit.points[k], k))
        target = candidates[gaps[0][1]]
    return target
