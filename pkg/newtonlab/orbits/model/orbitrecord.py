"""
Contains the ``Outcome``, ``OrbitRecord`` and ``CriticalOrbit`` classes, which hold forward orbits and their
classification.
"""

from __future__ import annotations

from typing import List, Tuple


class Outcome:
    """
    Classification of a forward orbit: convergence to a root, convergence to infinity through a petal, an eventually
    periodic orbit, or no decision within the step budget.
    """

    CONVERGED = 'converged_to'
    PETAL = 'petal'
    CYCLE = 'cycle'
    UNDECIDED = 'undecided'

    def __init__(self, kind: str, index: int | None = None, period: int | None = None, preperiod: int | None = None):
        self.kind: str = kind
        self.index: int | None = index
        self.period: int | None = period
        self.preperiod: int | None = preperiod

    @staticmethod
    def converged_to(index: int) -> Outcome:
        return Outcome(Outcome.CONVERGED, index=index)

    @staticmethod
    def petal(index: int) -> Outcome:
        return Outcome(Outcome.PETAL, index=index)

    @staticmethod
    def cycle(period: int, preperiod: int) -> Outcome:
        return Outcome(Outcome.CYCLE, period=period, preperiod=preperiod)

    @staticmethod
    def undecided() -> Outcome:
        return Outcome(Outcome.UNDECIDED)

    def is_attracted(self) -> bool:
        return self.kind in (Outcome.CONVERGED, Outcome.PETAL)

    def to_dict(self) -> dict:
        data = {'kind': self.kind}
        if self.kind in (Outcome.CONVERGED, Outcome.PETAL):
            data['index'] = self.index
        if self.kind == Outcome.CYCLE:
            data['period'] = self.period
            data['preperiod'] = self.preperiod
        return data

    def __eq__(self, other):
        if not isinstance(other, Outcome):
            return NotImplemented
        return (self.kind, self.index, self.period, self.preperiod) == (
            other.kind, other.index, other.period, other.preperiod)

    def __hash__(self):
        return hash((self.kind, self.index, self.period, self.preperiod))

    def __repr__(self):
        if self.kind == Outcome.CYCLE:
            return 'cycle({}, {})'.format(self.period, self.preperiod)
        if self.kind == Outcome.UNDECIDED:
            return 'undecided'
        return '{}({})'.format(self.kind, self.index)


class OrbitRecord:
    """
    A forward orbit ``points[k+1] = N(points[k])`` with its classification.
    """

    def __init__(self, start: complex, points: List[complex], outcome: Outcome, steps: int):
        """
        Create a new orbit record.

        :param start: the starting point.
        :param points: the orbit, ``points[0] == start``.
        :param outcome: the classification.
        :param steps: number of map evaluations performed.
        """
        self.start: complex = start
        self.points: List[complex] = points
        self.outcome: Outcome = outcome
        self.steps: int = steps

    def to_dict(self, include_points: bool = False) -> dict:
        data = {'start': self.start, 'outcome': self.outcome.to_dict(), 'steps': self.steps}
        if include_points:
            data['points'] = list(self.points)
        return data


class CriticalOrbit:
    """
    The orbit of a critical point, with the first landing on a different critical point if there is one.
    """

    def __init__(self,
                 critical_point: complex,
                 multiplicity: int,
                 orbit: OrbitRecord,
                 lands_on_critical: Tuple[complex, int] | None = None):
        """
        Create a new critical orbit record.

        :param critical_point: the critical point.
        :param multiplicity: its multiplicity.
        :param orbit: its forward orbit.
        :param lands_on_critical: ``(target critical point, entry iterate)`` if the orbit lands on another critical point.
        """
        self.critical_point: complex = critical_point
        self.multiplicity: int = multiplicity
        self.orbit: OrbitRecord = orbit
        self.lands_on_critical: Tuple[complex, int] | None = lands_on_critical

    def to_dict(self) -> dict:
        data = {
            'critical_point': self.critical_point,
            'multiplicity': self.multiplicity,
            'orbit': self.orbit.to_dict()
        }
        if self.lands_on_critical is not None:
            data['lands_on_critical'] = {'target': self.lands_on_critical[0], 'iterate': self.lands_on_critical[1]}
        return data
