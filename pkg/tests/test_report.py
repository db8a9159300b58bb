import json

import numpy as np
from hypothesis import given
from hypothesis.strategies import complex_numbers, dictionaries, floats, integers, lists, one_of, text

from newtonlab import helpers
from newtonlab.frontend.report import REPORT_VERSION, error_report, report_parse, report_serialize, to_jsonable
from newtonlab.newton.model.fixedpoint import fixed_points
from newtonlab.newton.model.newtonmap import build_newton_map
from newtonlab.orbits.model.orbitrecord import Outcome
from newtonlab.polyalg.complexpoly import ComplexPoly

VALUES = one_of(integers(-10 ** 6, 10 ** 6), floats(allow_nan=False, allow_infinity=False),
                complex_numbers(allow_nan=False, allow_infinity=False), text(max_size=8))


class TestSerialize:

    def test_empty(self):
        text = report_serialize()
        assert json.loads(text) == {'version': REPORT_VERSION}
        assert report_serialize(None, indent=None) == '{"version": "' + REPORT_VERSION + '"}'

    def test_field_order(self):
        text = report_serialize({'b': 1, 'version': 'ignored', 'a': 2})
        assert list(json.loads(text)) == ['version', 'b', 'a']
        assert json.loads(text)['version'] == REPORT_VERSION

    def test_conversions(self):
        data = to_jsonable({
            'z': 1 - 2j,
            'inf': helpers.INFINITY,
            'array': np.array([1.5, 2.5]),
            'int': np.int64(3),
            'flag': np.bool_(True),
            'nan': float('nan'),
            'outcome': Outcome.converged_to(1),
            'pair': (1, 2)
        })
        assert data == {
            'z': {'re': 1.0, 'im': -2.0},
            'inf': {'inf': True},
            'array': [1.5, 2.5],
            'int': 3,
            'flag': True,
            'nan': None,
            'outcome': {'kind': 'converged_to', 'index': 1},
            'pair': [1, 2]
        }

    def test_fixed_points(self):
        N = build_newton_map(ComplexPoly([-1, 0, 1]), ComplexPoly())
        parsed = json.loads(report_serialize({'fixed_points': fixed_points(N)}))
        finite = [entry for entry in parsed['fixed_points'] if 're' in entry['location']]
        assert len(finite) == 2
        for entry in finite:
            assert abs(entry['multiplier']['re']) < 1e-12
            assert abs(entry['multiplier']['im']) < 1e-12
            assert entry['class'] == 'superattracting'
        assert parsed['fixed_points'][-1]['location'] == {'inf': True}

    def test_error_report(self):
        parsed = json.loads(error_report('build', 'p must not be the zero polynomial', ['careful']))
        assert parsed == {
            'version': REPORT_VERSION,
            'error': {'stage': 'build', 'message': 'p must not be the zero polynomial'},
            'warnings': ['careful']
        }


class TestParse:

    @given(dictionaries(text(min_size=1, max_size=8), one_of(VALUES, lists(VALUES, max_size=4)), max_size=6))
    def test_round_trip(self, report):
        report = {key: value for key, value in report.items() if key != 'version'}
        parsed = report_parse(report_serialize(report))
        assert parsed.pop('version') == REPORT_VERSION
        assert parsed == report

    def test_infinity(self):
        parsed = report_parse(report_serialize({'point': helpers.INFINITY}))
        assert helpers.is_infinity(parsed['point'])
