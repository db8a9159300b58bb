"""
JSON serialization of reports. Complex numbers become ``{"re", "im"}`` objects, the point at infinity becomes
``{"inf": true}``, numpy values become plain numbers and lists, and objects with a ``to_dict`` method are written
through it. Every report opens with its ``version`` field.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from newtonlab import helpers

REPORT_VERSION: str = '1.0'  #: Version of the report layout.


def to_jsonable(value: Any) -> Any:
    """
    Convert a report value to plain JSON types, keeping key order.

    :param value: a report value.
    :return: the converted value.
    """
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(item) for item in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        if helpers.is_infinity(value):
            return {'inf': True}
        return {'re': _finite(value.real), 'im': _finite(value.imag)}
    if isinstance(value, (float, np.floating)):
        return _finite(value)
    if hasattr(value, 'to_dict'):
        return to_jsonable(value.to_dict())
    if value is None or isinstance(value, str):
        return value
    return str(value)


def _finite(value) -> float | None:
    value = float(value)
    return value if math.isfinite(value) else None


def report_serialize(report: dict | None = None, version: str = REPORT_VERSION, indent: int | None = 2) -> str:
    """
    Serialize a report with the version field first.

    :param report: the report, None for an empty one.
    :param version: the layout version.
    :param indent: JSON indentation, None for a single line.
    :return: the JSON text.
    """
    data = {'version': version}
    for key, value in to_jsonable(report or {}).items():
        if key != 'version':
            data[key] = value
    return json.dumps(data, indent=indent, ensure_ascii=False)


def _decode_object(obj: dict) -> Any:
    if set(obj) == {'re', 'im'}:
        return complex(obj['re'] if obj['re'] is not None else float('nan'),
                       obj['im'] if obj['im'] is not None else float('nan'))
    if obj == {'inf': True}:
        return helpers.INFINITY
    return obj


def report_parse(text: str) -> dict:
    """
    Parse a serialized report, turning ``{"re", "im"}`` objects back into complex numbers.

    :param text: the JSON text.
    :return: the report, ``version`` included.
    """
    return json.loads(text, object_hook=_decode_object)


def error_report(stage: str, message: str, warnings: list | None = None) -> str:
    """
    Serialize the report written when a stage fails.
    """
    report = {'error': {'stage': stage, 'message': message}}
    if warnings:
        report['warnings'] = list(warnings)
    return report_serialize(report)
