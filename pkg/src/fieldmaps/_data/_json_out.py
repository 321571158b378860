import json
import math
from typing import Any

import numpy as np


def json_value(value: Any) -> Any:
    """Converts a result value into plain, deterministically ordered JSON data.

    Complex numbers become [re, im] pairs. Numpy scalars and arrays become
    python numbers and lists. Floats are rounded to 17 significant digits,
    which is exact for binary64 values. Non-finite floats become the strings
    'inf', '-inf' and 'nan'.
    Objects with a `to_json` method are converted through it.
    """
    if hasattr(value, 'to_json'):
        return json_value(value.to_json())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return _json_float(float(value))
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        return [_json_float(value.real), _json_float(value.imag)]
    if isinstance(value, np.ndarray):
        return [json_value(e) for e in value.tolist()]
    if isinstance(value, dict):
        return {str(k): json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_value(e) for e in value]
    if value is None or isinstance(value, str):
        return value
    raise NotImplementedError(f'Not JSON encodable: {value!r}')


def _json_float(x: float) -> Any:
    if math.isnan(x):
        return 'nan'
    if math.isinf(x):
        return 'inf' if x > 0 else '-inf'
    return float(f'{x:.17g}')


def dumps_report(report: Any) -> str:
    """Serializes a report so that equal reports produce identical text."""
    return json.dumps(json_value(report), sort_keys=True, indent=2) + '\n'


def json_complex(value: Any) -> complex:
    """Parses a complex number given as a number or as an [re, im] pair."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f'Expected [re, im] but got {value!r}')
        return complex(float(value[0]), float(value[1]))
    return complex(value)
