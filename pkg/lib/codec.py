#!/usr/bin/env python3
"""
JSON wire format for HyperQ values.

Complex numbers travel as [re, im] pairs, vectors and matrices as (nested)
row-major arrays of pairs, quaternions as {"p0", "p1"} and the point at
infinity as the string "inf".
"""
import json

import numpy as np

from .errors import SchemaError
from .numeric import INF, Infinity, Quat


def encode_complex(z):
    z = complex(z)
    return [z.real, z.imag]


def encode_array(a):
    a = np.asarray(a, dtype=complex)
    if a.ndim == 0:
        return encode_complex(a)
    return [encode_array(row) for row in a]


def encode_quat(q):
    if q is INF:
        return INF.value
    return {"p0": encode_complex(q.p0), "p1": encode_complex(q.p1)}


def to_jsonable(obj):
    """Recursively convert numpy values, enums, quaternions and complex numbers."""
    if isinstance(obj, Quat) or isinstance(obj, Infinity):
        return encode_quat(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return encode_array(obj)
        return obj.tolist()
    if isinstance(obj, (complex, np.complexfloating)):
        return encode_complex(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def dumps(obj):
    return json.dumps(to_jsonable(obj), indent=2) + "\n"


# --- Decoding ---

def decode_complex(value):
    if isinstance(value, bool):
        raise SchemaError(f"not a complex number: {value!r}")
    if isinstance(value, (int, float)):
        return complex(value, 0.0)
    if isinstance(value, (list, tuple)) and len(value) == 2 \
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
        return complex(value[0], value[1])
    raise SchemaError(f"expected a number or an [re, im] pair, got {value!r}")


def decode_vector(value, length):
    if not isinstance(value, list) or len(value) != length:
        raise SchemaError(f"expected an array of {length} complex entries")
    return np.array([decode_complex(v) for v in value], dtype=complex)


def decode_matrix(value, size):
    if not isinstance(value, list) or len(value) != size:
        raise SchemaError(f"expected a {size}x{size} matrix")
    return np.array([decode_vector(row, size) for row in value], dtype=complex)


def decode_quat(value):
    if value == INF.value:
        return INF
    if isinstance(value, dict) and set(value) == {"p0", "p1"}:
        return Quat(decode_complex(value["p0"]), decode_complex(value["p1"]))
    if isinstance(value, list) and len(value) == 2:
        return Quat(decode_complex(value[0]), decode_complex(value[1]))
    raise SchemaError(f"expected a quaternion {{p0, p1}} or \"inf\", got {value!r}")


def parse_json(text, what):
    try:
        return json.loads(text)
    except (json.JSONDecodeError, TypeError) as e:
        raise SchemaError(f"{what}: invalid JSON ({e})")
