"""JSON helpers: integers wider than 64 bits travel as decimal strings."""

import json

from .errors import ValidationError

_LIMIT = 1 << 63


def encode_int(n):
    n = int(n)
    if -_LIMIT <= n < _LIMIT:
        return n
    return str(n)


def decode_int(v):
    if isinstance(v, bool):
        raise ValidationError(f"expected an integer, got {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v, 10)
        except ValueError:
            pass
    raise ValidationError(f"expected an integer, got {v!r}")


def encode(obj):
    """Recursively replace ints in lists/tuples/dicts by their JSON encoding."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return encode_int(obj)
    if isinstance(obj, dict):
        return {k: encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj):
    return json.dumps(encode(obj), sort_keys=True, separators=(",", ":"))
