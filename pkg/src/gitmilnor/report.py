"""JSON-ready encoding of results and certificates.

Rationals become "p/q" strings, 1-PS weights plain integers, frames
row-major lists of rational strings.  ``load_certificate`` reverses the
encoding for destabilizing certificates so they can be re-checked.
"""
from __future__ import annotations

import dataclasses
import json
from fractions import Fraction

from .linalg import GradedSubspace, PivotSet
from .oneps import FramedOnePS, OnePS
from .polycore import Poly, UpperTriangularChange, format_poly


def rational(x) -> str:
    return str(Fraction(x))


def encode(obj):
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, OnePS):
        return list(obj.weights)
    if isinstance(obj, Poly):
        return format_poly(obj)
    if isinstance(obj, FramedOnePS):
        return {"frame": encode_matrix(obj.frame), "oneps": list(obj.oneps.weights)}
    if isinstance(obj, UpperTriangularChange):
        return {"matrix": encode_matrix(obj.matrix())}
    if isinstance(obj, PivotSet):
        return {"monomials": [list(a) for a in obj.monomials], "weight": obj.weight,
                "oneps": list(obj.oneps.weights)}
    if isinstance(obj, GradedSubspace):
        return {"n": obj.n, "m": obj.m, "dim": obj.rank, "codim": obj.codim}
    if dataclasses.is_dataclass(obj):
        out = {"kind": type(obj).__name__}
        for f in dataclasses.fields(obj):
            out[f.name] = encode(getattr(obj, f.name))
        return out
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [encode(v) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def encode_matrix(M) -> list:
    return [[rational(v) for v in row] for row in M]


def load_certificate(data: dict) -> FramedOnePS:
    frame = tuple(tuple(Fraction(v) for v in row) for row in data["frame"])
    return FramedOnePS(frame, OnePS(tuple(int(w) for w in data["oneps"])))


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
