"""JSON ingestion and serialization for function and operator specs.

Functions are tagged unions keyed by ``kind``; complex numbers are always
``[re, im]`` pairs.  ``rotation`` is accepted on input as shorthand for
``scale(zeta, identity)``.
"""
from __future__ import annotations

import dataclasses
import math

import numpy as np

from .errors import BlochkitError
from .functions import (
    AnalyticFn,
    Automorphism,
    BlaschkeProduct,
    Compose,
    Const,
    Identity,
    LogTest,
    Monomial,
    Polynomial,
    Product,
    ReciprocalShift,
    Scale,
    Sum,
)


class SchemaError(BlochkitError, ValueError):
    pass


def complex_from_json(x) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    if (isinstance(x, (list, tuple)) and len(x) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x)):
        return complex(x[0], x[1])
    raise SchemaError(f"expected a complex number as [re, im], got {x!r}")


def complex_to_json(c) -> list:
    c = complex(c)
    return [c.real, c.imag]


def _need(obj: dict, key: str):
    if key not in obj:
        raise SchemaError(f"{obj.get('kind', 'object')!r} spec is missing {key!r}")
    return obj[key]


def rotation_spec_from_json(obj: dict):
    from .spectra import RotationSpec

    if "angle" in obj:
        return RotationSpec.irrational(float(obj["angle"]))
    if "p" in obj and "q" in obj:
        p, q = obj["p"], obj["q"]
        if not (isinstance(p, int) and isinstance(q, int)) or q < 1:
            raise SchemaError("rotation needs integers p and q >= 1")
        return RotationSpec.rational(p, q)
    raise SchemaError("rotation needs either {p, q} or {angle}")


def function_from_json(obj) -> AnalyticFn:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError(f"function spec must be an object with a 'kind', got {obj!r}")
    kind = obj["kind"]
    try:
        if kind == "const":
            return Const(complex_from_json(_need(obj, "c")))
        if kind == "identity":
            return Identity()
        if kind == "monomial":
            n = _need(obj, "n")
            if not isinstance(n, int) or isinstance(n, bool):
                raise SchemaError("monomial degree must be an integer")
            return Monomial(n)
        if kind == "polynomial":
            return Polynomial(tuple(complex_from_json(c) for c in _need(obj, "coeffs")))
        if kind == "automorphism":
            return Automorphism(complex_from_json(obj.get("eta", [1.0, 0.0])),
                                complex_from_json(_need(obj, "a")))
        if kind == "blaschke":
            return BlaschkeProduct(tuple(complex_from_json(a) for a in _need(obj, "zeros")),
                                   complex_from_json(obj.get("eta", [1.0, 0.0])))
        if kind == "logtest":
            return LogTest(float(_need(obj, "theta")))
        if kind in ("sum", "product"):
            node = Sum if kind == "sum" else Product
            return node(function_from_json(_need(obj, "lhs")), function_from_json(_need(obj, "rhs")))
        if kind == "scale":
            return Scale(complex_from_json(_need(obj, "c")), function_from_json(_need(obj, "inner")))
        if kind == "compose":
            return Compose(function_from_json(_need(obj, "outer")), function_from_json(_need(obj, "inner")))
        if kind == "reciprocal_shift":
            return ReciprocalShift(function_from_json(_need(obj, "inner")),
                                   complex_from_json(_need(obj, "lambda")))
        if kind == "rotation":
            return rotation_spec_from_json(obj).as_function()
    except SchemaError:
        raise
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad {kind!r} spec: {exc}") from exc
    raise SchemaError(f"unknown function kind {kind!r}")


def function_to_json(f: AnalyticFn) -> dict:
    if isinstance(f, Const):
        return {"kind": "const", "c": complex_to_json(f.c)}
    if isinstance(f, Identity):
        return {"kind": "identity"}
    if isinstance(f, Monomial):
        return {"kind": "monomial", "n": f.n}
    if isinstance(f, Polynomial):
        return {"kind": "polynomial", "coeffs": [complex_to_json(c) for c in f.coeffs]}
    if isinstance(f, Automorphism):
        return {"kind": "automorphism", "eta": complex_to_json(f.eta), "a": complex_to_json(f.a)}
    if isinstance(f, BlaschkeProduct):
        return {"kind": "blaschke", "zeros": [complex_to_json(a) for a in f.zeros],
                "eta": complex_to_json(f.eta)}
    if isinstance(f, LogTest):
        return {"kind": "logtest", "theta": f.theta}
    if isinstance(f, (Sum, Product)):
        return {"kind": "sum" if isinstance(f, Sum) else "product",
                "lhs": function_to_json(f.lhs), "rhs": function_to_json(f.rhs)}
    if isinstance(f, Scale):
        return {"kind": "scale", "c": complex_to_json(f.c), "inner": function_to_json(f.inner)}
    if isinstance(f, Compose):
        return {"kind": "compose", "outer": function_to_json(f.outer), "inner": function_to_json(f.inner)}
    if isinstance(f, ReciprocalShift):
        return {"kind": "reciprocal_shift", "inner": function_to_json(f.inner),
                "lambda": complex_to_json(f.lam)}
    raise TypeError(f"cannot serialize {type(f).__name__}")


def operator_from_json(obj):
    """{"kind": multiplication|composition|weighted, "psi": {...}, "phi": {...}}."""
    from .operators import OperatorSpec

    if not isinstance(obj, dict):
        raise SchemaError("operator spec must be an object")
    kind = obj.get("kind")
    try:
        if kind == "multiplication":
            return OperatorSpec.multiplication(function_from_json(_need(obj, "psi")))
        if kind == "composition":
            return OperatorSpec.composition(function_from_json(_need(obj, "phi")))
        if kind == "weighted":
            return OperatorSpec.weighted(function_from_json(_need(obj, "psi")),
                                         function_from_json(_need(obj, "phi")))
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    raise SchemaError(f"unknown operator kind {kind!r}")


def to_jsonable(x):
    """Recursively convert reports (dataclasses, complex, numpy) into JSON-ready values."""
    if hasattr(x, "to_json"):
        return to_jsonable(x.to_json())
    if isinstance(x, AnalyticFn):
        return function_to_json(x)
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return {f.name: to_jsonable(getattr(x, f.name)) for f in dataclasses.fields(x)}
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [to_jsonable(v) for v in x.tolist()]
    if isinstance(x, (complex, np.complexfloating)):
        return complex_to_json(x)
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return x
