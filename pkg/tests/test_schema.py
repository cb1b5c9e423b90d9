import json

import numpy as np
import pytest
from hypothesis import given, settings

from blochkit.functions import Identity, Scale, evaluate
from blochkit.operators import OperatorSpec
from blochkit.schema import (
    SchemaError,
    function_from_json,
    function_to_json,
    operator_from_json,
    to_jsonable,
)
from blochkit.spectra import RotationSpec
from strategies import trees

PTS = 0.9 * np.sqrt(np.linspace(0, 1, 100)) * np.exp(2.399963j * np.arange(100))


@settings(max_examples=80, deadline=None)
@given(trees)
def test_round_trip(f):
    g = function_from_json(json.loads(json.dumps(function_to_json(f))))
    assert g == f
    try:
        a, b = evaluate(f, PTS), evaluate(g, PTS)
    except Exception:
        return
    assert np.max(np.abs(a - b)) <= 1e-15


def test_rotation_shorthand():
    f = function_from_json({"kind": "rotation", "p": 1, "q": 4})
    assert f == Scale(RotationSpec.rational(1, 4).zeta, Identity())
    assert isinstance(function_from_json({"kind": "rotation", "angle": 1.0}), Scale)


@pytest.mark.parametrize("bad", [
    {"kind": "const"},
    {"kind": "nope"},
    {"kind": "monomial", "n": 1.5},
    {"kind": "automorphism", "a": [2, 0]},
    {"kind": "const", "c": "1"},
    {"kind": "rotation", "p": 1},
    [1, 2],
])
def test_rejects(bad):
    with pytest.raises(SchemaError):
        function_from_json(bad)


def test_operator_parsing():
    op = operator_from_json({"kind": "weighted", "psi": {"kind": "identity"},
                             "phi": {"kind": "monomial", "n": 2}})
    assert op == OperatorSpec.weighted(Identity(), function_from_json({"kind": "monomial", "n": 2}))
    with pytest.raises(SchemaError):
        operator_from_json({"kind": "composition", "phi": {"kind": "const", "c": [2, 0]}})
    with pytest.raises(SchemaError):
        operator_from_json({"kind": "shift"})


def test_to_jsonable():
    out = to_jsonable({"a": 1 + 2j, "b": np.array([1.0, 2.0]), "c": float("inf"), "d": np.bool_(True)})
    assert out == {"a": [1.0, 2.0], "b": [1.0, 2.0], "c": "inf", "d": True}
