import json
import math
from enum import Enum
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dkpstring.emit import fmt_display, fmt_full, svg_polyline, to_csv, to_json


class Color(str, Enum):
    RED = "red"


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_full_precision_round_trips(x):
    assert float(fmt_full(x)) == x


def test_display_six_digits():
    assert fmt_display(3.152290123) == "3.15229"
    assert fmt_display(None) == ""


def test_negative_zero_folded():
    assert fmt_full(-0.0) == "0"
    assert to_json({"x": -0.0}).count("-") == 0


def test_json_types():
    text = to_json({"a": np.float64(0.1), "b": [1, True, None], "c": Fraction(3, 2), "d": Color.RED,
                    "e": math.inf, "f": np.array([1.0, 2.0]), "g": {}})
    doc = json.loads(text)
    assert doc == {"schema_version": 1, "a": 0.1, "b": [1, True, None], "c": 1.5, "d": "red",
                   "e": None, "f": [1.0, 2.0], "g": {}}


def test_json_rejects_unknown():
    with pytest.raises(TypeError):
        to_json({"x": object()})


def test_csv_lf_and_header():
    text = to_csv(["a", "b"], [["1", "x,y"]])
    assert text == 'a,b\n1,"x,y"\n'


def test_svg_flat_series():
    svg = svg_polyline([0, 1, 2], [0, 0, 0], title="flat")
    assert "<title>flat</title>" in svg
    assert svg.count("<polyline") == 1
