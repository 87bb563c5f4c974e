# -*- coding: utf-8 -*-
import json
import tempfile
from fractions import Fraction
from pathlib import Path

import numpy as np

from skperc import CheckResult, Pattern, VerificationReport, dumps_csv, to_jsonable, write_csv, write_json


def test_to_jsonable_numpy():
    """Test that NumPy scalars and arrays become Python numbers and lists"""
    out = to_jsonable({"a": np.arange(3), "b": np.int64(4), "c": np.bool_(True)})
    assert out == {"a": [0, 1, 2], "b": 4, "c": True}
    assert isinstance(out["b"], int)


def test_to_jsonable_special_values():
    """Test fractions, non-finite floats and patterns"""
    assert to_jsonable(Fraction(-2, 6)) == "-1/3"
    assert to_jsonable(float("inf")) == "inf"
    assert to_jsonable(Pattern.from_string("{{*,0},{1,2}}")) == [["*", 0], [1, 2]]


def test_to_jsonable_report():
    """Test that verification reports serialize through their dictionary form"""
    check = CheckResult.from_arrays("positive", [0.5, -1.0], p=[0.1, 0.2])
    report = VerificationReport(title="demo", checks=(check,), parameters={"density": 2})
    out = json.loads(json.dumps(to_jsonable(report)))
    assert out["passed"] is False
    assert out["checks"][0]["violations"] == [{"p": 0.2, "margin": -1.0}]


def test_dumps_csv_columns():
    """Test that CSV columns follow the requested order and missing values are blank"""
    text = dumps_csv([{"a": 1, "l": 0}, {"l": 1}], columns=("l", "a"))
    assert text.splitlines() == ["l,a", "0,1", "1,"]


def test_dumps_csv_empty():
    """Test that an empty table is an empty string"""
    assert dumps_csv([]) == ""


def test_write_json_and_csv():
    """Test that results are written to disk"""
    with tempfile.TemporaryDirectory() as tmpdir:
        json_path = write_json({"x": Fraction(1, 2)}, Path(tmpdir) / "out.json")
        assert json.loads(json_path.read_text()) == {"x": "1/2"}

        csv_path = write_csv([{"l": 6, "a": 40}], Path(tmpdir) / "out.csv")
        assert csv_path.read_text() == "l,a\n6,40\n"
