# -*- coding: utf-8 -*-
"""
JSON and CSV emitters
=====================

Every numeric result of the command-line utilities is written through these functions, so that tables and
reports have a machine-readable form.
"""
import csv
import io
import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from math import isfinite
from pathlib import Path

import numpy as np


def to_jsonable(obj):
    """
    Recursively convert results into objects serializable by :mod:`json`.

    Objects with a ``to_dict`` or ``to_json`` method are converted through it. NumPy scalars and arrays become Python
    numbers and lists, Fractions become ``"num/den"`` strings and non-finite floats become strings.

    Parameters
    ----------
    obj : object

    Returns
    -------
    out : object

    Examples
    --------
    >>> to_jsonable({"p": np.float64(0.5), "exact": Fraction(1, 3), "n": (1, 2)})
    {'p': 0.5, 'exact': '1/3', 'n': [1, 2]}
    """
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    if is_dataclass(obj) and not isinstance(obj, type):
        return to_jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(key): to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset, np.ndarray)):
        return [to_jsonable(value) for value in obj]
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) if isfinite(obj) else str(float(obj))
    if isinstance(obj, Path):
        return str(obj)
    return obj


def dumps_json(obj):
    """Serialize a result as indented JSON text."""
    return json.dumps(to_jsonable(obj), indent=2)


def write_json(obj, path):
    """
    Write a result as JSON.

    Parameters
    ----------
    obj : object
        Any result accepted by :func:`to_jsonable`.
    path : path-like

    Returns
    -------
    path : `~pathlib.Path`
    """
    path = Path(path)
    path.write_text(dumps_json(obj) + "\n")
    return path


def _cell(value):
    value = to_jsonable(value)
    if value is None:
        return ""
    if isinstance(value, (list, dict)):
        return json.dumps(value)
    return value


def dumps_csv(rows, columns=None):
    """
    Format rows as CSV text.

    Parameters
    ----------
    rows : iterable of dict
    columns : sequence of str or None, optional
        Column order. Defaults to the keys of the first row.

    Returns
    -------
    text : str

    Examples
    --------
    >>> print(dumps_csv([{"l": 1, "a": 2}, {"l": 2, "a": None}]), end="")
    l,a
    1,2
    2,
    """
    rows = list(rows)
    if columns is None:
        columns = list(rows[0]) if rows else list()
    if not columns:
        return ""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _cell(row.get(key)) for key in columns})
    return buffer.getvalue()


def write_csv(rows, path, columns=None):
    """
    Write rows as a CSV table. See :func:`dumps_csv` for the parameters.

    Returns
    -------
    path : `~pathlib.Path`
    """
    path = Path(path)
    path.write_text(dumps_csv(rows, columns))
    return path
