"""JSON lattice files.

    {"field": {"type": "p-adic", "p": 3}, "matrix": [["1", "0"], ["3", "9"]]}
    {"field": {"type": "puiseux"},
     "matrix": [[{"num": [{"c": "1", "e": "1/2"}]}, ...], ...]}

p-adic entries are rational strings ``"a"`` or ``"a/b"``.  Puiseux entries are
``{"num": [terms], "den": [terms]}`` with ``term = {"c": rational, "e": rational}``
(``den`` defaults to 1); a bare rational string is also accepted.
"""

from __future__ import annotations

import json
from pathlib import Path

from .field import FieldDescriptor, FieldError
from .lattice import Lattice, LatticeError

MAX_DIM = 12


class LatticeFileError(ValueError):
    pass


def parse_field(obj) -> FieldDescriptor:
    if not isinstance(obj, dict) or "type" not in obj:
        raise LatticeFileError(f"field descriptor must be an object with a 'type', got {obj!r}")
    kind = obj["type"]
    try:
        if kind == "p-adic":
            p = obj.get("p")
            if not isinstance(p, int) or isinstance(p, bool):
                raise LatticeFileError(f"p-adic field needs an integer 'p', got {p!r}")
            return FieldDescriptor.padic(p)
        if kind == "puiseux":
            return FieldDescriptor.puiseux()
    except FieldError as e:
        raise LatticeFileError(f"bad field: {e}") from None
    raise LatticeFileError(f"unknown field type {kind!r}")


def lattice_from_json(obj, max_dim: int = MAX_DIM) -> Lattice:
    if not isinstance(obj, dict):
        raise LatticeFileError("lattice file must contain a JSON object")
    K = parse_field(obj.get("field"))
    rows = obj.get("matrix")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise LatticeFileError("'matrix' must be a non-empty list of rows")
    d = len(rows)
    if any(len(r) != d for r in rows):
        raise LatticeFileError("'matrix' must be square")
    if d > max_dim:
        raise LatticeFileError(f"dimension {d} exceeds the limit {max_dim}")
    try:
        entries = [[K.parse_entry(x) for x in r] for r in rows]
    except FieldError as e:
        raise LatticeFileError(f"bad entry: {e}") from None
    try:
        return Lattice(K, entries)
    except LatticeError as e:
        raise LatticeFileError(f"singular matrix: {e}") from None


def parse_lattice_file(path, max_dim: int = MAX_DIM) -> Lattice:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise LatticeFileError(f"cannot read {path}: {e.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise LatticeFileError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None
    return lattice_from_json(obj, max_dim)


def field_to_json(K: FieldDescriptor) -> dict:
    return {"type": "p-adic", "p": K.p} if K.is_padic else {"type": "puiseux"}


def matrix_to_json(K: FieldDescriptor, A) -> dict:
    return {"field": field_to_json(K), "matrix": [[K.format_entry(x) for x in r] for r in A]}


def lattice_to_json(L: Lattice) -> dict:
    return matrix_to_json(L.field, L.rep)
