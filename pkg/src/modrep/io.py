"""Module files: JSON with keys p, r, dim, form, field, matrices."""

from __future__ import annotations

import json

from .fields import PrimeField, RationalFunctionField, is_prime, parse_field, MAX_PRIME
from .kmodule import KModule, ModuleError, from_group_matrices
from .linalg import Matrix


class SchemaError(ValueError):
    pass


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _int_field(doc, key, lo=None):
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"{key}: expected an integer, got {v!r}")
    if lo is not None and v < lo:
        raise SchemaError(f"{key}: must be >= {lo}")
    return v


def module_from_dict(doc) -> KModule:
    if not isinstance(doc, dict):
        raise SchemaError("top level: expected an object")
    missing = [k for k in ("p", "r", "dim", "matrices") if k not in doc]
    if missing:
        raise SchemaError(f"missing key(s): {', '.join(missing)}")
    p = _int_field(doc, "p")
    if not is_prime(p) or p > MAX_PRIME:
        raise SchemaError(f"p: {p} is not a prime <= {MAX_PRIME}")
    r = _int_field(doc, "r", 1)
    dim = _int_field(doc, "dim", 0)
    form = doc.get("form", "z")
    if form not in ("g", "z"):
        raise SchemaError(f"form: expected 'g' or 'z', got {form!r}")
    field_str = doc.get("field", f"GF({p})")
    if not isinstance(field_str, str):
        raise SchemaError("field: expected a string")
    try:
        field = parse_field(field_str)
    except ValueError as exc:
        raise SchemaError(f"field: {exc}") from None
    if field.characteristic != p:
        raise SchemaError(f"field: characteristic {field.characteristic} differs from p = {p}")
    mats = doc["matrices"]
    if not isinstance(mats, list) or len(mats) != r:
        raise SchemaError(f"matrices: expected a list of {r} matrices")
    parsed = []
    for i, mat in enumerate(mats):
        if not isinstance(mat, list) or len(mat) != dim:
            raise SchemaError(f"matrices[{i}]: expected {dim} rows")
        rows = []
        for a, row in enumerate(mat):
            if not isinstance(row, list) or len(row) != dim:
                raise SchemaError(f"matrices[{i}][{a}]: expected {dim} entries")
            rows.append([_entry(field, x, f"matrices[{i}][{a}][{b}]") for b, x in enumerate(row)])
        parsed.append(Matrix(field, rows) if dim else Matrix.zeros(field, 0, 0))
    try:
        return from_group_matrices(p, r, parsed, z_form=(form == "z"), field=field)
    except ModuleError as exc:
        raise SchemaError(f"matrices: {exc}") from None


def _entry(field, x, path):
    if isinstance(x, bool):
        raise SchemaError(f"{path}: booleans are not entries")
    if isinstance(field, PrimeField):
        if not isinstance(x, int):
            raise SchemaError(f"{path}: expected an integer")
        return x % field.p
    if isinstance(x, int):
        return field(x)
    if isinstance(x, str):
        try:
            return field.parse(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"{path}: {exc}") from None
    raise SchemaError(f"{path}: expected an integer or a fraction string")


def module_to_dict(m: KModule, form: str = "z") -> dict:
    if form not in ("g", "z"):
        raise ValueError("form must be 'g' or 'z'")
    field = m.field
    mats = m.group_matrices() if form == "g" else list(m.actions)
    out = []
    for z in mats:
        rows = z.tolist()
        if isinstance(field, RationalFunctionField):
            rows = [[field.to_str(x) for x in row] for row in rows]
        else:
            rows = [[int(x) for x in row] for row in rows]
        out.append(rows)
    return {"p": m.p, "r": m.r, "dim": m.dim, "form": form, "field": repr_field(field), "matrices": out}


def repr_field(field) -> str:
    if isinstance(field, RationalFunctionField):
        return f"GF({field.p})({','.join(field.names)})"
    return f"GF({field.p})"


def dumps_module(m: KModule, form: str = "z") -> str:
    return canonical_json(module_to_dict(m, form))


def loads_module(text: str) -> KModule:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from None
    return module_from_dict(doc)


def read_module(path) -> KModule:
    with open(path, encoding="utf-8") as fh:
        return loads_module(fh.read())


def write_module(m: KModule, path, form: str = "z"):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_module(m, form) + "\n")
