"""JSON helpers: rationals as "p/q" strings, a schema field in every document."""
from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from typing import Any


class SchemaError(ValueError):
    """Input document does not conform to the expected layout."""


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s: Any) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise SchemaError(f"rational must be a 'p/q' string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {s!r}") from exc


def triples_out(t: dict) -> list:
    return [[i, j, k, frac_str(c)] for (i, j) in sorted(t) for k, c in sorted(t[(i, j)].items()) if c]


def triples_in(raw: Any) -> dict:
    if not isinstance(raw, list):
        raise SchemaError("sparse tensor must be a list of [i, j, k, 'p/q']")
    out: dict = {}
    for row in raw:
        if not (isinstance(row, list) and len(row) == 4 and all(isinstance(v, int) for v in row[:3])):
            raise SchemaError(f"bad tensor entry {row!r}")
        i, j, k = row[:3]
        if min(i, j, k) < 0:
            raise SchemaError(f"negative index in {row!r}")
        c = parse_frac(row[3])
        if c:
            out.setdefault((i, j), {})[k] = c
    return out


def vector_out(v) -> list[str]:
    return [frac_str(c) for c in v]


def vector_in(raw: Any) -> list[Fraction]:
    if not isinstance(raw, list):
        raise SchemaError("vector must be a list of 'p/q' strings")
    return [parse_frac(c) for c in raw]


def sparse_vec_out(v) -> list:
    return [[i, frac_str(c)] for i, c in enumerate(v) if c]


def sparse_vec_in(raw: Any, dim: int) -> list[Fraction]:
    if not isinstance(raw, list):
        raise SchemaError("sparse vector must be a list of [i, 'p/q']")
    v = [Fraction(0)] * dim
    for row in raw:
        if not (isinstance(row, list) and len(row) == 2 and isinstance(row[0], int) and 0 <= row[0] < dim):
            raise SchemaError(f"bad sparse vector entry {row!r}")
        v[row[0]] = parse_frac(row[1])
    return v


def require(doc: Any, schema: str, keys: tuple[str, ...]) -> dict:
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    if doc.get("schema") != schema:
        raise SchemaError(f"expected schema {schema!r}, got {doc.get('schema')!r}")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise SchemaError(f"missing fields {missing}")
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc


def write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
