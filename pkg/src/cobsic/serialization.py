"""Operator-set files: the package's single on-disk format.

One JSON document holds a list of complex matrices plus bookkeeping:

    {
      "schema_version": "1",
      "kind": "cob" | "gsic" | "povm" | "basis" | "mub" | "unitary_set",
      "dim": 2,
      "lambda": 0.57735026918962573,      # optional, gsic files only
      "operators": [[[[re, im], ...], ...], ...],   # row-major matrices
      "metadata": { ... }                 # free-form strings/numbers
    }

Every complex entry is a two-element [re, im] array.  Floats are written
with 17 significant digits so parsing returns bit-identical doubles.
Matrix counts are tied to the kind: cob/gsic/basis/unitary_set carry dim**2
matrices, mub carries dim+1 (rows of each matrix are the basis kets), povm
any positive number.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError

__all__ = ["OperatorSetFile", "KINDS", "dumps", "loads", "save", "load", "dumps_json"]

KINDS = ("cob", "gsic", "povm", "basis", "mub", "unitary_set")

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class OperatorSetFile:
    """In-memory image of one operator-set file."""

    kind: str
    dim: int
    operators: np.ndarray
    lam: float | None = None
    metadata: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self):
        ops = np.asarray(self.operators, dtype=complex)
        if ops.ndim != 3 or ops.shape[1] != self.dim or ops.shape[2] != self.dim:
            raise ParseError(
                f"operators must have shape (n, {self.dim}, {self.dim}), got {ops.shape}",
                location="operators",
            )
        _check_count(self.kind, self.dim, len(ops))
        ops = ops.copy()
        ops.setflags(write=False)
        object.__setattr__(self, "operators", ops)


def _check_count(kind, dim, count):
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r} (expected one of {KINDS})", location="kind")
    expected = {
        "cob": dim * dim,
        "gsic": dim * dim,
        "basis": dim * dim,
        "unitary_set": dim * dim,
        "mub": dim + 1,
    }.get(kind)
    if expected is not None and count != expected:
        raise ParseError(
            f"kind {kind!r} in dimension {dim} requires {expected} matrices, got {count}",
            location="operators",
        )


def _format_float(x):
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def _emit(value, parts):
    """Minimal JSON emitter so floats carry 17 significant digits."""
    if value is None:
        parts.append("null")
    elif isinstance(value, (bool, np.bool_)):
        parts.append("true" if value else "false")
    elif isinstance(value, str):
        parts.append(json.dumps(value))
    elif isinstance(value, (int, np.integer)):
        parts.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        parts.append(_format_float(value))
    elif isinstance(value, dict):
        parts.append("{")
        for i, (k, v) in enumerate(value.items()):
            if i:
                parts.append(", ")
            parts.append(json.dumps(str(k)))
            parts.append(": ")
            _emit(v, parts)
        parts.append("}")
    elif isinstance(value, (list, tuple)):
        parts.append("[")
        for i, v in enumerate(value):
            if i:
                parts.append(", ")
            _emit(v, parts)
        parts.append("]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps_json(value):
    """Serialize a JSON-compatible structure with 17-significant-digit floats."""
    parts = []
    _emit(value, parts)
    return "".join(parts)


def _matrix_to_pairs(matrix):
    return [[[float(z.real), float(z.imag)] for z in row] for row in matrix]


def dumps(osf):
    """Serialize an :class:`OperatorSetFile` to its JSON document."""
    doc = {
        "schema_version": osf.schema_version,
        "kind": osf.kind,
        "dim": int(osf.dim),
    }
    if osf.lam is not None:
        doc["lambda"] = float(osf.lam)
    doc["operators"] = [_matrix_to_pairs(m) for m in osf.operators]
    doc["metadata"] = dict(osf.metadata)
    return dumps_json(doc) + "\n"


def loads(text, source="<string>"):
    """Parse an operator-set document; raise :class:`ParseError` with location."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            location=f"line {exc.lineno}, column {exc.colno}",
        ) from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: top level must be an object", location="$")

    def need(key, types, where="$"):
        if key not in doc:
            raise ParseError(f"{source}: missing field {key!r}", location=where)
        val = doc[key]
        if not isinstance(val, types):
            raise ParseError(
                f"{source}: field {key!r} has type {type(val).__name__}",
                location=key,
            )
        return val

    version = need("schema_version", str)
    if version != SCHEMA_VERSION:
        raise ParseError(
            f"{source}: unsupported schema_version {version!r}", location="schema_version"
        )
    kind = need("kind", str)
    dim = need("dim", int)
    if dim < 1:
        raise ParseError(f"{source}: dim must be positive, got {dim}", location="dim")
    raw_ops = need("operators", list)
    lam = doc.get("lambda")
    if lam is not None and not isinstance(lam, (int, float)):
        raise ParseError(f"{source}: field 'lambda' must be a number", location="lambda")
    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise ParseError(f"{source}: field 'metadata' must be an object", location="metadata")

    operators = np.empty((len(raw_ops), dim, dim), dtype=complex)
    for i, mat in enumerate(raw_ops):
        where = f"operators[{i}]"
        if not isinstance(mat, list) or len(mat) != dim:
            raise ParseError(f"{source}: {where} must have {dim} rows", location=where)
        for r, row in enumerate(mat):
            if not isinstance(row, list) or len(row) != dim:
                raise ParseError(
                    f"{source}: {where} row {r} must have {dim} entries",
                    location=f"{where}[{r}]",
                )
            for c, pair in enumerate(row):
                if (
                    not isinstance(pair, list)
                    or len(pair) != 2
                    or not all(isinstance(v, (int, float)) for v in pair)
                ):
                    raise ParseError(
                        f"{source}: {where}[{r}][{c}] must be a [re, im] pair",
                        location=f"{where}[{r}][{c}]",
                    )
                operators[i, r, c] = complex(pair[0], pair[1])

    try:
        return OperatorSetFile(
            kind=kind,
            dim=dim,
            operators=operators,
            lam=None if lam is None else float(lam),
            metadata=metadata,
        )
    except ParseError as exc:
        raise ParseError(f"{source}: {exc}", location=exc.location) from exc


def save(path, osf):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(osf))


def load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read(), source=str(path))
