"""JSON file formats for systems, state specs, and synthesis parameters.

Complex scalars are encoded as two-element ``[re, im]`` arrays; matrices are
row-major nested lists.  Top-level keys:

* system file:  ``{"n", "m", "G", "C"}``
* spec file:    ``{"n", "X", "Y"}``
* params file:  ``{"P", "R", "Gamma"}``

Output is canonicalized (sorted keys, 17-significant-digit floats) so that
a save/load/save round trip is byte-identical.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .engineer import EngineeringParameters, PureStateSpec
from .errors import SchemaError
from .model import GaussianDynamics

__all__ = [
    "system_to_dict",
    "system_from_dict",
    "spec_to_dict",
    "spec_from_dict",
    "params_to_dict",
    "params_from_dict",
    "canonical_dumps",
    "load_json",
]


def _real_matrix_out(M):
    return [[float(x) for x in row] for row in np.asarray(M, dtype=float)]


def _complex_matrix_out(M):
    return [
        [[float(x.real), float(x.imag)] for x in row]
        for row in np.asarray(M, dtype=complex)
    ]


def _real_matrix_in(obj, key, rows=None, cols=None):
    try:
        M = np.array(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{key!r} is not a real matrix: {exc}") from None
    if M.ndim != 2:
        raise SchemaError(f"{key!r} must be a nested array (matrix)")
    if rows is not None and M.shape != (rows, cols):
        raise SchemaError(
            f"{key!r} has shape {M.shape}, expected {(rows, cols)}"
        )
    return M


def _complex_matrix_in(obj, key, rows=None, cols=None):
    try:
        M = np.array(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{key!r} is not a complex matrix: {exc}") from None
    if M.ndim != 3 or M.shape[2] != 2:
        raise SchemaError(
            f"{key!r} must be a matrix of [re, im] pairs"
        )
    if rows is not None and M.shape[:2] != (rows, cols):
        raise SchemaError(
            f"{key!r} has shape {M.shape[:2]}, expected {(rows, cols)}"
        )
    return M[..., 0] + 1j * M[..., 1]


def _check_symmetric(M, key):
    asym = np.abs(M - M.T)
    if asym.size and asym.max() > 1e-9 * (1.0 + np.abs(M).max()):
        i, j = np.unravel_index(np.argmax(asym), asym.shape)
        raise SchemaError(
            f"{key!r} must be symmetric; entries ({i},{j})={M[i, j]!r} and "
            f"({j},{i})={M[j, i]!r} disagree"
        )


def _require_keys(doc, keys, what):
    if not isinstance(doc, dict):
        raise SchemaError(f"{what} document must be a JSON object")
    missing = set(keys) - set(doc)
    if missing:
        raise SchemaError(f"{what} document is missing keys {sorted(missing)}")
    extra = set(doc) - set(keys)
    if extra:
        raise SchemaError(f"{what} document has unknown keys {sorted(extra)}")


def system_to_dict(sys: GaussianDynamics) -> dict:
    return {
        "n": sys.n,
        "m": sys.m,
        "G": _real_matrix_out(sys.G),
        "C": _complex_matrix_out(sys.C),
    }


def system_from_dict(doc: dict) -> GaussianDynamics:
    _require_keys(doc, {"n", "m", "G", "C"}, "system")
    n, m = int(doc["n"]), int(doc["m"])
    G = _real_matrix_in(doc["G"], "G", 2 * n, 2 * n)
    _check_symmetric(G, "G")
    C = _complex_matrix_in(doc["C"], "C", m, 2 * n)
    return GaussianDynamics(G=G, C=C)


def spec_to_dict(spec: PureStateSpec) -> dict:
    return {
        "n": spec.n,
        "X": _real_matrix_out(spec.X),
        "Y": _real_matrix_out(spec.Y),
    }


def spec_from_dict(doc: dict) -> PureStateSpec:
    _require_keys(doc, {"n", "X", "Y"}, "spec")
    n = int(doc["n"])
    X = _real_matrix_in(doc["X"], "X", n, n)
    Y = _real_matrix_in(doc["Y"], "Y", n, n)
    _check_symmetric(X, "X")
    _check_symmetric(Y, "Y")
    return PureStateSpec(X=X, Y=Y)


def params_to_dict(params: EngineeringParameters) -> dict:
    return {
        "P": _complex_matrix_out(params.P),
        "R": _real_matrix_out(params.R),
        "Gamma": _real_matrix_out(params.Gamma),
    }


def params_from_dict(doc: dict) -> EngineeringParameters:
    _require_keys(doc, {"P", "R", "Gamma"}, "params")
    P = _complex_matrix_in(doc["P"], "P")
    n = P.shape[0]
    R = _real_matrix_in(doc["R"], "R", n, n)
    Gamma = _real_matrix_in(doc["Gamma"], "Gamma", n, n)
    _check_symmetric(R, "R")
    return EngineeringParameters(P=P, R=R, Gamma=Gamma)


def _canonical(obj: Any) -> str:
    if isinstance(obj, dict):
        items = ", ".join(
            f"{json.dumps(k)}: {_canonical(v)}" for k, v in sorted(obj.items())
        )
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_canonical(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format(float(obj), ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    raise SchemaError(f"cannot serialize object of type {type(obj).__name__}")


def canonical_dumps(obj) -> str:
    """Deterministic JSON text: sorted keys, floats at 17 significant
    digits, trailing newline."""
    return _canonical(obj) + "\n"


def load_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}")
