"""Canonical JSON: integers as decimal strings, matrices as {"n", "entries"}."""

from __future__ import annotations

import dataclasses
import json
from collections import Counter
from typing import Any

import numpy as np

from .decomposition import Decomposition
from .errors import BadInput
from .matrix import IntMat
from .universality import CoeffList

# small structural integers that stay JSON numbers
PLAIN_INT_KEYS = frozenset({
    "n", "modulus", "witness_modulus", "reachable_count", "index", "trials", "successes",
    "attempts", "seed", "required", "verified_count", "max_nonzero", "budget", "nonzero",
    "x4_checks", "commutator_calls", "max_attempts", "commutator_attempts", "exit_code",
    "mismatch", "split", "roles", "bound_table",
})


def matrix_to_json(M: IntMat) -> dict:
    if not M.is_square:
        return {"shape": list(M.shape), "entries": [[str(x) for x in r] for r in M.rows]}
    return {"n": M.dim, "entries": [[str(x) for x in r] for r in M.rows]}


def _int(x) -> int:
    if isinstance(x, bool):
        raise BadInput(f"expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise BadInput(f"expected an integer, got {x!r}")


def matrix_from_json(obj) -> IntMat:
    """Accept {"n", "entries"} or a bare list of rows; entries may be strings or ints."""
    rows = obj.get("entries") if isinstance(obj, dict) else obj
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise BadInput("matrix must be a non-empty list of rows")
    M = IntMat([[_int(x) for x in r] for r in rows])
    if not M.is_square:
        raise BadInput(f"matrix must be square, got {M.shape}")
    if isinstance(obj, dict) and "n" in obj and _int(obj["n"]) != M.dim:
        raise BadInput(f"declared n = {obj['n']} but matrix is {M.dim}x{M.dim}")
    return M


def decomposition_to_json(d: Decomposition, explain: bool = False) -> dict:
    out = {
        "coeffs": [str(a) for a in d.coeffs],
        "target": matrix_to_json(d.target),
        "squares": [{"index": i, "matrix": matrix_to_json(M)} for i, M in d.squares],
    }
    if explain:
        out["explain"] = to_jsonable(d.trace)
        out["audit"] = dict(sorted(d.audit.items()))
    return out


def decomposition_from_json(obj) -> Decomposition:
    if not isinstance(obj, dict):
        raise BadInput("decomposition must be a JSON object")
    try:
        coeffs = CoeffList(tuple(_int(a) for a in obj["coeffs"]))
        target = matrix_from_json(obj["target"])
        squares = tuple((_int(s["index"]), matrix_from_json(s["matrix"])) for s in obj["squares"])
    except (KeyError, TypeError) as exc:
        raise BadInput(f"malformed decomposition: {exc}") from exc
    return Decomposition(coeffs, target, squares)


def to_jsonable(obj: Any, key: str | None = None) -> Any:
    if obj is None or isinstance(obj, (bool, str, float)):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj) if key in PLAIN_INT_KEYS else str(int(obj))
    if isinstance(obj, IntMat):
        return matrix_to_json(obj)
    if isinstance(obj, CoeffList):
        return [str(a) for a in obj]
    if isinstance(obj, Decomposition):
        return decomposition_to_json(obj)
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name), f.name) for f in dataclasses.fields(obj)
                if not f.name.startswith("_")}
    if isinstance(obj, (dict, Counter)):
        # children of a plain container (e.g. the bound table) stay plain too
        return {str(k): to_jsonable(v, key if key in PLAIN_INT_KEYS else str(k)) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v, key) for v in obj]
    raise BadInput(f"cannot encode {type(obj).__name__} as JSON")


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=None, separators=(",", ":"))
