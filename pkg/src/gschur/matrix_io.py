"""JSON encoding of matrices, vectors, partial operators, algebras and functionals.

Matrix format: ``{"dim": n, "entries": [[[re, im], ...], ...]}``, rows
outermost.  Rectangular matrices use ``{"rows": m, "cols": n, ...}``
instead of ``dim``.  The real shorthand ``[[x, ...], ...]`` is accepted on
input, and an entry may be a bare number anywhere.  Vectors are lists of
``[re, im]`` pairs or numbers.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, InvalidInput
from .kv_extension import PartialPositiveOperator
from .star_algebra import FiniteStarAlgebra, Functional


def _scalar(x) -> complex:
    if isinstance(x, bool):
        raise InvalidInput(f"expected a number, got {x!r}")
    if isinstance(x, (int, float)):
        z = complex(x)
    elif isinstance(x, (list, tuple)) and len(x) == 2 and all(
        isinstance(t, (int, float)) and not isinstance(t, bool) for t in x
    ):
        z = complex(x[0], x[1])
    else:
        raise InvalidInput(f"expected a number or [re, im] pair, got {x!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidInput("non-finite number in input")
    return z


def parse_matrix(obj) -> np.ndarray:
    if isinstance(obj, dict):
        if "entries" not in obj:
            raise InvalidInput("matrix object needs an 'entries' field")
        rows = obj["entries"]
    elif isinstance(obj, list):
        rows = obj
    else:
        raise InvalidInput(f"expected a matrix, got {type(obj).__name__}")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InvalidInput("matrix entries must be a list of rows")
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise InvalidInput("matrix rows have different lengths")
    if widths:
        width = widths.pop()
    else:
        # an empty row list cannot carry the column count
        width = obj.get("cols", obj.get("dim", 0)) if isinstance(obj, dict) else 0
    m = np.array([[_scalar(x) for x in r] for r in rows], dtype=complex).reshape(len(rows), width)
    if isinstance(obj, dict):
        if "dim" in obj and m.shape != (obj["dim"], obj["dim"]):
            raise DimensionMismatch(f"declared dim {obj['dim']} but entries have shape {m.shape}")
        if "rows" in obj and m.shape[0] != obj["rows"]:
            raise DimensionMismatch(f"declared {obj['rows']} rows but entries have {m.shape[0]}")
        if "cols" in obj and m.shape[1] != obj["cols"]:
            raise DimensionMismatch(f"declared {obj['cols']} columns but entries have {m.shape[1]}")
    return m


def _pair(z: complex) -> list[float]:
    # 0.0 instead of -0.0 keeps dumps byte-stable
    return [float(z.real) + 0.0, float(z.imag) + 0.0]


def dump_matrix(m) -> dict:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise InvalidInput("dump_matrix expects a 2-d array")
    entries = [[_pair(z) for z in row] for row in m]
    if m.shape[0] == m.shape[1]:
        return {"dim": m.shape[0], "entries": entries}
    return {"rows": m.shape[0], "cols": m.shape[1], "entries": entries}


def parse_vector(obj) -> np.ndarray:
    if not isinstance(obj, list):
        raise InvalidInput("a vector must be a list of numbers or [re, im] pairs")
    return np.array([_scalar(x) for x in obj], dtype=complex)


def dump_vector(v) -> list:
    return [_pair(z) for z in np.asarray(v, dtype=complex).reshape(-1)]


def parse_partial_operator(obj) -> PartialPositiveOperator:
    if not isinstance(obj, dict) or not {"domainBasis", "values"} <= obj.keys():
        raise InvalidInput("partial operator needs 'domainBasis' and 'values'")
    v = parse_matrix(obj["domainBasis"])
    w = parse_matrix(obj["values"])
    if "ambientDim" in obj and v.shape[0] != obj["ambientDim"]:
        raise DimensionMismatch(f"ambientDim {obj['ambientDim']} but the domain basis has {v.shape[0]} rows")
    return PartialPositiveOperator(v, w)


def dump_partial_operator(p: PartialPositiveOperator) -> dict:
    return {
        "ambientDim": p.ambient_dim,
        "domainBasis": dump_matrix(p.domain_basis),
        "values": dump_matrix(p.values),
    }


def parse_algebra(obj) -> FiniteStarAlgebra:
    if not isinstance(obj, dict) or "basis" not in obj:
        raise InvalidInput("algebra needs a 'basis' list")
    basis = [parse_matrix(b) for b in obj["basis"]]
    if "envDim" in obj and any(b.shape != (obj["envDim"],) * 2 for b in basis):
        raise DimensionMismatch(f"basis elements must be {obj['envDim']} x {obj['envDim']}")
    unital = obj.get("unital")
    if unital is not None and not isinstance(unital, bool):
        raise InvalidInput("'unital' must be a boolean")
    return FiniteStarAlgebra(basis, unital=unital)


def dump_algebra(alg: FiniteStarAlgebra) -> dict:
    return {
        "envDim": alg.env_dim,
        "basis": [dump_matrix(b) for b in alg.basis],
        "unital": alg.unital,
    }


def parse_functional(obj, alg: FiniteStarAlgebra) -> Functional:
    if isinstance(obj, dict):
        if "values" not in obj:
            raise InvalidInput("functional needs a 'values' list")
        obj = obj["values"]
    return Functional(alg, parse_vector(obj))


def dump_functional(f: Functional) -> dict:
    return {"values": dump_vector(f.values)}


def load_json(path):
    """Read a JSON document; ``-`` is not special, pass a real path."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def dumps(doc) -> str:
    """Deterministic JSON text: sorted keys, fixed indentation, ``repr`` floats."""
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False, ensure_ascii=False)
