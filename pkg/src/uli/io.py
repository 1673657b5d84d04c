"""Flat-file formats for states and unitaries.

Both formats are JSON objects with the real and imaginary parts stored as
separate row-major nested lists: states carry ``d1``, ``d2``, ``re``, ``im``;
unitaries carry ``n``, ``re``, ``im``. Floats are written with Python's
shortest round-trip representation, so read(write(x)) reproduces x exactly on
the same platform.
"""

from __future__ import annotations

import json
import sys

import numpy as np

from .bipartite import BipartiteState, state_from_matrix
from .config import DEFAULT_NORM_TOL
from .errors import DimensionMismatch, NotUnitary
from .matkernel import as_complex_matrix, unitarity_defect


def _matrix_payload(m: np.ndarray) -> dict:
    return {
        "re": [[float(x) for x in row] for row in m.real],
        "im": [[float(x) for x in row] for row in m.imag],
    }


def _matrix_from_payload(obj: dict, rows: int, cols: int, what: str) -> np.ndarray:
    for key in ("re", "im"):
        if key not in obj:
            raise ValueError(f"{what} is missing the '{key}' field")
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.shape != (rows, cols) or im.shape != (rows, cols):
        raise DimensionMismatch(
            f"{what} matrices must have shape ({rows}, {cols}), "
            f"got re {re.shape} and im {im.shape}"
        )
    return as_complex_matrix(re + 1j * im, what)


def _dump(obj: dict, path: str) -> None:
    # compact and key-ordered: identical content yields identical bytes
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, separators=(", ", ": "))
        fh.write("\n")


def _load(source: str) -> dict:
    if source == "-":
        obj = json.load(sys.stdin)
    else:
        with open(source, encoding="utf-8") as fh:
            obj = json.load(fh)
    if not isinstance(obj, dict):
        raise ValueError("expected a JSON object at top level")
    return obj


def write_state_file(path: str, state: BipartiteState) -> None:
    obj = {"d1": state.d1, "d2": state.d2}
    obj.update(_matrix_payload(state.psi))
    _dump(obj, path)


def read_state_file(source: str, *, normalize: bool = False,
                    norm_tol: float = DEFAULT_NORM_TOL) -> BipartiteState:
    """Parse a state file (or stdin for ``-``), validating normalization."""
    obj = _load(source)
    for key in ("d1", "d2"):
        if key not in obj:
            raise ValueError(f"state file is missing the '{key}' field")
    d1, d2 = int(obj["d1"]), int(obj["d2"])
    if d1 < 1 or d2 < 1:
        raise ValueError(f"dimensions must be positive, got ({d1}, {d2})")
    psi = _matrix_from_payload(obj, d1, d2, "state")
    return state_from_matrix(psi, normalize=normalize, norm_tol=norm_tol)


def write_unitary_file(path: str, u: np.ndarray) -> None:
    m = as_complex_matrix(u, "u")
    obj = {"n": m.shape[0]}
    obj.update(_matrix_payload(m))
    _dump(obj, path)


def read_unitary_file(source: str, *, lenient: bool = False,
                      unitary_tol: float = 1e-10) -> tuple[np.ndarray, float]:
    """Parse a unitary file, returning the matrix and the correction applied.

    Matrices failing the unitarity check are rejected, unless ``lenient`` is
    set, in which case the nearest unitary (polar factor) is substituted and
    the max-entry size of the correction returned alongside it.
    """
    obj = _load(source)
    if "n" not in obj:
        raise ValueError("unitary file is missing the 'n' field")
    n = int(obj["n"])
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    m = _matrix_from_payload(obj, n, n, "unitary")
    defect = unitarity_defect(m)
    if defect <= unitary_tol:
        return m, 0.0
    if not lenient:
        raise NotUnitary(
            f"matrix deviates from unitarity by {defect:.3e} (tolerance {unitary_tol:.1e})"
        )
    w, _, vh = np.linalg.svd(m)
    fixed = w @ vh
    correction = float(np.max(np.abs(m - fixed)))
    return fixed, correction
