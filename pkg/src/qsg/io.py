"""JSON formats for matrices, chart coordinates, curves, and reports.

A Hermitian matrix is ``{"dim": n, "re": [[...]], "im": [[...]]}`` with
row-major entry lists; readers reject non-Hermitian data beyond tolerance.
Curves are JSON-lines files of ``{"t": ..., "matrix": {...}}`` records.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .errors import FormatError
from .hermitian import hermitian
from .strata import ChartCoordinates

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "load_matrix",
    "save_matrix",
    "vector_to_json",
    "coords_to_json",
    "coords_from_json",
    "load_curve",
    "save_curve",
]


def matrix_to_json(M: np.ndarray) -> dict[str, Any]:
    M = np.asarray(M, dtype=complex)
    return {"dim": M.shape[0], "re": M.real.tolist(), "im": M.imag.tolist()}


def matrix_from_json(obj: Any, tol: float = 1e-12) -> np.ndarray:
    if not isinstance(obj, dict) or "dim" not in obj or "re" not in obj:
        raise FormatError("matrix object must carry 'dim' and 're' fields")
    n = obj["dim"]
    if not isinstance(n, int) or n < 1:
        raise FormatError(f"'dim' must be a positive integer, got {n!r}")
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros((n, n))), dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"matrix entries are not numeric: {exc}") from exc
    if re.shape != (n, n) or im.shape != (n, n):
        raise FormatError(
            f"matrix blocks must be {n}x{n}, got re {re.shape} and im {im.shape}"
        )
    return hermitian(re + 1j * im, tol=tol)


def load_matrix(path: str, tol: float = 1e-12) -> np.ndarray:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON in {path}: {exc}") from exc
    return matrix_from_json(obj, tol=tol)


def save_matrix(path: str, M: np.ndarray) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_json(M), fh)
        fh.write("\n")


def vector_to_json(x: np.ndarray) -> dict[str, Any]:
    x = np.asarray(x, dtype=complex).ravel()
    return {"dim": x.size, "re": x.real.tolist(), "im": x.imag.tolist()}


def coords_to_json(coords: ChartCoordinates) -> dict[str, Any]:
    return {
        "n": coords.n,
        "k": coords.k,
        "jj_re": coords.block_jj.real.tolist(),
        "jj_im": coords.block_jj.imag.tolist(),
        "off_re": coords.block_off.real.tolist(),
        "off_im": coords.block_off.imag.tolist(),
    }


def coords_from_json(obj: Any) -> ChartCoordinates:
    try:
        n, k = int(obj["n"]), int(obj["k"])
        jj = np.asarray(obj["jj_re"], dtype=float) + 1j * np.asarray(obj["jj_im"], dtype=float)
        off = np.asarray(obj["off_re"], dtype=float) + 1j * np.asarray(obj["off_im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"invalid chart coordinates object: {exc}") from exc
    if jj.shape != (k, k) or off.shape != (n - k, k):
        raise FormatError(
            f"coordinate blocks must be {k}x{k} and {n - k}x{k}, got {jj.shape}, {off.shape}"
        )
    return ChartCoordinates(block_jj=(jj + jj.conj().T) / 2, block_off=off)


def load_coords(path: str) -> ChartCoordinates:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON in {path}: {exc}") from exc
    return coords_from_json(obj)


def load_curve(path: str, tol: float = 1e-12) -> list[tuple[float, np.ndarray]]:
    samples = []
    try:
        with open(path) as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise FormatError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
                if not isinstance(rec, dict) or "t" not in rec or "matrix" not in rec:
                    raise FormatError(f"{path}:{lineno}: record needs 't' and 'matrix' fields")
                samples.append((float(rec["t"]), matrix_from_json(rec["matrix"], tol=tol)))
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    return samples


def save_curve(path: str, samples: list[tuple[float, np.ndarray]]) -> None:
    with open(path, "w") as fh:
        for t, M in samples:
            fh.write(json.dumps({"t": float(t), "matrix": matrix_to_json(M)}))
            fh.write("\n")
