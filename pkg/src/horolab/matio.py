"""Plain-text serialization of the structured matrices.

Format: first line ``n=<int>``, then n+2 rows of n+2 space-separated
decimals printed with 17 significant digits, which round-trips IEEE
doubles exactly.
"""
from __future__ import annotations

import numpy as np

__all__ = ["format_matrix", "parse_matrix", "save_matrix", "load_matrix"]


class MatrixFormatError(ValueError):
    pass


def format_matrix(mat: np.ndarray, n: int) -> str:
    arr = np.asarray(mat, dtype=float)
    if arr.shape != (n + 2, n + 2):
        raise MatrixFormatError(
            f"matrix shape {arr.shape} does not match n={n}"
        )
    lines = [f"n={n}"]
    for row in arr:
        lines.append(" ".join(f"{x:.17g}" for x in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> tuple[np.ndarray, int]:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise MatrixFormatError("first line must be 'n=<int>'")
    try:
        n = int(lines[0][2:])
    except ValueError as exc:
        raise MatrixFormatError(f"bad dimension line {lines[0]!r}") from exc
    if n < 1:
        raise MatrixFormatError(f"n must be >= 1, got {n}")
    size = n + 2
    if len(lines) - 1 != size:
        raise MatrixFormatError(
            f"expected {size} matrix rows, found {len(lines) - 1}"
        )
    rows = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != size:
            raise MatrixFormatError(
                f"row has {len(parts)} entries, expected {size}"
            )
        try:
            rows.append([float(p) for p in parts])
        except ValueError as exc:
            raise MatrixFormatError(f"non-numeric entry in row {ln!r}") from exc
    return np.array(rows), n


def save_matrix(path, mat: np.ndarray, n: int) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_matrix(mat, n))


def load_matrix(path) -> tuple[np.ndarray, int]:
    with open(path, "r", encoding="ascii") as fh:
        return parse_matrix(fh.read())
