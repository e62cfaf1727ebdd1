"""Versioned plain-text block format shared by serialised models.

Layout::

    pcasmote-model v1
    kind: <model kind>
    <key>: <value>                  # scalars and name lists
    <key>: vector <n>
    <n space-separated floats>
    <key>: matrix <rows> <cols>
    <rows lines of cols floats>
    end

Floats are written with ``repr`` so reloading is bit-exact.
"""

from __future__ import annotations

import numpy as np

from .errors import DataError

HEADER = "pcasmote-model v1"


def format_vector(v: np.ndarray) -> str:
    return " ".join(repr(float(x)) for x in v)


def write_blocks(path, kind: str, scalars: dict, arrays: dict) -> None:
    """Write scalar fields then vector/matrix blocks, in insertion order."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(HEADER + "\n")
        fh.write(f"kind: {kind}\n")
        for key, value in scalars.items():
            fh.write(f"{key}: {value}\n")
        for key, arr in arrays.items():
            arr = np.asarray(arr, dtype=np.float64)
            if arr.ndim == 1:
                fh.write(f"{key}: vector {arr.shape[0]}\n")
                fh.write(format_vector(arr) + "\n")
            elif arr.ndim == 2:
                fh.write(f"{key}: matrix {arr.shape[0]} {arr.shape[1]}\n")
                for row in arr:
                    fh.write(format_vector(row) + "\n")
            else:
                raise ValueError(f"cannot serialise array of ndim {arr.ndim}")
        fh.write("end\n")


def read_blocks(path, expected_kind: str) -> tuple[dict, dict]:
    """Parse a model file back into (scalars, arrays)."""
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or lines[0] != HEADER:
        raise DataError(f"{path}: missing or unsupported model header")
    if lines[-1] == "":
        lines.pop()
    if not lines or lines[-1] != "end":
        raise DataError(f"{path}: truncated model file (no 'end' marker)")

    scalars: dict = {}
    arrays: dict = {}
    i = 1
    while i < len(lines) - 1:
        line = lines[i]
        if ":" not in line:
            raise DataError(f"{path}: malformed line {i + 1}: {line!r}")
        key, value = line.split(":", 1)
        key = key.strip()
        value = value.strip()
        if value.startswith("vector "):
            n = int(value.split()[1])
            i += 1
            vec = np.array([float(t) for t in lines[i].split()], dtype=np.float64)
            if vec.shape[0] != n:
                raise DataError(f"{path}: vector {key!r} has wrong length")
            arrays[key] = vec
        elif value.startswith("matrix "):
            _, r, c = value.split()
            rows, cols = int(r), int(c)
            block = []
            for j in range(rows):
                i += 1
                row = [float(t) for t in lines[i].split()]
                if len(row) != cols:
                    raise DataError(f"{path}: matrix {key!r} row {j} has wrong length")
                block.append(row)
            arrays[key] = np.array(block, dtype=np.float64).reshape(rows, cols)
        else:
            scalars[key] = value
        i += 1

    if scalars.get("kind") != expected_kind:
        raise DataError(
            f"{path}: expected model kind {expected_kind!r}, found {scalars.get('kind')!r}"
        )
    return scalars, arrays
