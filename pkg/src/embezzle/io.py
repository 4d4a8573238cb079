"""JSON Lines state files and label serialisation.

Format: a header line ``{"mode": ..., "arity": ...}`` followed by one term per
line, ``{"label": {...}, "amp": {...}}``, in label order.  Resource labels are
written as ``{"regs": [...], "r": 0, "x": "m/2^e", "y": "m/2^e"}``; finite
multi-index labels as ``{"regs": [...], "index": [i, j, ...]}``.  Dense states
add ``"dims"`` to the header and use ``"index"`` labels with no registers.
"""
from __future__ import annotations

import json
from typing import IO, Iterable, List

import numpy as np

from .basis import Adic, CompositeLabel, ResourceLabel
from .exact_scalar import scalar_from_json, scalar_to_json
from .sparse_state import EXACT, FLOAT, SparseState


class StateFileError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def label_to_json(lab: CompositeLabel) -> dict:
    out = {"regs": list(lab.regs)}
    res = lab.res
    if isinstance(res, ResourceLabel):
        out.update({"r": res.r, "x": res.x.to_json(), "y": res.y.to_json()})
    else:
        out["index"] = list(res)
    return out


def label_from_json(obj: dict) -> CompositeLabel:
    regs = tuple(int(v) for v in obj.get("regs", []))
    if "index" in obj:
        return CompositeLabel(regs, tuple(int(v) for v in obj["index"]))
    return CompositeLabel(regs, ResourceLabel(int(obj["r"]), Adic.from_json(obj["x"]),
                                              Adic.from_json(obj["y"])))


def dumps_state(state: SparseState, extra_header: dict | None = None) -> str:
    header = {"mode": state.mode, "arity": state.arity}
    if extra_header:
        header.update(extra_header)
    lines = [json.dumps(header, sort_keys=True)]
    for lab, amp in state:
        lines.append(json.dumps({"label": label_to_json(lab), "amp": scalar_to_json(amp)},
                                sort_keys=True))
    return "\n".join(lines) + "\n"


def write_state(state: SparseState, path, extra_header: dict | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_state(state, extra_header))


def _parse(lines: Iterable[str]):
    header = None
    terms = []
    for no, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise StateFileError(no, f"invalid JSON ({exc.msg})") from None
        if header is None:
            if "mode" not in obj:
                raise StateFileError(no, "missing header with 'mode'")
            if obj["mode"] not in (EXACT, FLOAT):
                raise StateFileError(no, f"unknown mode {obj['mode']!r}")
            header = obj
            continue
        try:
            terms.append((label_from_json(obj["label"]), scalar_from_json(obj["amp"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise StateFileError(no, f"malformed term ({exc})") from None
    if header is None:
        raise StateFileError(0, "empty state file")
    return header, terms


def loads_state(text: str) -> SparseState:
    header, terms = _parse(text.splitlines())
    try:
        return SparseState(terms, mode=header["mode"], arity=int(header.get("arity", 0)))
    except ValueError as exc:
        raise StateFileError(0, str(exc)) from None


def read_state(path) -> SparseState:
    with open(path) as fh:
        return loads_state(fh.read())


def dense_to_sparse(amps: np.ndarray, dims) -> SparseState:
    amps = np.asarray(amps, dtype=complex).reshape(-1)
    terms = []
    for flat, v in enumerate(amps):
        if v != 0:
            idx = tuple(int(i) for i in np.unravel_index(flat, dims))
            terms.append((CompositeLabel((), idx), complex(v)))
    return SparseState(terms, mode=FLOAT, arity=0)


def dumps_dense(amps: np.ndarray, dims) -> str:
    return dumps_state(dense_to_sparse(amps, dims), {"dims": list(int(d) for d in dims)})


def loads_dense(text: str):
    """Parse a dense-state file into ``(amps, dims)``."""
    header, terms = _parse(text.splitlines())
    if "dims" not in header:
        raise StateFileError(1, "dense state header needs 'dims'")
    dims = tuple(int(d) for d in header["dims"])
    amps = np.zeros(int(np.prod(dims)), dtype=complex)
    for lab, v in terms:
        idx = lab.res
        if not isinstance(idx, tuple) or len(idx) != len(dims):
            raise StateFileError(0, f"label {idx!r} does not match dims {dims}")
        amps[np.ravel_multi_index(idx, dims)] += complex(v)
    return amps, dims


def read_dense(path):
    with open(path) as fh:
        return loads_dense(fh.read())
