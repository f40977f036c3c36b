"""Shared state file format.

A state file is a JSON document with one of:

* ``{"dim": d, "entries": [[re, im], ...]}`` -- row-major density matrix;
* ``{"dim": d, "amplitudes": [[re, im], ...]}`` -- pure state;
* ``{"bloch": [nx, ny, nz]}`` -- qubit Bloch vector.

Parsers validate the physical invariants and raise the named state errors
on violation. Outcome streams are plain text: a ``# dim=<d> seed=<s>``
header line followed by one symbol per line.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

import numpy as np

from .rng import OutcomeStream
from .states import DensityMatrix, PureState, bloch_to_density, pure_state, validate_density


def _complex_array(pairs, what: str) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"{what} must be a list of [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def load_state(path, tol: float = 1e-10) -> Union[DensityMatrix, PureState]:
    data = json.loads(Path(path).read_text())
    if "bloch" in data:
        n = data["bloch"]
        if len(n) != 3:
            raise ValueError("bloch must have three components")
        return bloch_to_density(n)
    if "amplitudes" in data:
        dim = int(data["dim"])
        amps = _complex_array(data["amplitudes"], "amplitudes")
        if amps.shape[0] != dim:
            raise ValueError(f"expected {dim} amplitudes, got {amps.shape[0]}")
        return pure_state(amps)
    if "entries" in data:
        dim = int(data["dim"])
        flat = _complex_array(data["entries"], "entries")
        if flat.shape[0] != dim * dim:
            raise ValueError(f"expected {dim * dim} entries, got {flat.shape[0]}")
        return validate_density(flat.reshape(dim, dim), tol=tol)
    raise ValueError("state file needs one of: entries, amplitudes, bloch")


def _pairs(values: np.ndarray):
    return [[float(v.real), float(v.imag)] for v in values]


def density_to_dict(rho: DensityMatrix) -> dict:
    return {"dim": rho.dim, "entries": _pairs(rho.mat.ravel())}


def pure_to_dict(psi: PureState) -> dict:
    return {"dim": psi.dim, "amplitudes": _pairs(psi.amps)}


def save_state(state: Union[DensityMatrix, PureState], path) -> None:
    data = density_to_dict(state) if isinstance(state, DensityMatrix) else pure_to_dict(state)
    Path(path).write_text(json.dumps(data))


def save_stream(stream: OutcomeStream, path) -> None:
    lines = [f"# dim={stream.source_dim} seed={stream.seed}"]
    lines.extend(str(int(s)) for s in stream.symbols)
    Path(path).write_text("\n".join(lines) + "\n")


def load_stream(path) -> OutcomeStream:
    lines = Path(path).read_text().splitlines()
    if not lines or not lines[0].startswith("#"):
        raise ValueError("stream file must start with a '# dim=... seed=...' header")
    header = dict(part.split("=") for part in lines[0].lstrip("# ").split())
    dim = int(header["dim"])
    seed = int(header["seed"])
    symbols = np.array([int(s) for s in lines[1:] if s.strip()], dtype=np.int64)
    if np.any(symbols < 0) or np.any(symbols >= dim):
        raise ValueError(f"stream contains symbols outside 0..{dim - 1}")
    return OutcomeStream(symbols, dim, seed)
