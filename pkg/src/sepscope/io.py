"""JSON serialization for matrices, density matrices and POVMs.

Matrix: ``{"rows": n, "cols": m, "re": [[...]], "im": [[...]]}``. Density
matrices add ``"dims"``; POVMs are ``{"config": ..., "operators": [[matrix,
...], ...]}`` with one inner list per group.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .basis import HermitianOperatorBasis
from .errors import ConfigError, DimensionMismatch
from .povm import NmPovmConfig, SymmetricPovm
from .states import DensityMatrix


def matrix_to_json(m) -> dict:
    m = np.asarray(m)
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]),
            "re": m.real.tolist(), "im": np.imag(m).tolist()}


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
        rows, cols = int(obj["rows"]), int(obj["cols"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed matrix JSON: {exc}") from exc
    if re.shape != (rows, cols) or im.shape != (rows, cols):
        raise DimensionMismatch(f"declared {rows}x{cols}, got {re.shape}/{im.shape}")
    return re + 1j * im


def density_to_json(rho: DensityMatrix) -> dict:
    out = matrix_to_json(rho.mat)
    out["dims"] = list(rho.dims)
    if rho.meta:
        out["meta"] = rho.meta
    return out


def density_from_json(obj: dict) -> DensityMatrix:
    m = matrix_from_json(obj)
    dims = obj.get("dims")
    if dims is None:
        raise ConfigError("density-matrix JSON needs a 'dims' field")
    return DensityMatrix(m, tuple(dims), obj.get("meta", {}))


def povm_to_json(p: SymmetricPovm) -> dict:
    return {"config": p.describe(),
            "operators": [[matrix_to_json(e) for e in group] for group in p.operators]}


def povm_from_json(obj: dict) -> SymmetricPovm:
    try:
        cfg = obj["config"]
        ops = np.array([[matrix_from_json(e) for e in g] for g in obj["operators"]])
        config = NmPovmConfig(int(cfg["dim"]), int(cfg["n"]), int(cfg["m"]), float(cfg["t"]))
        return SymmetricPovm(config, ops, float(cfg["x"]), cfg.get("kind", "general"),
                             cfg.get("scheme", "sequential"), bool(cfg.get("degenerate", False)))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed POVM JSON: {exc}") from exc


def basis_to_json(basis: HermitianOperatorBasis) -> dict:
    return {"dim": basis.dim, "scheme": basis.scheme,
            "grouping": [list(g) for g in basis.grouping],
            "ops": [matrix_to_json(op) for op in basis.ops]}


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
