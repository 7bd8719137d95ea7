"""Density matrices used in the worked examples, plus a separable sampler."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidState, ParamOutOfRange
from .matcore import (HERMITIAN_TOL, PSD_TOL, check_dims, hermiticity_residual,
                      hermitian_eigenvalues, partial_trace, partial_transpose)

TRACE_TOL = 1e-12
SAMPLER_ALGORITHM = "numpy-pcg64/haar-pure+dirichlet-v1"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    mat: np.ndarray
    dims: tuple
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        mat = np.array(self.mat, dtype=complex)
        dims = check_dims(self.dims, mat.shape[0] if mat.ndim == 2 else -1)
        herm = hermiticity_residual(mat)
        if herm > HERMITIAN_TOL:
            raise InvalidState(f"Hermiticity residual {herm:.2e}")
        tr = np.trace(mat)
        if abs(tr - 1) > TRACE_TOL:
            raise InvalidState(f"trace {tr} differs from 1")
        lam = hermitian_eigenvalues(mat)[0]
        if lam < -PSD_TOL:
            raise InvalidState(f"minimum eigenvalue {lam:.3e} is negative")
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def reduced(self, keep) -> np.ndarray:
        keep = [keep] if np.isscalar(keep) else list(keep)
        return partial_trace(self.mat, self.dims, keep)

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.mat)

    def purity(self) -> float:
        return float(np.real(np.trace(self.mat @ self.mat)))

    def rank(self, tol: float = 1e-10) -> int:
        return int(np.sum(self.eigenvalues() > tol))


def _in_unit(name, v):
    if not 0 <= v <= 1:
        raise ParamOutOfRange(f"{name}={v} must lie in [0, 1]")


def _ket(*amps) -> np.ndarray:
    v = np.asarray(amps, dtype=float)
    return v / np.linalg.norm(v)


def _proj(v) -> np.ndarray:
    return np.outer(v, v.conj())


def maximally_entangled(d: int) -> np.ndarray:
    return np.eye(d).reshape(-1) / np.sqrt(d)


def isotropic(d: int, q: float) -> DensityMatrix:
    """q |Phi+><Phi+| + (1-q) I/d^2."""
    _in_unit("q", q)
    check_dims([d])
    rho = q * _proj(maximally_entangled(d)) + (1 - q) * np.eye(d * d) / d ** 2
    return DensityMatrix(rho, (d, d), {"family": "isotropic", "q": q})


def tiles_vectors() -> list[np.ndarray]:
    """The five Tiles UPB product vectors on 3 x 3."""
    e0, e1, e2 = np.eye(3)
    return [
        np.kron(e0, _ket(1, -1, 0)),
        np.kron(_ket(1, -1, 0), e2),
        np.kron(e2, _ket(0, 1, -1)),
        np.kron(_ket(0, 1, -1), e0),
        np.kron(_ket(1, 1, 1), _ket(1, 1, 1)),
    ]


def tiles_state() -> DensityMatrix:
    """Rank-4 PPT entangled state (I - sum of UPB projectors)/4."""
    rho = (np.eye(9) - sum(_proj(v) for v in tiles_vectors())) / 4
    return DensityMatrix(rho, (3, 3), {"family": "tiles"})


def white_noise_mix(rho: DensityMatrix, p: float) -> DensityMatrix:
    """(1-p) I/D + p rho."""
    _in_unit("p", p)
    mix = (1 - p) * np.eye(rho.dim) / rho.dim + p * rho.mat
    return DensityMatrix(mix, rho.dims, {**rho.meta, "noise_p": p})


def tiles_noise(p: float) -> DensityMatrix:
    return white_noise_mix(tiles_state(), p)


def omega_vectors() -> list[np.ndarray]:
    e0, e1, e2 = np.eye(3)
    return [
        np.kron(e2, _ket(0, 1, -1)),
        np.kron(e0, _ket(1, -1, 0)),
        np.kron(_ket(1, -1, 0), e2),
        np.kron(_ket(0, 1, -1), e0),
        np.kron(_ket(1, 1, 1), _ket(1, 1, 1)),
    ]


def rho1_lambda(lam: float) -> DensityMatrix:
    """lam |w1><w1| + (1-lam) rho_BE, a PPT family of rank 5."""
    _in_unit("lambda", lam)
    w = omega_vectors()
    rho_be = (np.eye(9) - sum(_proj(v) for v in w)) / 4
    rho = lam * _proj(w[0]) + (1 - lam) * rho_be
    return DensityMatrix(rho, (3, 3), {"family": "rho1", "lambda": lam})


def horodecki_3x3(upsilon: float) -> DensityMatrix:
    """Horodecki's 3 x 3 bound entangled family, 0 < upsilon < 1."""
    u = upsilon
    if not 0 < u < 1:
        raise ParamOutOfRange(f"upsilon={u} must lie in (0, 1)")
    r = np.diag([u, u, u, u, u, u, (1 + u) / 2, u, (1 + u) / 2])
    for i in (0, 4, 8):
        for j in (0, 4, 8):
            if i != j:
                r[i, j] = u
    r[6, 8] = r[8, 6] = np.sqrt(1 - u * u) / 2
    return DensityMatrix(r / (1 + 8 * u), (3, 3), {"family": "horodecki", "upsilon": u})


def rho_y(upsilon: float, y: float) -> DensityMatrix:
    """y rho_upsilon + (1-y) I/9."""
    _in_unit("y", y)
    base = horodecki_3x3(upsilon)
    rho = y * base.mat + (1 - y) * np.eye(9) / 9
    return DensityMatrix(rho, (3, 3), {"family": "rho-y", "upsilon": upsilon, "y": y})


def _random_pure(d: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    z /= np.linalg.norm(z)
    return _proj(z)


def _random_mixed(d: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    r = g @ g.conj().T
    return r / np.trace(r).real


def random_separable(dims: Sequence[int], terms: int, seed: int,
                     pure: bool = True) -> DensityMatrix:
    """Random convex mixture of ``terms`` product states.

    Factors are Haar-random pure states (or Ginibre-mixed when ``pure`` is
    false); weights are Dirichlet(1, ..., 1). The stream is a fresh
    ``numpy.random.default_rng(seed)`` so a given (seed, dims, terms, pure)
    always yields the same matrix.
    """
    dims = check_dims(dims)
    if terms < 1:
        raise ParamOutOfRange("terms must be >= 1")
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(terms))
    factor = _random_pure if pure else _random_mixed
    D = int(np.prod(dims))
    rho = np.zeros((D, D), dtype=complex)
    for w in weights:
        term = np.ones((1, 1))
        for d in dims:
            term = np.kron(term, factor(d, rng))
        rho += w * term
    rho = (rho + rho.conj().T) / 2
    rho /= np.trace(rho).real
    meta = {"family": "random-separable", "seed": seed, "terms": terms,
            "pure": pure, "algorithm": SAMPLER_ALGORITHM}
    return DensityMatrix(rho, dims, meta)


def random_state(d: int, rng: np.random.Generator, pure: bool = False) -> np.ndarray:
    """Single-system random state (pure Haar or Ginibre-mixed)."""
    return _random_pure(d, rng) if pure else _random_mixed(d, rng)


def ppt_min_eigenvalue(rho: DensityMatrix, which: int = 1) -> float:
    """Smallest eigenvalue of the partial transpose; negative means NPT."""
    pt = partial_transpose(rho.mat, rho.dims, which)
    return float(hermitian_eigenvalues(pt)[0])


FAMILIES = {
    "isotropic": ("q", lambda v, d=3, **_: isotropic(d, v)),
    "tiles-noise": ("p", lambda v, **_: tiles_noise(v)),
    "rho1": ("lambda", lambda v, **_: rho1_lambda(v)),
    "rho-y": ("y", lambda v, upsilon=0.2, **_: rho_y(upsilon, v)),
    "horodecki": ("upsilon", lambda v, **_: horodecki_3x3(v)),
}


def make_family(family: str, value: float, **params) -> DensityMatrix:
    try:
        _, build = FAMILIES[family]
    except KeyError:
        raise ParamOutOfRange(f"unknown state family {family!r}") from None
    return build(value, **params)
