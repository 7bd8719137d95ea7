"""Dense complex-matrix kernel.

Plain ``numpy.ndarray`` objects are used throughout. Composite indices follow
the Kronecker convention: the leftmost subsystem is the most significant
digit, so ``|i>|j>`` of a ``dA x dB`` system sits at row ``i*dB + j``.

``vec`` stacks columns, and ``realign`` is fixed by
``realign(kron(a, b)) == outer(vec(a), vec(b))``.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidDimension, NonHermitian, NonSquare

HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got shape {a.shape}")
    return a


def check_dims(dims: Sequence[int], total: int | None = None) -> tuple[int, ...]:
    """Validate subsystem dimensions and return them as a tuple."""
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 2 for d in dims):
        raise InvalidDimension(f"every subsystem dimension must be >= 2, got {dims}")
    if total is not None and int(np.prod(dims)) != total:
        raise DimensionMismatch(f"dims {dims} do not multiply to {total}")
    return dims


def _check_square(m: np.ndarray) -> None:
    if m.shape[0] != m.shape[1]:
        raise NonSquare(f"matrix of shape {m.shape} is not square")


def hermiticity_residual(m) -> float:
    m = as_matrix(m)
    _check_square(m)
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_residual(m) <= tol


def hermitian_eigenvalues(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix.

    Raises ``NonHermitian`` when ``max|m - m^dagger|`` exceeds ``tol``.
    """
    m = as_matrix(m)
    res = hermiticity_residual(m)
    if res > tol:
        raise NonHermitian(f"Hermiticity residual {res:.3e} exceeds {tol:.1e}")
    return np.linalg.eigvalsh((m + m.conj().T) / 2)


def singular_values(m, method: str = "svd") -> np.ndarray:
    """Singular values in descending order.

    ``method="svd"`` uses LAPACK's SVD directly; ``method="gram"`` takes the
    square roots of the eigenvalues of the smaller Gram matrix (m^dagger m or
    m m^dagger). The second path is kept as an independent cross-check.
    """
    m = as_matrix(m)
    if m.size == 0:
        return np.zeros(0)
    if method == "svd":
        return np.linalg.svd(m, compute_uv=False)
    if method == "gram":
        gram = m.conj().T @ m if m.shape[1] <= m.shape[0] else m @ m.conj().T
        ev = np.linalg.eigvalsh((gram + gram.conj().T) / 2)
        # Gram eigenvalues carry absolute error ~ n*eps*max; below that they are zero
        cutoff = gram.shape[0] * np.finfo(float).eps * max(ev[-1], 0.0)
        ev[ev <= cutoff] = 0.0
        return np.sqrt(ev)[::-1]
    raise ValueError(f"unknown method {method!r}")


def trace_norm(m, method: str = "svd") -> float:
    """Sum of singular values (nuclear norm)."""
    return float(np.sum(singular_values(m, method)))


def kron(*ops) -> np.ndarray:
    out = np.ones((1, 1))
    for op in ops:
        out = np.kron(out, as_matrix(op))
    return out


def _keep_indices(keep: Iterable[int], n: int) -> list[int]:
    keep = sorted(set(int(k) for k in keep))
    if not keep or keep[0] < 0 or keep[-1] >= n:
        raise DimensionMismatch(f"keep={keep} is not a nonempty subset of range({n})")
    return keep


def partial_trace(m, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    The kept subsystems stay in their original order.
    """
    m = as_matrix(m)
    _check_square(m)
    dims = check_dims(dims, m.shape[0])
    n = len(dims)
    keep = _keep_indices(keep, n)
    t = m.reshape(dims + dims)
    # Trace the highest-numbered subsystems first so remaining axis numbers stay valid.
    cur = n
    for s in reversed(range(n)):
        if s in keep:
            continue
        t = np.trace(t, axis1=s, axis2=s + cur)
        cur -= 1
    dk = int(np.prod([dims[k] for k in keep]))
    return t.reshape(dk, dk)


def partial_transpose(m, dims: Sequence[int], which: int | Iterable[int] = 1) -> np.ndarray:
    """Transpose the tensor factor(s) ``which``; default is the second subsystem."""
    m = as_matrix(m)
    _check_square(m)
    dims = check_dims(dims, m.shape[0])
    n = len(dims)
    which = [which] if np.isscalar(which) else list(which)
    which = _keep_indices(which, n)
    axes = list(range(2 * n))
    for s in which:
        axes[s], axes[s + n] = axes[s + n], axes[s]
    return m.reshape(dims + dims).transpose(axes).reshape(m.shape)


def vec(m) -> np.ndarray:
    """Column-stacking vectorization, returned as a 1-d array."""
    return as_matrix(m).reshape(-1, order="F")


def unvec(v, rows: int, cols: int | None = None) -> np.ndarray:
    cols = rows if cols is None else cols
    return np.asarray(v).reshape((rows, cols), order="F")


def realign(m, dims: Sequence[int]) -> np.ndarray:
    """Realigned ``dA^2 x dB^2`` matrix with R(a (x) b) = vec(a) vec(b)^T."""
    m = as_matrix(m)
    _check_square(m)
    dims = check_dims(dims, m.shape[0])
    if len(dims) != 2:
        raise DimensionMismatch("realignment needs a bipartite system")
    da, db = dims
    # m[(i,k),(j,l)] = a_ij b_kl  ->  R[i + da*j, k + db*l]
    t = m.reshape(da, db, da, db)  # i, k, j, l
    return t.transpose(2, 0, 3, 1).reshape(da * da, db * db)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph
