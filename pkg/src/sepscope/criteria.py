"""Separability criteria built from local symmetric-measurement statistics.

For a bipartite state the probability matrix has entries
``tr[(E_A[i] (x) E_B[j]) rho]`` with rows and columns in the group-major order
``(alpha-1)*M + k``. The augmented matrix borders it with an ``l x l`` block
``mu*nu*J`` and ``l`` copies of the local marginal probability vectors:

    [[ mu*nu*J_l      mu * [sigma^T; ...; sigma^T] ],
     [ nu * [tau ... tau]        P               ]]

For separable states its trace norm is bounded by
``sqrt((l mu^2 + f_A)(l nu^2 + f_B))`` where ``f`` is the per-side purity
bound of the POVM. Baselines (realignment, PPT and the two realignment-based
bordered matrices) live here too so they can be compared on equal footing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidPartition, ShapeMismatch, UnknownKind
from .matcore import partial_trace, partial_transpose, realign, trace_norm, vec
from .povm import SymmetricPovm, purity_bound
from .states import DensityMatrix

DETECTION_TOL = 1e-9
PROB_TOL = 1e-10
CONVENTIONS = {"vec": "column-stacking", "realign": "R(a(x)b)=vec(a)vec(b)^T",
               "order": "(alpha-1)*M+k"}


@dataclass
class CriterionVerdict:
    criterion: str
    lhs: float
    rhs: float
    params: dict = field(default_factory=dict)
    tol: float = DETECTION_TOL

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs

    @property
    def detected(self) -> bool:
        return self.margin > self.tol

    def to_dict(self) -> dict:
        return {"criterion": self.criterion, "lhs": self.lhs, "rhs": self.rhs,
                "margin": self.margin, "detected": self.detected,
                "metadata": {**self.params, "detection_tol": self.tol}}


@dataclass(frozen=True)
class Bipartition:
    """Subsystem ``q`` versus the ordered remainder."""
    q: int
    rest: tuple

    @classmethod
    def single_out(cls, q: int, n: int) -> "Bipartition":
        if not 0 <= q < n:
            raise InvalidPartition(f"subsystem {q} not in range({n})")
        return cls(q, tuple(i for i in range(n) if i != q))


def _matrix(rho):
    return (rho.mat, rho.dims) if isinstance(rho, DensityMatrix) else (np.asarray(rho), None)


def outcome_tensor(rho: np.ndarray, dims: Sequence[int],
                   povms: Sequence[SymmetricPovm]) -> np.ndarray:
    """Joint outcome probabilities, one axis per subsystem (length N_i*M_i)."""
    dims = tuple(dims)
    if len(povms) != len(dims) or any(p.dim != d for p, d in zip(povms, dims)):
        raise DimensionMismatch("one POVM of matching dimension per subsystem is required")
    n = len(dims)
    t = np.asarray(rho).reshape(dims + dims)
    # Contract subsystem 0 each round; the outcome axis is appended at the end.
    for p in povms:
        t = np.tensordot(p.flat, t, axes=([1, 2], [n, 0]))
        t = np.moveaxis(t, 0, -1)
        n -= 1
    if np.max(np.abs(t.imag)) > 1e-12:
        raise DimensionMismatch("probabilities have a non-negligible imaginary part")
    return t.real


def probability_matrix(rho, povm_a: SymmetricPovm, povm_b: SymmetricPovm) -> np.ndarray:
    mat, dims = _matrix(rho)
    dims = dims or (povm_a.dim, povm_b.dim)
    if len(dims) != 2 or dims != (povm_a.dim, povm_b.dim):
        raise DimensionMismatch(f"state dims {dims} vs POVM dims {(povm_a.dim, povm_b.dim)}")
    return outcome_tensor(mat, dims, [povm_a, povm_b])


def marginal_vector(rho_reduced, povm: SymmetricPovm) -> np.ndarray:
    """Probabilities tr(E_{a,k} rho_X) in group-major order."""
    r = np.asarray(rho_reduced)
    if r.shape != (povm.dim, povm.dim):
        raise DimensionMismatch(f"state of shape {r.shape} vs POVM dimension {povm.dim}")
    return np.einsum("kab,ba->k", povm.flat, r).real


def augmented_matrix(p, tau, sigma, mu: float, nu: float, l: int) -> np.ndarray:
    p = np.asarray(p)
    tau = np.asarray(tau).reshape(-1)
    sigma = np.asarray(sigma).reshape(-1)
    if l < 1 or int(l) != l:
        raise ShapeMismatch(f"l must be a positive integer, got {l}")
    if p.ndim != 2 or tau.size != p.shape[0] or sigma.size != p.shape[1]:
        raise ShapeMismatch(f"P {p.shape}, tau {tau.size}, sigma {sigma.size}")
    l = int(l)
    top = np.hstack([mu * nu * np.ones((l, l)), mu * np.tile(sigma, (l, 1))])
    bottom = np.hstack([nu * np.tile(tau[:, None], (1, l)), p])
    return np.vstack([top, bottom])


def theorem1_bound(da, ma, xa, db, mb, xb, mu=0.0, nu=0.0, l=1) -> float:
    return float(np.sqrt((l * mu ** 2 + purity_bound(da, ma, xa))
                         * (l * nu ** 2 + purity_bound(db, mb, xb))))


def corollary_bounds(kind: str, params, mu=0.0, nu=0.0, l=1) -> float:
    """Closed-form bounds for GSIC and MUM pairs.

    ``params`` is ``(dA, aA, dB, aB)`` for ``"gsic"`` and ``(kappaA, kappaB)``
    for ``"mum"``.
    """
    if kind == "gsic":
        da, aa, db, ab = params
        fa = (aa * da ** 2 + 1) / (da * (da + 1))
        fb = (ab * db ** 2 + 1) / (db * (db + 1))
    elif kind == "mum":
        ka, kb = params
        fa, fb = 1 + ka, 1 + kb
    else:
        raise UnknownKind(f"no closed-form bound for kind {kind!r}")
    return float(np.sqrt((l * mu ** 2 + fa) * (l * nu ** 2 + fb)))


def _povm_meta(pa, pb):
    return {"povm_a": pa.describe(), "povm_b": pb.describe()}


def augmented_for_state(rho: DensityMatrix, povm_a, povm_b, mu, nu, l) -> np.ndarray:
    p = probability_matrix(rho, povm_a, povm_b)
    tau = marginal_vector(rho.reduced(0), povm_a)
    sigma = marginal_vector(rho.reduced(1), povm_b)
    return augmented_matrix(p, tau, sigma, mu, nu, l)


def evaluate_theorem1(rho: DensityMatrix, povm_a: SymmetricPovm, povm_b: SymmetricPovm,
                      mu: float = 0.0, nu: float = 0.0, l: int = 1,
                      tol: float = DETECTION_TOL, criterion: str = "thm1") -> CriterionVerdict:
    lhs = trace_norm(augmented_for_state(rho, povm_a, povm_b, mu, nu, l))
    rhs = theorem1_bound(povm_a.dim, povm_a.m, povm_a.x, povm_b.dim, povm_b.m, povm_b.x,
                         mu, nu, l)
    return CriterionVerdict(criterion, lhs, rhs,
                            {"mu": mu, "nu": nu, "l": l, **_povm_meta(povm_a, povm_b)}, tol)


def evaluate_corollary(rho: DensityMatrix, povm_a: SymmetricPovm, povm_b: SymmetricPovm,
                       mu: float = 0.0, nu: float = 0.0, l: int = 1,
                       tol: float = DETECTION_TOL) -> CriterionVerdict:
    """Bordered-matrix evaluation with the GSIC or MUM closed-form right-hand side."""
    kind = povm_a.kind
    if povm_b.kind != kind or kind not in ("gsic", "mum"):
        raise UnknownKind(f"corollary needs two GSIC or two MUM POVMs, got "
                          f"{povm_a.kind}/{povm_b.kind}")
    v = evaluate_theorem1(rho, povm_a, povm_b, mu, nu, l, tol, criterion=kind)
    params = ((povm_a.dim, povm_a.x, povm_b.dim, povm_b.x) if kind == "gsic"
              else (povm_a.x, povm_b.x))
    v.rhs = corollary_bounds(kind, params, mu, nu, l)
    return v


def evaluate_p_only(rho: DensityMatrix, povm_a: SymmetricPovm, povm_b: SymmetricPovm,
                    tol: float = DETECTION_TOL) -> CriterionVerdict:
    lhs = trace_norm(probability_matrix(rho, povm_a, povm_b))
    rhs = theorem1_bound(povm_a.dim, povm_a.m, povm_a.x, povm_b.dim, povm_b.m, povm_b.x)
    return CriterionVerdict("p-only", lhs, rhs, _povm_meta(povm_a, povm_b), tol)


def probability_purity(rho_single, povm: SymmetricPovm) -> float:
    return float(np.sum(marginal_vector(rho_single, povm) ** 2))


def q_matrix(rho: DensityMatrix, alpha: float, beta: float, l: int | None = None) -> np.ndarray:
    """Realignment bordered by vectorized marginals.

    ``l=None`` gives the single-border form ``[[ab, a vec(rho_B)^T],
    [b vec(rho_A), R(rho)]]``; an integer ``l`` repeats the borders ``l`` times
    with an ``l x l`` all-``ab`` corner.
    """
    if len(rho.dims) != 2:
        raise DimensionMismatch("Q-matrix criteria need a bipartite state")
    r = realign(rho.mat, rho.dims)
    va, vb = vec(rho.reduced(0)), vec(rho.reduced(1))
    reps = 1 if l is None else int(l)
    if reps < 1:
        raise ShapeMismatch("l must be a positive integer")
    top = np.hstack([alpha * beta * np.ones((reps, reps)), alpha * np.tile(vb, (reps, 1))])
    bottom = np.hstack([beta * np.tile(va[:, None], (1, reps)), r])
    return np.vstack([top, bottom])


def shi_q_matrix(rho: DensityMatrix, alpha: float, beta: float,
                 tol: float = DETECTION_TOL) -> CriterionVerdict:
    lhs = trace_norm(q_matrix(rho, alpha, beta))
    rhs = float(np.sqrt((alpha ** 2 + 1) * (beta ** 2 + 1)))
    return CriterionVerdict("shi", lhs, rhs,
                            {"alpha": alpha, "beta": beta, "conventions": CONVENTIONS}, tol)


def sun_q_matrix(rho: DensityMatrix, alpha: float, beta: float, l: int = 1,
                 tol: float = DETECTION_TOL) -> CriterionVerdict:
    lhs = trace_norm(q_matrix(rho, alpha, beta, l))
    rhs = float(np.sqrt((l * alpha ** 2 + 1) * (l * beta ** 2 + 1)))
    return CriterionVerdict("sun", lhs, rhs,
                            {"alpha": alpha, "beta": beta, "l": l, "conventions": CONVENTIONS},
                            tol)


def realignment_criterion(rho: DensityMatrix, tol: float = DETECTION_TOL) -> CriterionVerdict:
    lhs = trace_norm(realign(rho.mat, rho.dims))
    return CriterionVerdict("realign", lhs, 1.0, {"conventions": CONVENTIONS}, tol)


def ppt_criterion(rho: DensityMatrix, tol: float = DETECTION_TOL) -> CriterionVerdict:
    """PPT test phrased as a verdict: lhs = -(min eigenvalue of rho^T_B), rhs = 0."""
    pt = partial_transpose(rho.mat, rho.dims, 1)
    lam = float(np.linalg.eigvalsh((pt + pt.conj().T) / 2)[0])
    return CriterionVerdict("ppt", -lam, 0.0, {"min_eigenvalue": lam}, tol)


def bipartition_matrices(rho: DensityMatrix, povms: Sequence[SymmetricPovm], q: int):
    """Probability matrix and marginal vectors for subsystem ``q`` vs the rest.

    Columns run lexicographically over the remainder's outcome tuples in
    subsystem order.
    """
    n = len(rho.dims)
    part = Bipartition.single_out(q, n)
    probs = outcome_tensor(rho.mat, rho.dims, povms)
    probs = np.moveaxis(probs, q, 0)
    p = probs.reshape(probs.shape[0], -1)
    tau = marginal_vector(rho.reduced(q), povms[q])
    rest_dims = [rho.dims[i] for i in part.rest]
    rest_state = partial_trace(rho.mat, rho.dims, part.rest)
    sigma = outcome_tensor(rest_state, rest_dims, [povms[i] for i in part.rest]).reshape(-1)
    return p, tau, sigma


def evaluate_bipartition(rho: DensityMatrix, povms: Sequence[SymmetricPovm], q: int,
                         mu: float = 0.0, nu: float = 0.0, l: int = 1,
                         tol: float = DETECTION_TOL) -> CriterionVerdict:
    """Subsystem ``q`` versus the remainder, with product measurements on the rest."""
    if len(povms) != len(rho.dims):
        raise DimensionMismatch("need one POVM per subsystem")
    p, tau, sigma = bipartition_matrices(rho, povms, q)
    lhs = trace_norm(augmented_matrix(p, tau, sigma, mu, nu, l))
    fq = purity_bound(povms[q].dim, povms[q].m, povms[q].x)
    frest = float(np.prod([purity_bound(pv.dim, pv.m, pv.x)
                           for i, pv in enumerate(povms) if i != q]))
    rhs = float(np.sqrt((l * mu ** 2 + fq) * (l * nu ** 2 + frest)))
    return CriterionVerdict(f"bipartition-{q}", lhs, rhs,
                            {"q": q, "mu": mu, "nu": nu, "l": l,
                             "povms": [pv.describe() for pv in povms]}, tol)
