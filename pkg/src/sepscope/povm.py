"""Informationally complete symmetric (N,M)-POVMs.

Operators are ``E[a, k] = I/M + t * H[a, k]`` with ``H`` built from a grouped
Gell-Mann basis. GSIC-POVMs are the ``(1, d^2)`` case and mutually unbiased
measurements (MUMs) the ``(d+1, d)`` case; both also have dedicated builders
that follow their own closed forms, which the tests compare against the
general construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .basis import HermitianOperatorBasis
from .errors import (DegenerateSpectrum, IncompatibleCounts, TOutOfRange,
                     ValidationFailed)
from .matcore import PSD_TOL

T_TOL = 1e-12
COMPLETENESS_TOL = 1e-12


@dataclass(frozen=True)
class NmPovmConfig:
    dim: int
    n: int
    m: int
    t: float

    def __post_init__(self):
        if self.n * (self.m - 1) != self.dim ** 2 - 1:
            raise IncompatibleCounts(
                f"N(M-1) = {self.n * (self.m - 1)} != d^2-1 = {self.dim ** 2 - 1}")


@dataclass
class ValidationReport:
    residuals: dict
    tol: float
    passed: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.passed.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.passed.items() if not v]

    def to_dict(self) -> dict:
        return {"ok": self.ok, "tol": self.tol,
                "residuals": {k: float(v) for k, v in self.residuals.items()},
                "passed": dict(self.passed)}


@dataclass(frozen=True, eq=False)
class SymmetricPovm:
    """N x M measurement operators of one symmetric (N,M)-POVM.

    ``operators`` has shape ``(N, M, d, d)``; ``flat`` lists them in the
    group-major order ``(alpha-1)*M + k`` used for probability vectors.
    """
    config: NmPovmConfig
    operators: np.ndarray
    x: float
    kind: str = "general"
    scheme: str = "sequential"
    degenerate: bool = False

    @property
    def dim(self) -> int:
        return self.config.dim

    @property
    def n(self) -> int:
        return self.config.n

    @property
    def m(self) -> int:
        return self.config.m

    @property
    def t(self) -> float:
        return self.config.t

    @property
    def flat(self) -> np.ndarray:
        d = self.dim
        return self.operators.reshape(-1, d, d)

    @property
    def bound_factor(self) -> float:
        return purity_bound(self.dim, self.m, self.x)

    def describe(self) -> dict:
        return {"kind": self.kind, "dim": self.dim, "n": self.n, "m": self.m,
                "t": self.t, "x": self.x, "scheme": self.scheme,
                "degenerate": self.degenerate}


def kind_for(d: int, n: int, m: int) -> str:
    if (n, m) == (1, d * d):
        return "gsic"
    if (n, m) == (d + 1, d):
        return "mum"
    return "general"


def efficiency_x(d: int, m: int, t: float) -> float:
    return d / m ** 2 + t ** 2 * (m - 1) * (np.sqrt(m) + 1) ** 2


def gsic_parameter(d: int, t: float) -> float:
    return 1 / d ** 3 + t ** 2 * (d - 1) * (d + 1) ** 3


def mum_parameter(d: int, t: float) -> float:
    return 1 / d + t ** 2 * (1 + np.sqrt(d)) ** 2 * (d - 1)


def purity_bound(d: int, m: int, x: float) -> float:
    """Upper bound on sum_{a,k} tr(rho E_{a,k})^2 over all states."""
    return (d - 1) * (d ** 2 + m ** 2 * x) / (d * m * (m - 1))


def build_h_operators(basis: HermitianOperatorBasis) -> np.ndarray:
    """Traceless Hermitian H[a, k], shape (N, M, d, d)."""
    n, m, d = basis.n, basis.m, basis.dim
    if n * (m - 1) != d * d - 1:
        raise IncompatibleCounts(f"N(M-1) = {n * (m - 1)} != d^2-1 = {d * d - 1}")
    sm = np.sqrt(m)
    h = np.empty((n, m, d, d), dtype=complex)
    for a in range(n):
        g = basis.group(a)
        ga = np.sum(g, axis=0)
        for k, gk in enumerate(g):
            h[a, k] = ga - sm * (sm + 1) * gk
        h[a, m - 1] = (sm + 1) * ga
    return h


def _t_interval(ops: np.ndarray, scale: int) -> tuple[float, float]:
    d = ops.shape[-1]
    ev = np.linalg.eigvalsh(ops.reshape(-1, d, d))
    lam_max, lam_min = float(ev.max()), float(ev.min())
    if lam_max <= 0 or lam_min >= 0:
        raise DegenerateSpectrum(f"spectrum [{lam_min}, {lam_max}] does not straddle 0")
    return -1 / (scale * lam_max), 1 / (scale * abs(lam_min))


def t_range(h_ops: np.ndarray) -> tuple[float, float]:
    """Interval of t for which every E = I/M + t H stays positive semidefinite."""
    h_ops = np.asarray(h_ops)
    if h_ops.size == 0:
        raise DegenerateSpectrum("empty operator set")
    return _t_interval(h_ops, h_ops.shape[1])


def _check_t(t: float, lo: float, hi: float) -> None:
    if not (lo - T_TOL <= t <= hi + T_TOL):
        raise TOutOfRange(f"t={t} outside admissible range [{lo:.6g}, {hi:.6g}]")


def _finish(config, ops, x, kind, scheme, validate):
    ops.setflags(write=False)
    p = SymmetricPovm(config, ops, float(x), kind, scheme, degenerate=(config.t == 0))
    if validate:
        report = validate_povm(p)
        if not report.ok:
            raise ValidationFailed(f"POVM failed {report.failures()}", report)
    return p


def build_povm(config: NmPovmConfig, basis: HermitianOperatorBasis | None = None,
               validate: bool = True) -> SymmetricPovm:
    """Construct E[a, k] = I/M + t H[a, k] for the given configuration.

    ``t = 0`` is accepted and tagged ``degenerate`` (x equals d/M^2, so the
    POVM is not informationally complete).
    """
    d, n, m, t = config.dim, config.n, config.m, float(config.t)
    if basis is None:
        basis = HermitianOperatorBasis.for_nm(d, n, m)
    if (basis.dim, basis.n, basis.m) != (d, n, m):
        raise IncompatibleCounts("basis grouping does not match the POVM configuration")
    h = build_h_operators(basis)
    _check_t(t, *t_range(h))
    ops = np.eye(d) / m + t * h
    return _finish(config, ops, efficiency_x(d, m, t), kind_for(d, n, m),
                   basis.scheme, validate)


def build_gsic(d: int, t: float, basis: HermitianOperatorBasis | None = None,
               validate: bool = True) -> SymmetricPovm:
    """GSIC-POVM M_k = I/d^2 + t F_k from d^2-1 traceless F's."""
    if basis is None:
        basis = HermitianOperatorBasis.for_nm(d, 1, d * d)
    f = np.array(basis.group(0))
    fsum = f.sum(axis=0)
    ff = np.concatenate([fsum - d * (d + 1) * f, [(d + 1) * fsum]])
    _check_t(t, *_t_interval(ff, d * d))
    ops = (np.eye(d) / d ** 2 + t * ff).reshape(1, d * d, d, d)
    return _finish(NmPovmConfig(d, 1, d * d, t), ops, gsic_parameter(d, t),
                   "gsic", basis.scheme, validate)


def build_mum(d: int, t: float, basis: HermitianOperatorBasis | None = None,
              validate: bool = True) -> SymmetricPovm:
    """d+1 MUMs P_n^(b) = I/d + t F_n^(b)."""
    if basis is None:
        basis = HermitianOperatorBasis.for_nm(d, d + 1, d)
    ops = np.empty((d + 1, d, d, d), dtype=complex)
    for b in range(d + 1):
        f = np.array(basis.group(b))
        fb = f.sum(axis=0)
        ops[b, :d - 1] = fb - (d + np.sqrt(d)) * f
        ops[b, d - 1] = (1 + np.sqrt(d)) * fb
    _check_t(t, *_t_interval(ops, d))
    ops = np.eye(d) / d + t * ops
    return _finish(NmPovmConfig(d, d + 1, d, t), ops, mum_parameter(d, t),
                   "mum", basis.scheme, validate)


@lru_cache(maxsize=256)
def cached_povm(d: int, n: int, m: int, t: float, scheme: str | None = None) -> SymmetricPovm:
    """Memoized ``build_povm``; POVM arrays are read-only, so sharing is safe."""
    basis = HermitianOperatorBasis.for_nm(d, n, m, scheme)
    return build_povm(NmPovmConfig(d, n, m, t), basis)


def validate_povm(p: SymmetricPovm, tol: float = 1e-10) -> ValidationReport:
    """Check the defining trace relations, positivity and completeness."""
    d, n, m, x = p.dim, p.n, p.m, p.x
    ops = p.operators
    flat = ops.reshape(n * m, d, d)
    gram = np.einsum("iab,jba->ij", flat, flat).real
    traces = np.einsum("iaa->i", flat)
    grp = np.repeat(np.arange(n), m)
    same = grp[:, None] == grp[None, :]
    diag = np.eye(n * m, dtype=bool)

    res = {}
    res["hermitian"] = float(np.max(np.abs(flat - flat.conj().transpose(0, 2, 1))))
    res["trace"] = float(np.max(np.abs(traces - d / m)))
    res["purity"] = float(np.max(np.abs(np.diag(gram) - x)))
    within = same & ~diag
    res["same_group_overlap"] = float(
        np.max(np.abs(gram[within] - (d - m * x) / (m * (m - 1))))) if within.any() else 0.0
    across = ~same
    res["cross_group_overlap"] = float(
        np.max(np.abs(gram[across] - d / m ** 2))) if across.any() else 0.0
    herm = (flat + flat.conj().transpose(0, 2, 1)) / 2
    min_eig = float(np.linalg.eigvalsh(herm).min())
    res["psd"] = max(0.0, -min_eig)
    res["completeness"] = float(np.max(np.abs(ops.sum(axis=1) - np.eye(d))))

    passed = {k: v <= tol for k, v in res.items()}
    passed["psd"] = min_eig >= -PSD_TOL
    passed["completeness"] = res["completeness"] <= COMPLETENESS_TOL
    return ValidationReport(res, tol, passed)
