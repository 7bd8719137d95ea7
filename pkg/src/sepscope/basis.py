"""Generalized Gell-Mann operator basis and its partition into POVM groups."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IncompatibleCounts, InvalidDimension, UnknownFixture

# Index lists into gell_mann(3). Canonical d=3 order is
#   0: S01, 1: S02, 2: S12, 3: A01, 4: A02, 5: A12, 6: D1, 7: D2
# (S symmetric, A antisymmetric, D diagonal).
FIXTURES: dict[str, dict] = {
    "paper-8-2": {"dim": 3, "n": 8, "m": 2,
                  "groups": [[0], [3], [1], [4], [2], [5], [6], [7]]},
    "paper-1-9": {"dim": 3, "n": 1, "m": 9,
                  "groups": [[6, 0, 1, 3, 7, 2, 4, 5]]},
    "paper-4-3": {"dim": 3, "n": 4, "m": 3,
                  "groups": [[0, 3], [1, 4], [2, 5], [6, 7]]},
}


def gell_mann(d: int) -> list[np.ndarray]:
    """Orthonormal traceless Hermitian basis of d x d matrices.

    Order: symmetric off-diagonal pairs (j<k ascending), antisymmetric pairs
    in the same order, then the d-1 diagonal operators. Every element has
    ``tr(G^2) = 1``.
    """
    if int(d) != d or d < 2:
        raise InvalidDimension(f"dimension must be an integer >= 2, got {d}")
    d = int(d)
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    sym, asym = [], []
    for j, k in pairs:
        s = np.zeros((d, d), dtype=complex)
        s[j, k] = s[k, j] = 1
        sym.append(s / np.sqrt(2))
        a = np.zeros((d, d), dtype=complex)
        a[j, k] = -1j
        a[k, j] = 1j
        asym.append(a / np.sqrt(2))
    diag = []
    for l in range(1, d):
        v = np.zeros(d)
        v[:l] = 1
        v[l] = -l
        diag.append(np.diag(v / np.sqrt(l * (l + 1))).astype(complex))
    return sym + asym + diag


def default_scheme(d: int, n: int, m: int) -> str:
    for name, fx in FIXTURES.items():
        if (fx["dim"], fx["n"], fx["m"]) == (d, n, m):
            return name
    return "sequential"


def group_for_nm(ops: list[np.ndarray], n: int, m: int,
                 scheme: str = "sequential") -> list[list[int]]:
    """Partition basis indices into ``n`` groups of ``m - 1``."""
    if n < 1 or m < 2 or n * (m - 1) != len(ops):
        raise IncompatibleCounts(
            f"N(M-1) = {n}*({m}-1) does not match {len(ops)} basis operators")
    if scheme == "sequential":
        return [list(range(a * (m - 1), (a + 1) * (m - 1))) for a in range(n)]
    if scheme not in FIXTURES:
        raise UnknownFixture(f"unknown grouping scheme {scheme!r}")
    fx = FIXTURES[scheme]
    d = ops[0].shape[0]
    if (fx["dim"], fx["n"], fx["m"]) != (d, n, m):
        raise IncompatibleCounts(
            f"fixture {scheme} is for d={fx['dim']}, (N,M)=({fx['n']},{fx['m']})")
    return [list(g) for g in fx["groups"]]


@dataclass(frozen=True)
class HermitianOperatorBasis:
    dim: int
    ops: tuple
    grouping: tuple
    scheme: str = "sequential"

    @classmethod
    def for_nm(cls, d: int, n: int, m: int, scheme: str | None = None):
        ops = gell_mann(d)
        scheme = default_scheme(d, n, m) if scheme is None else scheme
        groups = group_for_nm(ops, n, m, scheme)
        for op in ops:
            op.setflags(write=False)
        return cls(d, tuple(ops), tuple(tuple(g) for g in groups), scheme)

    @property
    def n(self) -> int:
        return len(self.grouping)

    @property
    def m(self) -> int:
        return len(self.grouping[0]) + 1

    def group(self, alpha: int) -> list[np.ndarray]:
        """Operators G_{alpha,1..M-1} (0-based alpha)."""
        return [self.ops[i] for i in self.grouping[alpha]]
