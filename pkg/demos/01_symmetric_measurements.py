"""Build the three qutrit symmetric measurements and check their trace relations."""
import numpy as np

from sepscope.basis import HermitianOperatorBasis
from sepscope.povm import (NmPovmConfig, build_h_operators, build_povm,
                           t_range, validate_povm)

t = 0.01
for n, m in [(8, 2), (1, 9), (4, 3)]:
    basis = HermitianOperatorBasis.for_nm(3, n, m)
    lo, hi = t_range(build_h_operators(basis))
    povm = build_povm(NmPovmConfig(3, n, m, t), basis)
    report = validate_povm(povm)
    print(f"({n},{m}) {povm.kind:8s} scheme={basis.scheme:10s} "
          f"t in [{lo:+.4f}, {hi:+.4f}]  x={povm.x:.8f}  "
          f"bound factor={povm.bound_factor:.8f}  valid={report.ok}")

# Every group of outcomes sums to the identity.
povm = build_povm(NmPovmConfig(3, 4, 3, t))
print("max |sum_k E - I| =", np.abs(povm.operators.sum(axis=1) - np.eye(3)).max())
