"""Single out one qubit of a three-qubit state and test it against the other two."""
import numpy as np

from sepscope.criteria import evaluate_bipartition
from sepscope.povm import NmPovmConfig, build_povm
from sepscope.states import DensityMatrix, random_separable

povm = build_povm(NmPovmConfig(2, 3, 2, 0.1))

ghz = np.zeros(8)
ghz[[0, 7]] = 1 / np.sqrt(2)
rho = DensityMatrix(np.outer(ghz, ghz), (2, 2, 2))
for q in range(3):
    v = evaluate_bipartition(rho, [povm] * 3, q)
    print(f"GHZ, qubit {q} | rest: margin {v.margin:+.6f} detected={v.detected}")

worst = max(evaluate_bipartition(random_separable((2, 2, 2), 4, s), [povm] * 3, q).margin
            for s in range(50) for q in range(3))
print(f"largest margin over 50 fully separable samples: {worst:+.2e}")
