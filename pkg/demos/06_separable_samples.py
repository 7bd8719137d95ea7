"""Random separable states never violate any of the bounds."""
import numpy as np

from sepscope.criteria import (evaluate_p_only, evaluate_theorem1,
                               realignment_criterion, shi_q_matrix)
from sepscope.povm import cached_povm
from sepscope.states import random_separable

povms = [cached_povm(3, 8, 2, 0.01), cached_povm(3, 1, 9, 0.01), cached_povm(3, 4, 3, 0.05)]
margins = {"bordered": [], "plain": [], "Q realign": [], "realign": []}
for seed in range(200):
    rho = random_separable((3, 3), 1 + seed % 4, seed)
    p = povms[seed % 3]
    margins["bordered"].append(evaluate_theorem1(rho, p, p, 0.5, 1.5, 3).margin)
    margins["plain"].append(evaluate_p_only(rho, p, p).margin)
    margins["Q realign"].append(shi_q_matrix(rho, 1, 1).margin)
    margins["realign"].append(realignment_criterion(rho).margin)

for name, ms in margins.items():
    print(f"{name:10s} max margin {np.max(ms):+.3e}")
