"""Noisy Tiles state: where each criterion starts to detect entanglement."""
from sepscope.scan import CriterionConfig, FamilySpec, find_threshold
from sepscope.states import ppt_min_eigenvalue, tiles_state

print(f"Tiles state PT min eigenvalue: {ppt_min_eigenvalue(tiles_state()):+.2e}")

family = FamilySpec("tiles-noise")  # (1-p) I/9 + p rho_tiles
for label, crit, povm in [("(8,2)", "thm1", (8, 2)), ("GSIC", "gsic", None),
                          ("MUM", "mum", None)]:
    bordered = find_threshold(family, CriterionConfig(crit, povm=povm, mu=0.1, nu=0.05, l=2))
    plain = find_threshold(family, CriterionConfig("p-only", povm=povm or
                                                   {"gsic": (1, 9), "mum": (4, 3)}[crit]))
    print(f"{label:6s} bordered p* = {bordered.threshold:.6f}   "
          f"plain p* = {plain.threshold:.6f}   "
          f"plain fit {plain.fit_slope:.6f} p {plain.fit_intercept:+.6f}")
