"""Isotropic qutrit states are detected exactly when they are entangled (q > 1/4)."""
from sepscope.scan import CriterionConfig, FamilySpec, find_threshold

family = FamilySpec("isotropic", params=(("d", 3),))
for crit, povm in [("thm1", (8, 2)), ("gsic", None), ("mum", None), ("ppt", None)]:
    res = find_threshold(family, CriterionConfig(crit, povm=povm, mu=2, nu=2, l=10))
    fit = "" if res.fit_slope is None else \
        f"  margin ~ {res.fit_slope:.4f} q {res.fit_intercept:+.4f}"
    print(f"{crit:5s} q* = {res.threshold:.6f}{fit}")
