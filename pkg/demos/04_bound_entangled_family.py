"""Horodecki's PPT family mixed with noise, compared with two realignment baselines.

The baseline border weights (alpha = beta = 2, l = 10) are an assumption.
"""
from sepscope.scan import CriterionConfig, FamilySpec, find_threshold

configs = {
    "symmetric (8,2)": CriterionConfig("thm1", povm=(8, 2), mu=2, nu=2, l=10),
    "Q^l realign":     CriterionConfig("sun", alpha=2, beta=2, l=10),
    "Q realign":       CriterionConfig("shi", alpha=2, beta=2),
}
print("upsilon  " + "  ".join(f"{k:>16s}" for k in configs))
for u in (0.2, 0.4, 0.6, 0.8, 0.9):
    family = FamilySpec("rho-y", 0.95, 1.0, (("upsilon", u),))
    row = [find_threshold(family, c).threshold for c in configs.values()]
    print(f"{u:7.1f}  " + "  ".join(f"{v:16.6f}" for v in row))
