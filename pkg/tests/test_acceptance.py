"""Acceptance suite: one test and one PASS/FAIL summary line per criterion.

Reproduction targets are compared at the stated absolute tolerances. A
criterion whose target cannot be met is left failing rather than loosened.
"""
import numpy as np
import pytest

from sepscope.basis import HermitianOperatorBasis
from sepscope.criteria import (augmented_matrix, corollary_bounds,
                               evaluate_bipartition, evaluate_p_only,
                               evaluate_theorem1, marginal_vector,
                               probability_matrix, probability_purity,
                               realignment_criterion, shi_q_matrix, sun_q_matrix,
                               theorem1_bound)
from sepscope.matcore import singular_values, trace_norm
from sepscope.povm import (NmPovmConfig, build_h_operators, build_povm,
                           cached_povm, efficiency_x, gsic_parameter,
                           mum_parameter, purity_bound, t_range, validate_povm)
from sepscope.scan import CriterionConfig, FamilySpec, find_threshold
from sepscope.states import random_separable, random_state
from tests.acceptance_log import record

T = 0.01
TOL = 1e-7
TILES = FamilySpec("tiles-noise")
RHO1 = FamilySpec("rho1")
ISO = FamilySpec("isotropic", params=(("d", 3),))
NM = {"8-2": (8, 2), "gsic": (1, 9), "mum": (4, 3)}


def ours(kind, mu, nu, l):
    crit = {"8-2": "thm1", "gsic": "gsic", "mum": "mum"}[kind]
    return CriterionConfig(crit, povm=NM[kind], t=T, mu=mu, nu=nu, l=l)


def baseline(kind):
    return CriterionConfig("p-only", povm=NM[kind], t=T)


def threshold(family, config):
    return find_threshold(family, config, tol=TOL).threshold


def check(label, items):
    """items: list of (name, value, target, tol); one summary line per criterion."""
    parts, ok = [], True
    for name, value, target, tol in items:
        good = abs(value - target) <= tol
        ok &= good
        parts.append(f"{name}={value:.6f} (target {target:.6f} +/-{tol:g}{'' if good else ' MISS'})")
    record(label, ok, "; ".join(parts))
    print(("PASS " if ok else "FAIL ") + label)
    assert ok, "; ".join(parts)


def check_flag(label, ok, detail):
    record(label, ok, detail)
    print(("PASS " if ok else "FAIL ") + label)
    assert ok, detail


# ---------------------------------------------------------------- quantitative

def test_criterion_01_tiles_82():
    check("criterion 1 (noisy Tiles, (8,2))", [
        ("thm1 p*", threshold(TILES, ours("8-2", 0.1, 0.05, 2)), 0.670093, 2e-3),
        ("baseline p*", threshold(TILES, baseline("8-2")), 0.882182, 2e-3),
    ])


def test_criterion_02_tiles_gsic():
    ours_thr = threshold(TILES, ours("gsic", 0.1, 0.05, 2))
    # either printed value is accepted; report against the closer one
    target = min((0.837993, 0.837933), key=lambda v: abs(v - ours_thr))
    check("criterion 2 (noisy Tiles, GSIC)", [
        ("gsic p*", ours_thr, target, 2e-3),
        ("baseline p*", threshold(TILES, baseline("gsic")), 0.882577, 2e-3),
    ])


def test_criterion_03_tiles_mum():
    check("criterion 3 (noisy Tiles, MUM)", [
        ("mum p*", threshold(TILES, ours("mum", 0.1, 0.05, 2)), 0.728219, 2e-3),
        ("baseline p*", threshold(TILES, baseline("mum")), 0.882178, 2e-3),
    ])


def test_criterion_04_rho1():
    items = []
    for kind, target in (("mum", 0.070740), ("gsic", 0.069089), ("8-2", 0.072155)):
        items.append((f"ours {kind} lambda*", threshold(RHO1, ours(kind, 0.005, 0.005, 1)),
                      target, 2e-3))
    for kind, target in (("mum", 0.069160), ("gsic", 0.068848), ("8-2", 0.069163)):
        items.append((f"baseline {kind} lambda*", threshold(RHO1, baseline(kind)), target, 2e-3))
    check("criterion 4 (rho1 family)", items)


def test_criterion_05_isotropic():
    items = []
    fits = {"8-2": (0.0032, -0.0008), "gsic": (0.0384, -0.0096), "mum": (0.0060, -0.0015)}
    for kind, (slope, intercept) in fits.items():
        res = find_threshold(ISO, ours(kind, 2, 2, 10), tol=TOL)
        items.append((f"{kind} q*", res.threshold, 0.25, 1e-4))
        items.append((f"{kind} slope", res.fit_slope, slope, 0.1 * abs(slope)))
        items.append((f"{kind} intercept", res.fit_intercept, intercept, 0.1 * abs(intercept)))
    check("criterion 5 (isotropic d=3)", items)


def test_criterion_06_horodecki():
    targets = {0.2: 0.994054, 0.4: 0.994609, 0.6: 0.99625, 0.8: 0.998122, 0.9: 0.9990664}
    items = []
    for u, target in targets.items():
        fam = FamilySpec("rho-y", 0.95, 1.0, (("upsilon", u),))
        items.append((f"y*(u={u})", threshold(fam, ours("8-2", 2, 2, 10)), target, 5e-4))
    check("criterion 6 (noisy Horodecki family, (8,2))", items)


def test_criterion_07_povm_parameter_facts():
    items = []
    lo, hi = t_range(build_h_operators(HermitianOperatorBasis.for_nm(3, 8, 2)))
    items += [("(8,2) t_min", lo, -0.2536, 1e-4), ("(8,2) t_max", hi, 0.2536, 1e-4)]
    for t in (0.002, T, 0.012):
        g = cached_povm(3, 1, 9, t)
        a_meas = float(np.mean(np.einsum("iab,iba->i", g.flat, g.flat).real))
        items.append((f"gsic a(t={t})", a_meas, 1 / 27 + 128 * t * t, 1e-10))
        m = cached_povm(3, 4, 3, t)
        k_meas = float(np.mean(np.einsum("iab,iba->i", m.flat, m.flat).real))
        items.append((f"mum kappa(t={t})", k_meas, 1 / 3 + 2 * t * t * (1 + np.sqrt(3)) ** 2,
                      1e-10))
    lo, hi = t_range(build_h_operators(HermitianOperatorBasis.for_nm(3, 4, 3)))
    items += [("mum t_min", lo, -0.0547, 1e-4), ("mum t_max", hi, 0.3454, 1e-4)]
    check("criterion 7 (POVM parameter facts)", items)


# ------------------------------------------------------------- property-based

CONFIGS = [(2, 3, 2), (2, 1, 4), (3, 8, 2), (3, 4, 3), (3, 1, 9), (4, 15, 2),
           (4, 5, 4), (4, 3, 6), (4, 1, 16), (5, 24, 2), (5, 6, 5), (5, 1, 25)]


def test_criterion_08_povm_validation():
    worst = {"relations": 0.0, "completeness": 0.0, "min_eig": np.inf}
    count, ok = 0, True
    for d, n, m in CONFIGS:
        lo, hi = t_range(build_h_operators(HermitianOperatorBasis.for_nm(d, n, m)))
        for t in [lo, 0.5 * lo, 0.0, 0.3 * hi, T if T <= hi else hi / 2, hi]:
            p = build_povm(NmPovmConfig(d, n, m, t), validate=False)
            rep = validate_povm(p, tol=1e-10)
            ok &= rep.ok
            count += 1
            rel = max(rep.residuals[k] for k in ("hermitian", "trace", "purity",
                                                  "same_group_overlap", "cross_group_overlap"))
            worst["relations"] = max(worst["relations"], rel)
            worst["completeness"] = max(worst["completeness"], rep.residuals["completeness"])
            worst["min_eig"] = min(worst["min_eig"], float(np.linalg.eigvalsh(p.flat).min()))
    ok &= worst["relations"] <= 1e-10 and worst["completeness"] <= 1e-12
    ok &= worst["min_eig"] >= -1e-10
    check_flag("criterion 8 (POVM validation)", ok,
               f"{count} POVMs; max relation residual {worst['relations']:.2e}, "
               f"max completeness {worst['completeness']:.2e}, min eigenvalue "
               f"{worst['min_eig']:.2e}")


def test_criterion_09_specialization():
    rng = np.random.default_rng(9)
    worst = 0.0
    for d in (2, 3, 4):
        for _ in range(200):
            t = rng.uniform(-0.01, 0.01)
            mu, nu = rng.uniform(-3, 3, 2)
            l = int(rng.integers(1, 11))
            a, k = gsic_parameter(d, t), mum_parameter(d, t)
            xg, xm = efficiency_x(d, d * d, t), efficiency_x(d, d, t)
            worst = max(worst,
                        abs(theorem1_bound(d, d * d, xg, d, d * d, xg, mu, nu, l)
                            - corollary_bounds("gsic", (d, a, d, a), mu, nu, l)),
                        abs(theorem1_bound(d, d, xm, d, d, xm, mu, nu, l)
                            - corollary_bounds("mum", (k, k), mu, nu, l)))
    check_flag("criterion 9 (bound specialization)", worst <= 1e-12,
               f"max |difference| {worst:.2e} over d in {{2,3,4}}, 600 draws")


def _random_povm(rng, kind):
    n, m = NM[kind]
    lo, hi = t_range(build_h_operators(HermitianOperatorBasis.for_nm(3, n, m)))
    t = float(np.round(rng.uniform(0.9 * lo, 0.9 * hi), 4))
    return cached_povm(3, n, m, t)


def test_criterion_10_soundness():
    rng = np.random.default_rng(10)
    draws = []
    for _ in range(20):
        kind = ["8-2", "gsic", "mum"][rng.integers(3)]
        draws.append((_random_povm(rng, kind), float(rng.uniform(-3, 3)),
                      float(rng.uniform(-3, 3)), int(rng.integers(1, 11))))
    pairs = [(float(rng.uniform(0, 3)), float(rng.uniform(0, 3)), int(rng.integers(1, 11)))
             for _ in range(3)]
    max_margin = {"thm1": -np.inf, "p-only": -np.inf, "shi": -np.inf, "sun": -np.inf,
                  "realign": -np.inf, "bipartition": -np.inf}
    for seed in range(1000):
        rho = random_separable((3, 3), 1 + seed % 4, seed, pure=seed % 2 == 0)
        for p, mu, nu, l in draws:
            max_margin["thm1"] = max(max_margin["thm1"],
                                     evaluate_theorem1(rho, p, p, mu, nu, l).margin)
        for p, _, _, _ in draws[:3]:
            max_margin["p-only"] = max(max_margin["p-only"], evaluate_p_only(rho, p, p).margin)
        for a, b, l in pairs:
            max_margin["shi"] = max(max_margin["shi"], shi_q_matrix(rho, a, b).margin)
            max_margin["sun"] = max(max_margin["sun"], sun_q_matrix(rho, a, b, l).margin)
        max_margin["realign"] = max(max_margin["realign"], realignment_criterion(rho).margin)
    qubit = [cached_povm(2, 3, 2, t) for t in (0.01, 0.1, 0.25)]
    for seed in range(200):
        rho = random_separable((2, 2, 2), 1 + seed % 4, 10_000 + seed, pure=seed % 2 == 0)
        p = qubit[seed % 3]
        for q in range(3):
            for mu, nu, l in ((0, 0, 1), (0.5, 1.5, 3)):
                max_margin["bipartition"] = max(
                    max_margin["bipartition"],
                    evaluate_bipartition(rho, [p] * 3, q, mu, nu, l).margin)
    ok = all(v <= 1e-9 for v in max_margin.values())
    check_flag("criterion 10 (soundness, 1000 bipartite + 200 tripartite)", ok,
               ", ".join(f"max {k} margin {v:.2e}" for k, v in max_margin.items()))


def test_criterion_11_oracles():
    rng = np.random.default_rng(11)
    worst_sv = 0.0
    for i in range(500):
        rows, cols = (82, int(rng.integers(1, 83))) if i % 50 == 0 else rng.integers(1, 30, 2)
        m = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
        worst_sv = max(worst_sv, abs(trace_norm(m, "svd") - trace_norm(m, "gram")))
    worst_border = 0.0
    povms = [cached_povm(3, *NM[k], T) for k in NM]
    for seed in range(100):
        rho = random_separable((3, 3), 3, seed) if seed % 2 else None
        rho_mat = rho.mat if rho is not None else random_state(9, rng)
        pa, pb = povms[seed % 3], povms[(seed // 3) % 3]
        p = probability_matrix(rho_mat, pa, pb)
        tau = marginal_vector(rng.standard_normal((3, 3)), pa)
        sigma = marginal_vector(rng.standard_normal((3, 3)), pb)
        l = int(rng.integers(1, 11))
        worst_border = max(worst_border,
                           abs(trace_norm(augmented_matrix(p, tau, sigma, 0, 0, l))
                               - trace_norm(p)))
    ok = worst_sv <= 1e-9 and worst_border <= 1e-10
    check_flag("criterion 11 (oracle equivalence)", ok,
               f"svd vs gram max diff {worst_sv:.2e} on 500 matrices; "
               f"zero-border vs P max diff {worst_border:.2e}")


def test_criterion_12_purity_bound():
    rng = np.random.default_rng(12)
    results = []
    ok = True
    for kind, (n, m) in NM.items():
        lo, hi = t_range(build_h_operators(HermitianOperatorBasis.for_nm(3, n, m)))
        povms = [cached_povm(3, n, m, t) for t in (T, lo, hi)]
        worst = -np.inf
        for i in range(1000):
            rho = random_state(3, rng, pure=i % 2 == 0)
            for p in povms:
                worst = max(worst, probability_purity(rho, p)
                            - purity_bound(p.dim, p.m, p.x))
        ok &= worst <= 1e-10
        results.append(f"{kind}: max(value - bound) {worst:.2e}")
    check_flag("criterion 12 (purity bound, 1000 states per kind)", ok, "; ".join(results))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v", "-s"]))
