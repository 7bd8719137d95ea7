"""Threshold scans over one-parameter state families and figure/table regeneration."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .basis import default_scheme
from .criteria import (CriterionVerdict, evaluate_corollary, evaluate_p_only,
                       evaluate_theorem1, ppt_criterion, realignment_criterion,
                       shi_q_matrix, sun_q_matrix)
from .errors import ConfigError, NoSignChange, ParamOutOfRange, UnknownKind
from .povm import cached_povm
from .states import FAMILIES, DensityMatrix, make_family

CRITERIA = ("thm1", "p-only", "gsic", "mum", "shi", "sun", "ppt", "realign")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    lo: float = 0.0
    hi: float = 1.0
    params: tuple = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParamOutOfRange(f"unknown family {self.family!r}")
        if not self.lo < self.hi:
            raise ParamOutOfRange(f"empty range [{self.lo}, {self.hi}]")

    @property
    def param_name(self) -> str:
        return FAMILIES[self.family][0]

    def state(self, value: float) -> DensityMatrix:
        return make_family(self.family, value, **dict(self.params))


@dataclass(frozen=True)
class CriterionConfig:
    """Which criterion to evaluate and with which measurement settings.

    ``povm`` is an ``(N, M)`` pair used on both sides; ``None`` picks the
    natural choice for the criterion (``(d^2-1, 2)`` for ``thm1``/``p-only``,
    ``(1, d^2)`` for ``gsic`` and ``(d+1, d)`` for ``mum``).
    """
    criterion: str = "thm1"
    povm: tuple | None = None
    povm_b: tuple | None = None
    t: float = 0.01
    scheme: str | None = None
    mu: float = 0.0
    nu: float = 0.0
    l: int = 1
    alpha: float = 2.0
    beta: float = 2.0

    def __post_init__(self):
        if self.criterion not in CRITERIA:
            raise UnknownKind(f"unknown criterion {self.criterion!r}")
        if int(self.l) != self.l or self.l < 1:
            raise ConfigError(f"l must be a positive integer, got {self.l}")

    def nm(self, d: int, side: str = "a") -> tuple:
        chosen = self.povm_b if side == "b" and self.povm_b else self.povm
        if chosen:
            return tuple(chosen)
        if self.criterion == "gsic":
            return (1, d * d)
        if self.criterion == "mum":
            return (d + 1, d)
        return (d * d - 1, 2)

    def metadata(self, d: int | None = None) -> dict:
        meta = {"criterion": self.criterion}
        if self.criterion in ("thm1", "p-only", "gsic", "mum"):
            scheme = self.scheme
            if scheme is None and d is not None:
                scheme = default_scheme(d, *self.nm(d))
            povm = self.povm or (self.nm(d) if d is not None else None)
            meta.update(povm=povm, povm_b=self.povm_b, t=self.t, scheme=scheme)
            if self.criterion != "p-only":
                meta.update(mu=self.mu, nu=self.nu, l=self.l)
        elif self.criterion in ("shi", "sun"):
            meta.update(alpha=self.alpha, beta=self.beta)
            if self.criterion == "sun":
                meta["l"] = self.l
        return meta


def evaluate(config: CriterionConfig, rho: DensityMatrix) -> CriterionVerdict:
    c = config.criterion
    if c == "shi":
        return shi_q_matrix(rho, config.alpha, config.beta)
    if c == "sun":
        return sun_q_matrix(rho, config.alpha, config.beta, config.l)
    if c == "ppt":
        return ppt_criterion(rho)
    if c == "realign":
        return realignment_criterion(rho)
    da, db = rho.dims
    na, ma = config.nm(da, "a")
    nb, mb = config.nm(db, "b")
    pa = cached_povm(da, na, ma, config.t, config.scheme)
    pb = cached_povm(db, nb, mb, config.t, config.scheme)
    if c == "p-only":
        return evaluate_p_only(rho, pa, pb)
    if c in ("gsic", "mum"):
        return evaluate_corollary(rho, pa, pb, config.mu, config.nu, config.l)
    return evaluate_theorem1(rho, pa, pb, config.mu, config.nu, config.l)


def scan_margin(family: FamilySpec, config: CriterionConfig, grid: int = 101) -> list:
    """Verdicts on an even grid over the family range, in parameter order."""
    if grid < 2:
        raise ConfigError("grid must have at least 2 points")
    values = np.linspace(family.lo, family.hi, grid)
    return [(float(v), evaluate(config, family.state(float(v)))) for v in values]


@dataclass
class ThresholdResult:
    criterion: dict
    family: dict
    threshold: float
    bracket: tuple
    direction: str
    brackets: list
    tol: float
    fit_slope: float | None = None
    fit_intercept: float | None = None
    fit_max_residual: float | None = None
    samples: list = field(default_factory=list, repr=False)

    def to_dict(self, with_samples: bool = False) -> dict:
        d = asdict(self)
        if not with_samples:
            d.pop("samples")
        return d


def _linear_fit(xs, ms):
    pos = [(x, m) for x, m in zip(xs, ms) if m > 0]
    if len(pos) < 2:
        return None, None, None
    x, m = np.array(pos).T
    slope, intercept = np.polyfit(x, m, 1)
    resid = float(np.max(np.abs(m - (slope * x + intercept))))
    return float(slope), float(intercept), resid


def find_threshold(family: FamilySpec, config: CriterionConfig, tol: float = 1e-7,
                   grid: int = 101) -> ThresholdResult:
    """Locate the lowest parameter where the criterion's margin changes sign.

    A coarse grid finds every sign change; the first bracket is refined by
    bisection until its width is at most ``tol``.
    """
    samples = scan_margin(family, config, grid)
    xs = [x for x, _ in samples]
    ms = [v.margin for _, v in samples]
    pos = [m > 0 for m in ms]
    brackets = [(xs[i], xs[i + 1]) for i in range(len(xs) - 1) if pos[i] != pos[i + 1]]
    if not brackets:
        always = all(pos)
        what = "always detects" if always else "never detects"
        raise NoSignChange(f"{config.criterion} {what} on {family.family} "
                           f"[{family.lo}, {family.hi}]", always_detects=always)
    a, b = brackets[0]
    i = xs.index(a)
    pos_a = pos[i]
    direction = "detects-above" if not pos_a else "detects-below"

    def margin(v):
        return evaluate(config, family.state(v)).margin

    while b - a > tol:
        mid = (a + b) / 2
        if (margin(mid) > 0) == pos_a:
            a = mid
        else:
            b = mid
    slope, intercept, resid = _linear_fit(xs, ms)
    return ThresholdResult(
        criterion=config.metadata(family.state(family.lo).dims[0]),
        family={"family": family.family, "lo": family.lo, "hi": family.hi,
                "param": family.param_name, **dict(family.params)},
        threshold=(a + b) / 2, bracket=(a, b), direction=direction,
        brackets=brackets, tol=tol, fit_slope=slope, fit_intercept=intercept,
        fit_max_residual=resid,
        samples=[(x, v.lhs, v.rhs, v.margin, v.detected) for x, v in samples])


# ---------------------------------------------------------------------------
# Reproduction of the worked examples

@dataclass(frozen=True)
class Curve:
    name: str
    family: FamilySpec
    config: CriterionConfig
    note: str = ""


def _ours(kind, mu, nu, l, t=0.01):
    crit = {"8-2": "thm1", "gsic": "gsic", "mum": "mum"}[kind]
    povm = (8, 2) if kind == "8-2" else None
    return CriterionConfig(crit, povm=povm, t=t, mu=mu, nu=nu, l=l)


def _baseline(kind, t=0.01):
    povm = {"8-2": (8, 2), "gsic": (1, 9), "mum": (4, 3)}[kind]
    return CriterionConfig("p-only", povm=povm, t=t)


ASSUMED = "alpha=beta=2 (l=10 for sun) assumed; not stated in the source"
UPSILONS = (0.2, 0.4, 0.6, 0.8, 0.9)


def reproduction_curves(target: str) -> list[Curve]:
    tiles = FamilySpec("tiles-noise")
    rho1 = FamilySpec("rho1")
    iso = FamilySpec("isotropic", params=(("d", 3),))
    if target == "example1":
        out = []
        for i, kind in enumerate(("8-2", "gsic", "mum"), start=1):
            out.append(Curve(f"f{i}", tiles, _ours(kind, 0.1, 0.05, 2)))
            out.append(Curve(f"g{i}", tiles, _baseline(kind)))
        return out
    if target in ("example2", "table3"):
        out = []
        for kind in ("mum", "gsic", "8-2"):
            out.append(Curve(f"ours-{kind}", rho1, _ours(kind, 0.005, 0.005, 1)))
            out.append(Curve(f"trace-norm-{kind}", rho1, _baseline(kind)))
        return out
    if target == "example3":
        return [Curve(f"f{i}", iso, _ours(kind, 2, 2, 10))
                for i, kind in zip((4, 5, 6), ("8-2", "gsic", "mum"))]
    if target == "example4":
        fam = FamilySpec("rho-y", 0.98, 1.0, (("upsilon", 0.2),))
        return [Curve("f7", fam, _ours("8-2", 2, 2, 10)),
                Curve("h1", fam, CriterionConfig("sun", alpha=2, beta=2, l=10), ASSUMED),
                Curve("h2", fam, CriterionConfig("shi", alpha=2, beta=2), ASSUMED)]
    if target == "table2":
        out = []
        for u in UPSILONS:
            fam = FamilySpec("rho-y", 0.95, 1.0, (("upsilon", u),))
            out.append(Curve(f"ours-u{u}", fam, _ours("8-2", 2, 2, 10)))
            out.append(Curve(f"sun-u{u}", fam,
                             CriterionConfig("sun", alpha=2, beta=2, l=10), ASSUMED))
            out.append(Curve(f"shi-u{u}", fam,
                             CriterionConfig("shi", alpha=2, beta=2), ASSUMED))
        return out
    raise ConfigError(f"unknown reproduction target {target!r}")


TARGETS = ("example1", "example2", "example3", "example4", "table2", "table3")
_CURVE_TARGETS = ("example1", "example2", "example3", "example4")


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    return repr(float(v))


def write_curve_csv(path: Path, samples, header: dict) -> None:
    lines = [f"# {k}: {json.dumps(v, sort_keys=True)}" for k, v in header.items()]
    lines.append("param,lhs,rhs,margin,detected")
    for row in samples:
        lines.append(",".join(_fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def reproduce(target: str, out_dir, tol: float = 1e-7, grid: int = 101) -> dict:
    """Regenerate curves (CSV) and thresholds (JSON) for one example or table."""
    curves = reproduction_curves(target)
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create {out}: {exc}") from exc
    summary = {"target": target, "version": __version__, "tol": tol, "results": []}
    for c in curves:
        entry = {"name": c.name, "note": c.note}
        try:
            res = find_threshold(c.family, c.config, tol=tol, grid=grid)
            entry.update(res.to_dict())
            samples = res.samples
        except NoSignChange as exc:
            entry.update(error=str(exc), always_detects=exc.always_detects,
                         criterion=c.config.metadata(3))
            samples = [(x, v.lhs, v.rhs, v.margin, v.detected)
                       for x, v in scan_margin(c.family, c.config, grid)]
        summary["results"].append(entry)
        if target in _CURVE_TARGETS:
            header = {"target": target, "curve": c.name, "version": __version__,
                      "family": c.family.family, "range": [c.family.lo, c.family.hi],
                      "family_params": dict(c.family.params), **c.config.metadata(3)}
            if c.note:
                header["note"] = c.note
            write_curve_csv(out / f"{target}_{c.name}.csv", samples, header)
    (out / f"{target}_thresholds.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return summary
