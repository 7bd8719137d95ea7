"""Command-line interface.

Exit codes: 0 success, 2 invalid configuration, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .basis import HermitianOperatorBasis
from .errors import ConfigError, NumericalError
from .io import (basis_to_json, density_from_json, density_to_json, dump_json,
                 load_json, povm_from_json, povm_to_json)
from .povm import NmPovmConfig, build_povm, validate_povm
from .scan import (CRITERIA, TARGETS, CriterionConfig, FamilySpec, evaluate,
                   find_threshold, reproduce, write_curve_csv)
from .states import FAMILIES, make_family, ppt_min_eigenvalue


def _nm(text: str) -> tuple:
    try:
        n, m = (int(v) for v in text.replace("x", ",").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N,M, got {text!r}") from None
    return n, m


def _kv(items) -> dict:
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"expected key=value, got {item!r}")
        out[key.strip()] = float(value)
    return out


def _emit(obj, out=None):
    text = dump_json(obj, out)
    if out is None:
        print(text)


def _criterion_args(p):
    p.add_argument("--criterion", choices=CRITERIA, default="thm1")
    p.add_argument("--povm", "--povm-a", dest="povm", type=_nm, default=None,
                   help="N,M of the local POVM (both sides unless --povm-b)")
    p.add_argument("--povm-b", type=_nm, default=None)
    p.add_argument("--scheme", default=None, help="basis grouping (sequential or fixture)")
    p.add_argument("--t", type=float, default=0.01)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--nu", type=float, default=0.0)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--beta", type=float, default=2.0)


def _criterion_config(a) -> CriterionConfig:
    return CriterionConfig(a.criterion, povm=a.povm, povm_b=a.povm_b, t=a.t,
                           scheme=a.scheme, mu=a.mu, nu=a.nu, l=a.l,
                           alpha=a.alpha, beta=a.beta)


def cmd_scan(a):
    params = _kv(a.param)
    if "d" in params:
        params["d"] = int(params["d"])
    fam = FamilySpec(a.family, a.lo, a.hi, tuple(sorted(params.items())))
    res = find_threshold(fam, _criterion_config(a), tol=a.tol, grid=a.grid)
    if a.csv:
        write_curve_csv(a.csv, res.samples, {"version": __version__, **res.criterion,
                                             "family": res.family})
    _emit(res.to_dict(), a.out)


def cmd_reproduce(a):
    summary = reproduce(a.target, a.out, tol=a.tol, grid=a.grid)
    for r in summary["results"]:
        thr = r.get("threshold")
        shown = f"{thr:.6f}" if thr is not None else r.get("error")
        print(f"{a.target:9s} {r['name']:16s} {shown}")


def cmd_povm_build(a):
    basis = HermitianOperatorBasis.for_nm(a.dim, a.n, a.m, a.scheme)
    p = build_povm(NmPovmConfig(a.dim, a.n, a.m, a.t), basis)
    _emit(povm_to_json(p), a.out)


def cmd_povm_validate(a):
    p = povm_from_json(load_json(a.infile))
    report = validate_povm(p, a.tol)
    _emit(report.to_dict())
    return 0 if report.ok else 3


def cmd_state_make(a):
    params = _kv(a.param)
    name = FAMILIES[a.family][0]
    if name not in params:
        raise ConfigError(f"family {a.family} needs parameter {name}=<value>")
    value = params.pop(name)
    if "d" in params:
        params["d"] = int(params["d"])
    _emit(density_to_json(make_family(a.family, value, **params)), a.out)


def cmd_state_check(a):
    rho = density_from_json(load_json(a.infile))
    ev = rho.eigenvalues()
    info = {"dims": list(rho.dims), "trace": float(rho.mat.trace().real),
            "min_eigenvalue": float(ev[0]), "rank": rho.rank(), "purity": rho.purity()}
    if len(rho.dims) == 2:
        lam = ppt_min_eigenvalue(rho)
        info.update(ppt_min_eigenvalue=lam, ppt=bool(lam >= -1e-10))
    _emit(info)


def cmd_criterion_eval(a):
    rho = density_from_json(load_json(a.state))
    _emit(evaluate(_criterion_config(a), rho).to_dict(), a.out)


def cmd_basis_dump(a):
    n, m = a.nm if a.nm else (a.dim ** 2 - 1, 2)
    _emit(basis_to_json(HermitianOperatorBasis.for_nm(a.dim, n, m, a.scheme)), a.out)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sepscope", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"sepscope {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="find a detection threshold over a state family")
    p.add_argument("--family", choices=sorted(FAMILIES), required=True)
    p.add_argument("--param", action="append", help="fixed family parameter, e.g. upsilon=0.2")
    p.add_argument("--lo", type=float, default=0.0)
    p.add_argument("--hi", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--csv", default=None, help="also write the sampled curve")
    p.add_argument("--out", default=None)
    _criterion_args(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("reproduce", help="regenerate an example or table as CSV/JSON")
    p.add_argument("target", choices=TARGETS)
    p.add_argument("--out", required=True)
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--grid", type=int, default=101)
    p.set_defaults(func=cmd_reproduce)

    povm = sub.add_parser("povm").add_subparsers(dest="action", required=True)
    p = povm.add_parser("build")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=float, default=0.01)
    p.add_argument("--scheme", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_povm_build)
    p = povm.add_parser("validate")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_povm_validate)

    state = sub.add_parser("state").add_subparsers(dest="action", required=True)
    p = state.add_parser("make")
    p.add_argument("--family", choices=sorted(FAMILIES), required=True)
    p.add_argument("--params", "--param", dest="param", nargs="+", action="extend",
                   help="key=value pairs, e.g. q=0.5 d=3")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_state_make)
    p = state.add_parser("check")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_state_check)

    crit = sub.add_parser("criterion").add_subparsers(dest="action", required=True)
    p = crit.add_parser("eval")
    p.add_argument("--state", required=True)
    p.add_argument("--out", default=None)
    _criterion_args(p)
    p.set_defaults(func=cmd_criterion_eval)

    basis = sub.add_parser("basis").add_subparsers(dest="action", required=True)
    p = basis.add_parser("dump")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--nm", type=_nm, default=None, help="N,M grouping (default d^2-1,2)")
    p.add_argument("--scheme", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_basis_dump)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rc = args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
