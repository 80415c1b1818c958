"""Command line interface: ``tancone <command> ...``.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage error,
3 a computation exceeded its budget.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, fields
from typing import Optional

from .explorer import (
    FAIL,
    SCHEMA,
    heartbeat_to_stderr,
    random_semigroups,
    shift_scan,
    verify_conjecture_tilde,
    verify_conjecture_width,
)
from .families import FAMILIES, make_family, validate
from .groebner import Budget, BudgetExceeded, set_default_budget
from .polyalg import Grading
from .resolution import ResolutionError, minimal_free_resolution
from .semigroup import NumericalSemigroup
from .tangentcone import ConsistencyError, tangent_cone
from .toric import toric_ideal

EXIT_OK, EXIT_MATH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class CliConfig:
    degree_budget: int = 1000
    pair_budget: int = 500_000
    dmax_hilbert: int = 0  # 0 = automatic
    jobs: int = 0  # 0 = all cores
    format: str = "text"
    seed: int = 0
    scan_kmax: int = 0  # 0 = default window

    def __post_init__(self):
        for name in ("degree_budget", "pair_budget"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.format not in ("text", "json", "csv"):
            raise ValueError(f"unknown format {self.format!r}")

    def budget(self) -> Budget:
        return Budget(max_degree=self.degree_budget, max_pairs=self.pair_budget)

    def n_jobs(self) -> int:
        return self.jobs if self.jobs > 0 else (os.cpu_count() or 1)


def read_config_file(path: str) -> dict:
    """key=value lines; '#' starts a comment."""
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


def build_config(args) -> CliConfig:
    values = {}
    path = args.config or os.environ.get("TANCONE_CONFIG")
    if path:
        values.update(read_config_file(path))
    known = {f.name: f.type for f in fields(CliConfig)}
    unknown = set(values) - set(known)
    if unknown:
        raise ValueError(f"unknown config keys {sorted(unknown)}")
    for name in known:
        flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
    typed = {k: (v if k == "format" else int(v)) for k, v in values.items()}
    return CliConfig(**typed)


# --- output --------------------------------------------------------------------

def _text(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (int, str, bool)) for x in
                                                             (v if isinstance(v, list) else [None])):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            elif isinstance(v, list):
                lines.append(f"{pad}{k}: " + ", ".join(map(str, v)))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                lines.append(f"{pad}-")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


def _csv(obj) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])

    def walk(prefix, v):
        if isinstance(v, dict):
            for k, x in v.items():
                walk(f"{prefix}.{k}" if prefix else str(k), x)
        elif isinstance(v, list) and v and isinstance(v[0], (dict, list)):
            for i, x in enumerate(v):
                walk(f"{prefix}.{i}", x)
        elif isinstance(v, list):
            w.writerow([prefix, " ".join(map(str, v))])
        else:
            w.writerow([prefix, v])
    walk("", obj)
    return buf.getvalue()


def emit(obj: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    obj = {"schema": SCHEMA, **obj}
    if fmt == "json":
        out.write(json.dumps(obj, sort_keys=False) + "\n")
    elif fmt == "csv":
        out.write(_csv(obj))
    else:
        out.write(_text(obj) + "\n")


def emit_error(kind: str, message: str, fmt: str) -> None:
    if fmt == "json":
        sys.stderr.write(json.dumps({"schema": SCHEMA, "error": kind, "message": message}) + "\n")
    else:
        sys.stderr.write(f"error ({kind}): {message}\n")


# --- commands --------------------------------------------------------------------

def _semigroup(text: str) -> NumericalSemigroup:
    return NumericalSemigroup.parse(text)


def cmd_semigroup(args, cfg) -> tuple:
    H = _semigroup(args.gens)
    if args.shift:
        H = H.shift(args.shift)
    out = {"semigroup": list(H.generators), "gcd": H.gcd, "mu": H.mu, "width": H.width,
           "multiplicity": H.multiplicity}
    if H.gcd == 1:
        out.update(frobenius=H.frobenius_number(), symmetric=H.is_symmetric(),
                   apery=H.apery_set(H.multiplicity))
    out["interval_completion"] = list(H.interval_completion().generators)
    return out, EXIT_OK


def cmd_ideal(args, cfg) -> tuple:
    H = _semigroup(args.gens)
    I = toric_ideal(H, budget=cfg.budget())
    return {"semigroup": list(H.generators), "mu_I": len(I), "I_gens": [str(f) for f in I]}, EXIT_OK


def cmd_tangentcone(args, cfg) -> tuple:
    H = _semigroup(args.gens)
    tc = tangent_cone(H, strict_lex=args.strict_lex, dmax=cfg.dmax_hilbert or None, budget=cfg.budget())
    out = tc.to_json()
    out["mu_star"] = tc.mu_I_star
    out["hilbert_check"] = "pass"
    return out, EXIT_OK


def cmd_betti(args, cfg) -> tuple:
    H = _semigroup(args.gens)
    tc = tangent_cone(H, check_hilbert=False, budget=cfg.budget())
    if args.star:
        gens, grading, which = tc.star_gens, None, "I_star"
    else:
        gens, grading, which = tc.ideal, Grading(H.normalized().generators), "I"
    if not gens:
        return {"semigroup": list(H.generators), "ideal": which, "total": [1], "graded": {"0": {"0": 1}}}, EXIT_OK
    table = minimal_free_resolution(gens, grading, cfg.budget())
    return {"semigroup": list(H.generators), "ideal": which, **table.to_json()}, EXIT_OK


def cmd_family(args, cfg) -> tuple:
    params = {k: getattr(args, k) for k in ("e", "h", "a", "b", "a1", "d", "r") if getattr(args, k) is not None}
    exp = make_family(args.name, **params)
    rep = validate(exp, betti=args.betti, budget=cfg.budget())
    out = rep.to_json()
    out["verdict"] = "pass" if rep.ok else "fail"
    return out, EXIT_OK if rep.ok else EXIT_MATH


def cmd_scan(args, cfg) -> tuple:
    base = [int(x) for x in args.base.replace("<", "").replace(">", "").split(",") if x.strip()]
    kmax = args.kmax if args.kmax is not None else (cfg.scan_kmax or None)

    def progress(i, n):
        if i % 5 == 0 or i == n:
            heartbeat_to_stderr(f"scan {base}: {i}/{n} rows")
    rep = shift_scan(base, args.kmin, kmax, betti=args.betti, jobs=cfg.n_jobs(), budget=cfg.budget(),
                     progress=progress)
    if args.out:
        with open(args.out + ".jsonl", "w") as fh:
            fh.write(rep.to_jsonl())
        with open(args.out + ".csv", "w") as fh:
            fh.write(rep.to_csv())
    failed = any(v == FAIL for v in rep.verdicts.values())
    if cfg.format == "csv":
        sys.stdout.write(rep.to_csv())
        return None, EXIT_MATH if failed else EXIT_OK
    out = rep.summary()
    out.pop("schema")
    out["mu_star"] = [r.mu_I_star for r in rep.rows]
    out["cm"] = [r.cm for r in rep.rows]
    return out, EXIT_MATH if failed else EXIT_OK


def cmd_conjecture(args, cfg) -> tuple:
    if args.which == "width":
        rep = verify_conjecture_width(args.wmax, args.factor, betti=args.betti, jobs=cfg.n_jobs(),
                                      budget=cfg.budget(), heartbeat=heartbeat_to_stderr)
    else:
        if args.samples:
            samples = [NumericalSemigroup.parse(s) for s in args.samples.split(";") if s.strip()]
        else:
            samples = random_semigroups(args.random, args.max_gen, args.max_r, seed=cfg.seed)
        rep = verify_conjecture_tilde(samples, cfg.budget(), heartbeat=heartbeat_to_stderr)
    out = rep.to_json()
    out.pop("schema")
    if not args.items:
        out.pop("items")
    return out, EXIT_MATH if rep.violations else EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default=None)
    common.add_argument("--config", default=None, help="key=value file (also via TANCONE_CONFIG)")
    common.add_argument("--jobs", type=int, default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--degree-budget", dest="degree_budget", type=int, default=None)
    common.add_argument("--pair-budget", dest="pair_budget", type=int, default=None)
    common.add_argument("--dmax", dest="dmax_hilbert", type=int, default=None)

    p = _Parser(prog="tancone", description="Tangent cones of numerical semigroup rings.", parents=[common])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("semigroup", parents=[common], help="semigroup invariants")
    s.add_argument("action", choices=["info"])
    s.add_argument("gens")
    s.add_argument("--shift", type=int, default=0)
    s.set_defaults(func=cmd_semigroup)

    s = sub.add_parser("ideal", parents=[common], help="defining ideal I_H")
    s.add_argument("gens")
    s.set_defaults(func=cmd_ideal)

    s = sub.add_parser("tangentcone", parents=[common], help="I*, mu*, CM flag, Hilbert cross-check")
    s.add_argument("gens")
    s.add_argument("--strict-lex", action="store_true")
    s.set_defaults(func=cmd_tangentcone)

    s = sub.add_parser("betti", parents=[common], help="Betti numbers of S/I or S/I*")
    s.add_argument("gens")
    s.add_argument("--star", action="store_true")
    s.set_defaults(func=cmd_betti)

    s = sub.add_parser("family", parents=[common], help="validate a closed-form family instance")
    s.add_argument("name", choices=sorted(FAMILIES))
    for flag in ("e", "h", "a", "b", "a1", "d", "r"):
        s.add_argument(f"--{flag}", type=int, default=None)
    s.add_argument("--betti", action="store_true")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("scan", parents=[common], help="shifted-family scan")
    s.add_argument("--base", required=True)
    s.add_argument("--kmin", type=int, default=None)
    s.add_argument("--kmax", type=int, default=None)
    s.add_argument("--betti", action="store_true")
    s.add_argument("--out", default=None, help="write PREFIX.jsonl and PREFIX.csv")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("conjecture", parents=[common], help="conjecture checks")
    s.add_argument("which", choices=["width", "tilde"])
    s.add_argument("--wmax", type=int, default=3)
    s.add_argument("--factor", type=int, default=2, help="periods scanned past the onset")
    s.add_argument("--betti", action="store_true")
    s.add_argument("--samples", default=None, help="semicolon-separated list, e.g. '3,5,7;4,6,9'")
    s.add_argument("--random", type=int, default=20)
    s.add_argument("--max-gen", dest="max_gen", type=int, default=40)
    s.add_argument("--max-r", dest="max_r", type=int, default=5)
    s.add_argument("--items", action="store_true", help="include per-item records")
    s.set_defaults(func=cmd_conjecture)
    return p


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    fmt = "text"
    try:
        args = parser.parse_args(argv)
        cfg = build_config(args)
        fmt = cfg.format
        set_default_budget(cfg.budget())
        out, code = args.func(args, cfg)
        if out is not None:
            emit(out, fmt)
        return code
    except _UsageError as e:
        emit_error("usage", str(e), fmt)
        return EXIT_USAGE
    except BudgetExceeded as e:
        emit_error("budget", str(e), fmt)
        return EXIT_BUDGET
    except (ConsistencyError, ResolutionError, AssertionError) as e:
        emit_error("math", str(e), fmt)
        return EXIT_MATH
    except (ValueError, OSError) as e:
        emit_error("usage", str(e), fmt)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
