"""Command-line front end.

    cdulab field --p 2 --n 6
    cdulab uniformity --p 2 --n 5 --construction gold --k 1 --c all
    cdulab verify paper-small.json --out reports.json
    cdulab sweep --p 2 --n 4 5 6 --construction gold --k 1 --c all

Exit codes: 0 pass, 1 claim or job failure, 2 config or hypothesis error,
3 engine error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import dsl
from .engine.cddt import DEFAULT_FULL_DDT_CAP, c_ddt, c_uniformity, default_workers
from .engine.walsh import nonlinearity
from .errors import ConfigError, CduError, EngineError
from .gf.field import DEFAULT_LOGTABLE_CAP, FieldCtx, divisors, field_from_json, make_field
from .verify.claims import parse_cset
from .verify.suite import run_suite

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_ENGINE = 0, 1, 2, 3
RANDOM_KINDS = {"random", "random_subfield", "random_affine", "kasami_modified"}


@dataclass
class RunConfig:
    workers: int = 1
    full_ddt_cap: int = DEFAULT_FULL_DDT_CAP
    logtable_cap: int = DEFAULT_LOGTABLE_CAP
    fmt: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.workers < 1:
            raise ConfigError("worker count must be >= 1")
        if self.full_ddt_cap <= 0 or self.logtable_cap <= 0:
            raise ConfigError("caps must be positive")


def _config(args) -> RunConfig:
    workers = args.workers if getattr(args, "workers", None) else default_workers()
    return RunConfig(workers=workers, full_ddt_cap=args.full_ddt_cap, logtable_cap=args.logtable_cap,
                     fmt=args.format or "json", seed=args.seed)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# field / construction parsing
# ---------------------------------------------------------------------------

def _parse_modulus(text):
    if text is None:
        return None
    try:
        return [int(c) for c in text.replace(" ", "").split(",")]
    except ValueError as exc:
        raise ConfigError(f"modulus must be comma-separated coefficients, low degree first: {text!r}") from exc


def field_from_args(args, cfg: RunConfig, n=None) -> FieldCtx:
    if getattr(args, "spec", None):
        try:
            obj = json.loads(Path(args.spec).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read field spec {args.spec}: {exc}") from exc
        return field_from_json(obj.get("field", obj), logtable_cap=cfg.logtable_cap)
    n = args.n if n is None else n
    if args.p is None or n is None:
        raise ConfigError("give --p and --n, or --spec")
    return make_field(args.p, n, _parse_modulus(args.modulus), logtable_cap=cfg.logtable_cap)


def _seeded(spec, seed: int):
    if isinstance(spec, dict):
        out = {k: _seeded(v, seed) for k, v in spec.items()}
        if out.get("kind") in RANDOM_KINDS and "seed" not in out:
            out["seed"] = seed
        return out
    if isinstance(spec, list):
        return [_seeded(v, seed) for v in spec]
    return spec


def construction_spec(text: str, k=None, s=None, alpha=None, d=None) -> dict:
    """A JSON object, a path, or a bare kind name completed from --k/--s/--alpha."""
    text = text.strip()
    if text.startswith("{") or Path(text).exists():
        return dsl.load_spec(text)
    spec = {"kind": text}
    for key, val in (("k", k), ("s", s), ("alpha", alpha), ("d", d)):
        if val is not None:
            spec[key] = val
    return spec


def _field_and_function(args, cfg: RunConfig, n=None, k=None, s=None, alpha=None):
    spec = construction_spec(args.construction, k, s, alpha, getattr(args, "d", None))
    spec = _seeded(spec, cfg.seed)
    if "field" in spec and not getattr(args, "spec", None) and args.p is None:
        ctx = dsl.spec_field(spec, logtable_cap=cfg.logtable_cap)
    else:
        ctx = field_from_args(args, cfg, n)
    return ctx, spec, dsl.build(ctx, spec)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def field_summary(ctx: FieldCtx) -> dict:
    return {
        "p": ctx.p,
        "n": ctx.n,
        "q": ctx.q,
        "modulus": list(ctx.modulus),
        "modulus_str": ctx.spec.modulus_str(),
        "generator": int(ctx.generator) if ctx.generator is not None else None,
        "subfields": divisors(ctx.n),
    }


def cmd_field(args) -> int:
    cfg = _config(args)
    info = field_summary(field_from_args(args, cfg))
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in info.items():
            w.writerow([k, " ".join(map(str, v)) if isinstance(v, list) else v])
        _emit(buf.getvalue(), args.out)
    else:
        _emit(json.dumps(info, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_uniformity(args) -> int:
    cfg = _config(args)
    ctx, spec, F = _field_and_function(args, cfg, k=args.k, s=args.s, alpha=args.alpha)
    cs = parse_cset(ctx, _cset_arg(args.c))
    profile = []
    for c in cs:
        rep = c_uniformity(F, c, workers=cfg.workers).to_json()
        if args.ddt:
            rep["ddt"] = c_ddt(F, c, full_cap=cfg.full_ddt_cap).counts.tolist()
        profile.append(rep)
    nl = nonlinearity(F) if args.walsh else None
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["c", "delta", "a0_excluded", "witness_rows", "first_witness"])
        for r in profile:
            first = "" if not r["witnesses"] else "{}:{}".format(*r["witnesses"][0])
            w.writerow([r["c"], r["delta"], int(r["a0_excluded"]), r["witness_rows"], first])
        _emit(buf.getvalue(), args.out)
    else:
        doc = {"field": ctx.spec.to_json(), "construction": spec, "profile": profile}
        if nl is not None:
            doc["nonlinearity"] = nl
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def _cset_arg(text: str):
    if text is None:
        return "all"
    if "," in text or text.isdigit():
        return [int(x) if x.strip().isdigit() else x.strip() for x in text.split(",") if x.strip()]
    return text


def cmd_verify(args) -> int:
    cfg = _config(args)
    reports = run_suite(args.suite, workers=cfg.workers, exploratory=args.exploratory)
    doc = [r.to_json() for r in reports]
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    failed = [r for r in reports if not r.passed and not r.exploratory]
    for r in reports:
        status = "PASS" if r.passed else ("EXPLORATORY-FAIL" if r.exploratory else "FAIL")
        print(f"{status} {r.claim} bound={r.bound} observed={r.observed} slack={r.slack}", file=sys.stderr)
        if not r.passed:
            print(f"  witnesses: {r.witnesses[:8]}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

SWEEP_AXES = ("construction", "n", "s", "k", "alpha")


def expand_grid(grid: dict) -> list[dict]:
    """Cartesian product over SWEEP_AXES in that order; scalars count as one-point axes."""
    axes = []
    for key in SWEEP_AXES:
        val = grid.get(key)
        vals = val if isinstance(val, list) else [val]
        axes.append((key, vals))
    points = []
    for combo in itertools.product(*(v for _, v in axes)):
        points.append({k: v for (k, _), v in zip(axes, combo)})
    return points


def _sweep_job(args):
    point, grid, cfg = args
    rows = []
    key = [point[k] if point[k] is not None else "" for k in SWEEP_AXES]
    key[0] = point["construction"] if isinstance(point["construction"], str) else json.dumps(point["construction"])
    try:
        ctx = make_field(grid["p"], point["n"], grid.get("modulus"), logtable_cap=cfg.logtable_cap)
        spec = point["construction"]
        spec = dict(spec) if isinstance(spec, dict) else {"kind": spec}
        for ax in ("s", "k", "alpha"):
            if point[ax] is not None:
                spec.setdefault(ax, point[ax])
        F = dsl.build(ctx, _seeded(spec, cfg.seed))
        for c in parse_cset(ctx, grid.get("c", "all")):
            rows.append(key + [c, c_uniformity(F, c).delta, "ok"])
    except CduError as exc:
        rows.append(key + ["", "", f"error:{type(exc).__name__}:{exc}"])
    return rows


def cmd_sweep(args) -> int:
    cfg = _config(args)
    if args.grid:
        grid = dsl.load_spec(args.grid)
    else:
        if args.p is None or not args.n or not args.construction:
            raise ConfigError("sweep needs --grid, or --p, --n and --construction")
        grid = {"p": args.p, "n": args.n, "construction": args.construction, "c": _cset_arg(args.c)}
        for ax in ("s", "k", "alpha"):
            val = getattr(args, ax)
            if val:
                grid[ax] = val
        if args.modulus:
            grid["modulus"] = _parse_modulus(args.modulus)
    if "p" not in grid:
        raise ConfigError("grid needs p")
    points = expand_grid(grid)
    if not points:
        raise ConfigError("grid expands to no jobs")
    jobs = [(pt, grid, cfg) for pt in points]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_sweep_job, jobs))
    else:
        results = [_sweep_job(j) for j in jobs]
    rows = [r for part in results for r in part]
    header = list(SWEEP_AXES) + ["c", "delta", "status"]
    if cfg.fmt == "json":
        doc = [dict(zip(header, r)) for r in rows]
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        _emit(buf.getvalue(), args.out)
    return EXIT_FAIL if any(r[-1] != "ok" for r in rows) else EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _int_or_str(v: str):
    return int(v) if v.lstrip("-").isdigit() else v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="characteristic")
    common.add_argument("--modulus", help="modulus coefficients, low degree first, e.g. 1,1,0,1")
    common.add_argument("--spec", help="field spec JSON file")
    common.add_argument("--workers", type=int, default=None, help="worker processes (default $CDU_WORKERS or 1)")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized constructions")
    common.add_argument("--full-ddt-cap", type=int, default=DEFAULT_FULL_DDT_CAP)
    common.add_argument("--logtable-cap", type=int, default=DEFAULT_LOGTABLE_CAP)

    ap = argparse.ArgumentParser(prog="cdulab", description="c-differential uniformity toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    f = sub.add_parser("field", parents=[common], help="print a field summary")
    f.add_argument("--n", type=int)
    f.set_defaults(func=cmd_field)

    u = sub.add_parser("uniformity", parents=[common], help="c-differential uniformity profile")
    u.add_argument("--n", type=int)
    u.add_argument("--construction", required=True, help="JSON spec, spec file, or kind name")
    u.add_argument("--c", default="all", help="all | ne1 | nonzero_ne1 | sub:d[:ne1] | comma list")
    u.add_argument("--s", type=int)
    u.add_argument("--k", type=int)
    u.add_argument("--d", type=int, help="exponent for --construction power")
    u.add_argument("--alpha", type=_int_or_str)
    u.add_argument("--ddt", action="store_true", help="include the full c-DDT (q <= --full-ddt-cap)")
    u.add_argument("--walsh", action="store_true", help="also report nonlinearity (p = 2)")
    u.set_defaults(func=cmd_uniformity)

    v = sub.add_parser("verify", parents=[common], help="run a claim suite")
    v.add_argument("suite", nargs="?", default="paper-small.json", help="suite file or bundled suite name")
    v.add_argument("--exploratory", action="store_true",
                   help="record hypothesis failures instead of stopping; such runs never fail")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("sweep", parents=[common], help="sweep a parameter grid, one row per (point, c)")
    w.add_argument("--grid", help="grid JSON or file")
    w.add_argument("--n", type=int, nargs="+")
    w.add_argument("--construction", nargs="+", help="kind names or JSON specs")
    w.add_argument("--s", type=int, nargs="+")
    w.add_argument("--k", type=int, nargs="+")
    w.add_argument("--alpha", type=_int_or_str, nargs="+")
    w.add_argument("--c", default="all")
    w.set_defaults(func=cmd_sweep, format_default="csv")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.format is None and getattr(args, "format_default", None):
        args.format = args.format_default
    if getattr(args, "construction", None) and isinstance(args.construction, list):
        args.construction = [dsl.load_spec(c) if c.strip().startswith("{") else c for c in args.construction]
    try:
        return args.func(args)
    except EngineError as exc:
        print(f"engine error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    except CduError as exc:
        print(f"config error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
