"""JSON construction specs -> FunctionTable.

A spec is a dict with a ``kind`` key, optionally a ``field`` key
({"p", "n", "modulus"?}).  Nested pieces are specs themselves.  Elements may be
written as an integer index, ``"g^e"`` (power of the primitive element), or
``"sub(s,i)"`` (the i-th element, in index order, of GF(p^s)).
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from . import constructions as cons
from .errors import ConfigError
from .func import FunctionTable, affine_map, compose, from_poly, identity, load_table
from .gf.field import FieldCtx, field_from_json
from .gf.linearized import DualProjection, LinearizedPoly
from .gf.subfield import SubfieldView

_POW = re.compile(r"^g\^(-?\d+)$")
_SUB = re.compile(r"^sub\((\d+),\s*(\d+)\)$")


def parse_element(ctx: FieldCtx, v) -> int:
    if isinstance(v, bool):
        raise ConfigError(f"bad element {v!r}")
    if isinstance(v, (int, np.integer)):
        if not 0 <= int(v) < ctx.q:
            raise ConfigError(f"element {v} outside GF({ctx.p}^{ctx.n})")
        return int(v)
    if isinstance(v, str):
        v = v.strip()
        if v.isdigit():
            return parse_element(ctx, int(v))
        m = _POW.match(v)
        if m:
            return int(ctx.pow(ctx.generator, int(m.group(1))))
        m = _SUB.match(v)
        if m:
            s, i = int(m.group(1)), int(m.group(2))
            elems = ctx.subfield_elements(s)
            if i >= len(elems):
                raise ConfigError(f"GF({ctx.p}^{s}) has only {len(elems)} elements")
            return int(elems[i])
    raise ConfigError(f"cannot parse element {v!r}")


def load_spec(src) -> dict:
    """Accept a dict, a JSON string, or a path to a JSON file."""
    if isinstance(src, dict):
        return src
    if isinstance(src, (str, Path)):
        text = str(src)
        if not text.lstrip().startswith("{"):
            path = Path(text)
            if not path.exists():
                raise ConfigError(f"no such construction file: {path}")
            text = path.read_text()
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid construction json: {exc}") from exc
        if not isinstance(obj, dict):
            raise ConfigError("construction spec must be a JSON object")
        return obj
    raise ConfigError(f"unsupported construction source {type(src).__name__}")


def spec_field(spec: dict, default: FieldCtx | None = None, logtable_cap: int | None = None) -> FieldCtx:
    if "field" in spec:
        kw = {} if logtable_cap is None else {"logtable_cap": logtable_cap}
        return field_from_json(spec["field"], **kw)
    if default is None:
        raise ConfigError("construction has no field and none was given")
    return default


def _need(spec: dict, *keys):
    for k in keys:
        if k not in spec:
            raise ConfigError(f"{spec.get('kind')!r} spec needs {k!r}")


def _rng(spec: dict):
    return np.random.default_rng(int(spec.get("seed", 0)))


def build(ctx: FieldCtx, spec: dict) -> FunctionTable:
    spec = load_spec(spec)
    kind = spec.get("kind")
    sub = lambda key: build(ctx, spec[key])  # noqa: E731
    el = lambda v: parse_element(ctx, v)  # noqa: E731

    if kind == "identity":
        return identity(ctx)
    if kind == "power":
        _need(spec, "d")
        return cons.power_map(ctx, int(spec["d"]))
    if kind == "gold":
        _need(spec, "k")
        return cons.gold(ctx, int(spec["k"]))
    if kind == "kasami":
        _need(spec, "k")
        return cons.kasami(ctx, int(spec["k"]))
    if kind == "inverse":
        return cons.inverse_perm(ctx)
    if kind == "poly":
        _need(spec, "terms")
        terms: dict[int, int] = {}
        for e, c in spec["terms"]:
            e = int(e)
            terms[e] = int(ctx.add(terms.get(e, 0), el(c)))
        return from_poly(ctx, terms).with_meta(kind="poly")
    if kind == "affine":
        _need(spec, "coeffs")
        L = LinearizedPoly(ctx, tuple(el(c) for c in spec["coeffs"]), int(spec.get("r", 1)))
        return affine_map(L, el(spec.get("const", 0)), require_bijective=bool(spec.get("bijective", False)))
    if kind == "random_affine":
        _need(spec, "s")
        return cons.random_affine_perm(SubfieldView(ctx, int(spec["s"])), _rng(spec))
    if kind == "compose":
        _need(spec, "outer", "inner")
        return compose(sub("outer"), sub("inner"))
    if kind == "piecewise2":
        _need(spec, "s", "f", "g")
        return cons.piecewise_two(sub("f"), sub("g"), int(spec["s"]))
    if kind == "piecewise3":
        _need(spec, "s", "t", "f", "g", "h")
        return cons.piecewise_three(sub("f"), sub("g"), sub("h"), int(spec["s"]), int(spec["t"]))
    if kind == "chain":
        _need(spec, "pieces")
        pieces = [(int(pc["k"]), build(ctx, pc["f"])) for pc in spec["pieces"]]
        return cons.piecewise_chain(cons.PieceSpec(pieces))
    if kind == "gold_shift":
        _need(spec, "s", "k", "alpha")
        return cons.gold_shift(ctx, int(spec["s"]), int(spec["k"]), el(spec["alpha"]))
    if kind == "kasami_modified":
        _need(spec, "s", "k")
        s = int(spec["s"])
        if "A1" in spec and "A2" in spec:
            A1, A2 = sub("A1"), sub("A2")
        else:
            view, rng = SubfieldView(ctx, s), _rng(spec)
            A1, A2 = cons.random_affine_perm(view, rng), cons.random_affine_perm(view, rng)
        return cons.kasami_modified(ctx, s, int(spec["k"]), A1, A2)
    if kind == "concat":
        _need(spec, "base", "fs")
        base = SubfieldView(ctx, int(spec["base"]))
        beta = spec.get("beta")
        if beta is None:
            beta = SubfieldView(ctx, int(spec["base"])).basis if base.m > 1 else (1,)
        proj = DualProjection(ctx, base, [el(b) for b in beta])
        return cons.concat(proj, [build(ctx, f) for f in spec["fs"]])
    if kind == "table":
        _need(spec, "values")
        return FunctionTable(ctx, spec["values"], {"kind": "table"})
    if kind == "table_file":
        _need(spec, "path")
        return load_table(spec["path"], ctx)
    if kind == "random":
        return cons.random_table(ctx, _rng(spec))
    if kind == "random_subfield":
        _need(spec, "s")
        return cons.random_subfield_closed(SubfieldView(ctx, int(spec["s"])), _rng(spec))
    raise ConfigError(f"unknown construction kind {kind!r}")


def build_spec(src, default: FieldCtx | None = None) -> FunctionTable:
    spec = load_spec(src)
    return build(spec_field(spec, default), spec)
