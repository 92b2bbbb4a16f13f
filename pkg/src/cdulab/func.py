"""(n,n)-functions as value tables, and their univariate polynomial view."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np

from . import kernels
from .errors import ConfigError, DomainTooLarge, MixedFields, NonBijectiveAffine
from .gf.field import FieldCtx, FieldSpec, field_from_json
from .gf.linearized import LinearizedPoly, eval_linearized

DEFAULT_INTERP_CAP = 1 << 12


class FunctionTable:
    """Values F(x) for every x, indexed by element index.  The value array is read-only."""

    __slots__ = ("ctx", "values", "meta")

    def __init__(self, ctx: FieldCtx, values, meta: Mapping | None = None):
        vals = np.array(values, dtype=np.int64)
        if vals.shape != (ctx.q,):
            raise ConfigError(f"table must have {ctx.q} entries, got shape {vals.shape}")
        if vals.size and (vals.min() < 0 or vals.max() >= ctx.q):
            raise ConfigError("table value outside the field")
        vals.setflags(write=False)
        self.ctx = ctx
        self.values = vals
        self.meta = dict(meta or {})

    def __call__(self, x):
        out = self.values[np.asarray(x, dtype=np.int64)]
        return int(out) if np.ndim(out) == 0 else out

    def __len__(self):
        return self.ctx.q

    def __eq__(self, other):
        return (isinstance(other, FunctionTable) and other.ctx == self.ctx
                and np.array_equal(other.values, self.values))

    def __repr__(self):
        name = self.meta.get("kind", "table")
        return f"FunctionTable({name} over {self.ctx})"

    def with_meta(self, **meta) -> "FunctionTable":
        return FunctionTable(self.ctx, self.values, {**self.meta, **meta})


@dataclass
class UnivariatePoly:
    """Dense coefficients a_0..a_{q-1}; a[i] multiplies x^i."""

    ctx: FieldCtx
    coeffs: np.ndarray = field(default=None)

    def __post_init__(self):
        q = self.ctx.q
        if self.coeffs is None:
            self.coeffs = np.zeros(q, dtype=np.int64)
        c = np.asarray(self.coeffs, dtype=np.int64)
        if c.size > q:
            c = _reduce_exponents(self.ctx, c)
        full = np.zeros(q, dtype=np.int64)
        full[: c.size] = c
        self.coeffs = full

    @classmethod
    def from_terms(cls, ctx: FieldCtx, terms: Mapping[int, int]) -> "UnivariatePoly":
        poly = cls(ctx)
        for e, c in terms.items():
            poly = poly + cls.monomial(ctx, int(e), int(c))
        return poly

    @classmethod
    def monomial(cls, ctx: FieldCtx, e: int, c: int = 1) -> "UnivariatePoly":
        coeffs = np.zeros(ctx.q, dtype=np.int64)
        coeffs[_reduced_exponent(ctx.q, e)] = c
        return cls(ctx, coeffs)

    @classmethod
    def constant(cls, ctx: FieldCtx, c: int) -> "UnivariatePoly":
        return cls.monomial(ctx, 0, c)

    def terms(self) -> dict[int, int]:
        nz = np.flatnonzero(self.coeffs)
        return {int(i): int(self.coeffs[i]) for i in nz}

    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else -1

    def __eq__(self, other):
        return isinstance(other, UnivariatePoly) and self.ctx == other.ctx and np.array_equal(self.coeffs, other.coeffs)

    def __add__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        return UnivariatePoly(self.ctx, self.ctx.add(self.coeffs, other.coeffs))

    def __sub__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        return UnivariatePoly(self.ctx, self.ctx.sub(self.coeffs, other.coeffs))

    def __mul__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        """Product modulo x^q - x."""
        ctx = self.ctx
        q = ctx.q
        out = np.zeros(q, dtype=np.int64)
        js = np.arange(q)
        for i in np.flatnonzero(self.coeffs):
            row = ctx.mul(int(self.coeffs[i]), other.coeffs)
            e = i + js
            # exponents >= q fold back onto [1, q-1]; the two halves never collide internally
            low = e < q
            out[e[low]] = ctx.add(out[e[low]], row[low])
            hi = ~low
            out[e[hi] - (q - 1)] = ctx.add(out[e[hi] - (q - 1)], row[hi])
        return UnivariatePoly(ctx, out)

    def __pow__(self, e: int) -> "UnivariatePoly":
        result = UnivariatePoly.constant(self.ctx, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


def _reduced_exponent(q: int, e: int) -> int:
    if e < q:
        return e
    return (e - 1) % (q - 1) + 1


def _reduce_exponents(ctx: FieldCtx, c: np.ndarray) -> np.ndarray:
    out = np.zeros(ctx.q, dtype=np.int64)
    for e in np.flatnonzero(c):
        r = _reduced_exponent(ctx.q, int(e))
        out[r] = ctx.add(int(out[r]), int(c[e]))
    return out


def eval_poly(poly: UnivariatePoly, x):
    """Evaluate at the points x (sum over the nonzero terms)."""
    ctx = poly.ctx
    x = np.asarray(x, dtype=np.int64)
    acc = np.zeros_like(x)
    for e, c in poly.terms().items():
        acc = ctx.add(acc, ctx.mul(c, ctx.pow(x, e)))
    return acc


def from_poly(ctx: FieldCtx, poly: UnivariatePoly | Mapping[int, int]) -> FunctionTable:
    if not isinstance(poly, UnivariatePoly):
        poly = UnivariatePoly.from_terms(ctx, poly)
    if poly.ctx != ctx:
        raise MixedFields("polynomial over a different field")
    return FunctionTable(ctx, eval_poly(poly, ctx.elements()), {"kind": "poly", "terms": poly.terms()})


def interpolate(F: FunctionTable, cap: int = DEFAULT_INTERP_CAP) -> UnivariatePoly:
    """The unique polynomial of degree < q through the table.

    Uses the full-domain Lagrange closed form: a_0 = F(0),
    a_i = -sum_{x != 0} F(x) x^{-i} for 0 < i < q-1, a_{q-1} = -sum_x F(x).
    """
    ctx = F.ctx
    q = ctx.q
    if q > cap:
        raise DomainTooLarge(f"interpolation over {q} points exceeds cap {cap}")
    vals = F.values
    coeffs = np.zeros(q, dtype=np.int64)
    coeffs[0] = vals[0]
    xs = np.arange(1, q, dtype=np.int64)
    fx = vals[1:]
    chunk = max(1, (1 << 22) // q)
    for lo in range(1, q - 1, chunk):
        i = np.arange(lo, min(q - 1, lo + chunk), dtype=np.int64)[:, None]
        terms = ctx.mul(fx[None, :], _pow_neg(ctx, xs, i))
        coeffs[i[:, 0]] = ctx.neg(ctx.sum(terms, axis=1))
    coeffs[q - 1] = ctx.neg(ctx.sum(vals))
    return UnivariatePoly(ctx, coeffs)


def _pow_neg(ctx: FieldCtx, xs: np.ndarray, i: np.ndarray) -> np.ndarray:
    """xs^{-i} for a column of exponents i (xs nonzero)."""
    if ctx.has_tables:
        lx = ctx._log[xs][None, :]
        return ctx._exp[(-(lx * i)) % (ctx.q - 1)]
    inv = ctx.inv(xs)
    return np.stack([ctx.pow(inv, int(e)) for e in i[:, 0]])


def algebraic_degree(F: FunctionTable, cap: int = DEFAULT_INTERP_CAP) -> int:
    """Maximum p-ary digit sum of an exponent with nonzero coefficient (0 for constants).

    For p = 2 this is read off the ANF of the coordinate functions, with no size cap.
    """
    ctx = F.ctx
    if ctx.p == 2:
        anf = kernels.moebius(F.values)
        nz = np.flatnonzero(anf)
        if nz.size == 0:
            return 0
        return int(np.bitwise_count(nz).max())
    poly = interpolate(F, cap=cap)
    nz = np.flatnonzero(poly.coeffs)
    if nz.size == 0:
        return 0
    return int(max(digit_weight(int(e), ctx.p) for e in nz))


def digit_weight(e: int, p: int) -> int:
    w = 0
    while e:
        w += e % p
        e //= p
    return w


def fiber_sizes(F: FunctionTable) -> np.ndarray:
    """|F^{-1}(b)| for every b."""
    return np.bincount(F.values, minlength=F.ctx.q)


def preimage_distribution(F: FunctionTable) -> dict[int, int]:
    """Histogram: fiber size -> number of b having that many preimages."""
    return dict(sorted(Counter(fiber_sizes(F).tolist()).items()))


def is_permutation(F: FunctionTable) -> bool:
    return bool(np.all(fiber_sizes(F) == 1))


def compose(outer: FunctionTable, inner: FunctionTable) -> FunctionTable:
    if outer.ctx != inner.ctx:
        raise MixedFields("compose: tables over different fields")
    return FunctionTable(outer.ctx, outer.values[inner.values], {"kind": "compose"})


def affine_map(L: LinearizedPoly, const: int = 0, require_bijective: bool = False,
               domain: np.ndarray | None = None) -> FunctionTable:
    """x -> L(x) + const.  With ``require_bijective`` the linear part must be injective
    on ``domain`` (the whole field by default); ``domain`` must be closed under L."""
    ctx = L.ctx
    lin = np.asarray(eval_linearized(L, ctx.elements()))
    if require_bijective:
        dom = ctx.elements() if domain is None else np.asarray(domain, dtype=np.int64)
        img = lin[dom]
        if len(np.unique(img)) != len(dom) or (domain is not None and not np.all(np.isin(img, dom))):
            raise NonBijectiveAffine("linear part is not a bijection of the domain")
    return FunctionTable(ctx, ctx.add(lin, int(const)), {"kind": "affine"})


def identity(ctx: FieldCtx) -> FunctionTable:
    return FunctionTable(ctx, ctx.elements(), {"kind": "identity"})


# ---------------------------------------------------------------------------
# table files
# ---------------------------------------------------------------------------

def dump_table_text(F: FunctionTable) -> str:
    spec = F.ctx.spec
    lines = [f"{spec.p} {spec.n} {','.join(str(c) for c in spec.modulus)}"]
    lines.extend(str(int(v)) for v in F.values)
    return "\n".join(lines) + "\n"


def parse_table_text(text: str) -> FunctionTable:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ConfigError("empty table file")
    try:
        p, n, mod = lines[0].split()
        ctx = field_from_json({"p": int(p), "n": int(n), "modulus": [int(c) for c in mod.split(",")]})
        vals = [int(v) for v in lines[1:]]
    except ValueError as exc:
        raise ConfigError(f"malformed table header or value: {exc}") from exc
    return FunctionTable(ctx, vals, {"kind": "table_file"})


def dump_table_json(F: FunctionTable) -> dict:
    return {"field": F.ctx.spec.to_json(), "values": [int(v) for v in F.values]}


def parse_table_json(obj) -> FunctionTable:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        ctx = field_from_json(obj["field"])
        return FunctionTable(ctx, obj["values"], {"kind": "table_file"})
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed table json: {exc}") from exc


def save_table(F: FunctionTable, path) -> None:
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(json.dumps(dump_table_json(F)))
    else:
        path.write_text(dump_table_text(F))


def load_table(path, ctx: FieldCtx | None = None) -> FunctionTable:
    path = Path(path)
    text = path.read_text()
    F = parse_table_json(text) if path.suffix == ".json" else parse_table_text(text)
    if ctx is not None and F.ctx != ctx:
        raise MixedFields(f"{path} is over {F.ctx}, expected {ctx}")
    return F


__all__ = [
    "DEFAULT_INTERP_CAP",
    "FieldSpec",
    "FunctionTable",
    "UnivariatePoly",
    "affine_map",
    "algebraic_degree",
    "compose",
    "digit_weight",
    "eval_poly",
    "fiber_sizes",
    "from_poly",
    "identity",
    "interpolate",
    "is_permutation",
    "load_table",
    "preimage_distribution",
    "save_table",
]
