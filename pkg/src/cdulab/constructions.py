"""Function families: power maps and subfield-piecewise / concatenated constructions.

Pieces that live on a subfield GF(p^s) are ambient tables whose values on the
subfield stay in the subfield; only those values are used.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np

from .errors import (
    AlphaOutsideSubfield,
    AlphaZero,
    BadChain,
    BaseFieldMismatch,
    MixedFields,
    NonBijectiveAffine,
    NonCoprimeDegrees,
    OddCharacteristic,
    SubfieldEscape,
)
from .func import FunctionTable, affine_map, compose
from .gf.field import FieldCtx
from .gf.linearized import DualProjection, LinearizedPoly
from .gf.subfield import SubfieldView


def _need_char2(ctx: FieldCtx, what: str):
    if ctx.p != 2:
        raise OddCharacteristic(f"{what} is defined for p = 2 only")


def power_map(ctx: FieldCtx, d: int) -> FunctionTable:
    """x -> x^d, exponent reduced mod q-1 on nonzero inputs, 0 -> 0 for d > 0."""
    vals = ctx.pow(ctx.elements(), d)
    if d > 0:
        vals = np.where(ctx.elements() == 0, 0, vals)
    return FunctionTable(ctx, vals, {"kind": "power", "d": int(d)})


def gold(ctx: FieldCtx, k: int) -> FunctionTable:
    _need_char2(ctx, "gold")
    F = power_map(ctx, 2**k + 1)
    return F.with_meta(kind="gold", k=k, t=gcd(k, ctx.n))


def kasami(ctx: FieldCtx, k: int) -> FunctionTable:
    _need_char2(ctx, "kasami")
    F = power_map(ctx, 2 ** (2 * k) - 2**k + 1)
    return F.with_meta(kind="kasami", k=k)


def inverse_perm(ctx: FieldCtx) -> FunctionTable:
    vals = np.zeros(ctx.q, dtype=np.int64)
    vals[1:] = ctx.inv(np.arange(1, ctx.q))
    return FunctionTable(ctx, vals, {"kind": "inverse"})


def check_subfield_closed(f: FunctionTable, s: int) -> None:
    ctx = f.ctx
    mask = ctx.subfield_mask(s)
    bad = np.flatnonzero(mask & ~mask[f.values])
    if bad.size:
        x = int(bad[0])
        raise SubfieldEscape(f"f({x}) = {int(f.values[x])} leaves GF({ctx.p}^{s})")


def _same_field(*tables: FunctionTable) -> FieldCtx:
    ctx = tables[0].ctx
    for t in tables[1:]:
        if t.ctx != ctx:
            raise MixedFields("pieces are defined over different fields")
    return ctx


def piecewise_two(f: FunctionTable, g: FunctionTable, s: int) -> FunctionTable:
    """f on GF(p^s), g elsewhere."""
    ctx = _same_field(f, g)
    ctx.check_divisor(s)
    check_subfield_closed(f, s)
    mask = ctx.subfield_mask(s)
    return FunctionTable(ctx, np.where(mask, f.values, g.values),
                         {"kind": "piecewise2", "s": s, "f": f.meta, "g": g.meta})


def piecewise_three(f: FunctionTable, g: FunctionTable, h: FunctionTable, s: int, t: int) -> FunctionTable:
    """f on GF(p^t), g on GF(p^s) minus GF(p^t), h elsewhere."""
    ctx = _same_field(f, g, h)
    ctx.check_divisor(s)
    ctx.check_divisor(t)
    if gcd(s, t) != 1:
        raise NonCoprimeDegrees(f"gcd({s},{t}) != 1")
    check_subfield_closed(f, t)
    check_subfield_closed(g, s)
    in_t = ctx.subfield_mask(t)
    in_s = ctx.subfield_mask(s)
    vals = np.where(in_t, f.values, np.where(in_s, g.values, h.values))
    return FunctionTable(ctx, vals, {"kind": "piecewise3", "s": s, "t": t})


@dataclass(frozen=True)
class PieceSpec:
    """Divisor chain k_1 | k_2 | ... | k_t = n with one function per level."""

    pieces: tuple[tuple[int, FunctionTable], ...]

    def __init__(self, pieces: Sequence[tuple[int, FunctionTable]]):
        object.__setattr__(self, "pieces", tuple((int(k), f) for k, f in pieces))

    @property
    def degrees(self) -> list[int]:
        return [k for k, _ in self.pieces]

    @property
    def functions(self) -> list[FunctionTable]:
        return [f for _, f in self.pieces]

    def validate(self) -> FieldCtx:
        if len(self.pieces) < 1:
            raise BadChain("empty chain")
        ctx = _same_field(*self.functions)
        ks = self.degrees
        if ks[-1] != ctx.n:
            raise BadChain(f"chain must end at n={ctx.n}, ends at {ks[-1]}")
        for a, b in zip(ks, ks[1:]):
            if a >= b or b % a:
                raise BadChain(f"{a} does not properly divide {b}")
        for k, f in self.pieces[:-1]:
            try:
                check_subfield_closed(f, k)
            except SubfieldEscape as exc:
                raise BadChain(str(exc)) from exc
        return ctx


def piecewise_chain(spec: PieceSpec) -> FunctionTable:
    """First level whose subfield contains x decides the value."""
    ctx = spec.validate()
    vals = np.array(spec.functions[-1].values)
    assigned = np.zeros(ctx.q, dtype=bool)
    for k, f in spec.pieces:
        here = ctx.subfield_mask(k) & ~assigned
        vals[here] = f.values[here]
        assigned |= here
    return FunctionTable(ctx, vals, {"kind": "chain", "k": spec.degrees})


def _check_alpha(ctx: FieldCtx, s: int, alpha: int):
    ctx.check_divisor(s)
    if alpha == 0:
        raise AlphaZero("alpha must be nonzero")
    if not ctx.in_subfield(alpha, s):
        raise AlphaOutsideSubfield(f"alpha={alpha} is not in GF(2^{s})")


def gold_shift(ctx: FieldCtx, s: int, k: int, alpha: int) -> FunctionTable:
    """Gold map with alpha added on the subfield GF(2^s)."""
    _need_char2(ctx, "gold_shift")
    _check_alpha(ctx, s, alpha)
    g = gold(ctx, k)
    f = FunctionTable(ctx, ctx.add(g.values, alpha))
    F = piecewise_two(f, g, s)
    return F.with_meta(kind="gold_shift", s=s, k=k, alpha=int(alpha))


def gold_shift_closed_form(ctx: FieldCtx, s: int, k: int, alpha: int) -> FunctionTable:
    """x^(2^k+1) + alpha (x^(2^s) + x)^(2^n-1) + alpha, evaluated term by term."""
    _need_char2(ctx, "gold_shift")
    _check_alpha(ctx, s, alpha)
    x = ctx.elements()
    u = ctx.pow(ctx.add(ctx.frobenius(x, s), x), ctx.q - 1)
    vals = ctx.add(ctx.add(ctx.pow(x, 2**k + 1), ctx.mul(alpha, u)), alpha)
    return FunctionTable(ctx, vals, {"kind": "gold_shift_closed", "s": s, "k": k, "alpha": int(alpha)})


def concat(proj: DualProjection, fs: Sequence[FunctionTable]) -> FunctionTable:
    """sum_k beta_k f_k(L_k(x)); each f_k must map the base field into itself."""
    ctx = proj.ctx
    if len(fs) != proj.degree:
        raise BaseFieldMismatch(f"need {proj.degree} functions, got {len(fs)}")
    for f in fs:
        if f.ctx != ctx:
            raise BaseFieldMismatch("component functions must be tables over the ambient field")
        try:
            check_subfield_closed(f, proj.r)
        except SubfieldEscape as exc:
            raise BaseFieldMismatch(str(exc)) from exc
    coords = proj.coords(ctx.elements())
    vals = np.zeros(ctx.q, dtype=np.int64)
    for k, (b, f) in enumerate(zip(proj.beta, fs)):
        vals = ctx.add(vals, ctx.mul(b, f.values[coords[:, k]]))
    return FunctionTable(ctx, vals, {"kind": "concat", "beta": list(proj.beta)})


# ---------------------------------------------------------------------------
# helpers for the affine-inverse-affine pieces and random instances
# ---------------------------------------------------------------------------

def random_affine_perm(view: SubfieldView, rng: np.random.Generator, max_tries: int = 1000) -> FunctionTable:
    """A random affine permutation of GF(p^s), as an ambient table (identity off the subfield)."""
    ctx = view.ctx
    for _ in range(max_tries):
        coeffs = tuple(int(c) for c in rng.choice(view.elements, size=view.s))
        const = int(rng.choice(view.elements))
        L = LinearizedPoly(ctx, coeffs)
        try:
            A = affine_map(L, const, require_bijective=True, domain=view.elements)
        except NonBijectiveAffine:
            continue
        vals = np.where(view.mask, A.values, ctx.elements())
        return FunctionTable(ctx, vals, {"kind": "affine", "coeffs": list(coeffs), "const": const})
    raise RuntimeError("no affine permutation found")


def affine_inverse_affine(A1: FunctionTable, A2: FunctionTable) -> FunctionTable:
    inv = inverse_perm(A1.ctx)
    return compose(A1, compose(inv, A2)).with_meta(kind="A1_inv_A2")


def kasami_modified(ctx: FieldCtx, s: int, k: int, A1: FunctionTable, A2: FunctionTable) -> FunctionTable:
    """A1 o Inv o A2 on GF(2^s), the Kasami power map elsewhere."""
    f = affine_inverse_affine(A1, A2)
    F = piecewise_two(f, kasami(ctx, k), s)
    return F.with_meta(kind="kasami_modified", s=s, k=k)


def random_subfield_closed(view: SubfieldView, rng: np.random.Generator) -> FunctionTable:
    """Random table that maps the subfield into itself (arbitrary elsewhere)."""
    ctx = view.ctx
    vals = rng.integers(0, ctx.q, ctx.q)
    vals[view.elements] = rng.choice(view.elements, size=view.elements.size)
    return FunctionTable(ctx, vals, {"kind": "random_subfield", "s": view.s})


def random_table(ctx: FieldCtx, rng: np.random.Generator) -> FunctionTable:
    return FunctionTable(ctx, rng.integers(0, ctx.q, ctx.q), {"kind": "random"})
