"""Pure predicates used to validate claim parameters."""

from __future__ import annotations

from math import gcd

import numpy as np

from ..func import FunctionTable
from ..gf.field import FieldCtx, is_prime


def is_odd(m: int) -> bool:
    return m % 2 == 1


def divides(a: int, b: int) -> bool:
    return a != 0 and b % a == 0


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1


def no_divisor_in_range(m: int, lo: int, hi: int) -> bool:
    """m is divisible by no integer t with lo <= t <= hi."""
    return all(m % t for t in range(lo, hi + 1))


def no_small_prime_divides(m: int, bound: int) -> bool:
    """Every prime r <= bound fails to divide m."""
    return all(m % r for r in range(2, bound + 1) if is_prime(r))


def valid_chain(ks, n: int) -> bool:
    if not ks or ks[-1] != n:
        return False
    return all(a < b and b % a == 0 for a, b in zip(ks, ks[1:]))


def in_subfield(ctx: FieldCtx, x: int, s: int) -> bool:
    return divides(s, ctx.n) and bool(ctx.in_subfield(int(x), s))


def nonzero_in_subfield(ctx: FieldCtx, x: int, s: int) -> bool:
    return int(x) != 0 and in_subfield(ctx, x, s)


def commutes_with_frobenius(F: FunctionTable, s: int) -> bool:
    """F(x^(p^s)) = F(x)^(p^s) for every x, i.e. F has coefficients in GF(p^s)."""
    ctx = F.ctx
    x = ctx.elements()
    return bool(np.array_equal(F.values[ctx.frobenius(x, s)], ctx.frobenius(F.values, s)))


def subfield_closed(F: FunctionTable, s: int) -> bool:
    mask = F.ctx.subfield_mask(s)
    return bool(np.all(mask[F.values[mask]]))


def permutes_subfield(F: FunctionTable, s: int) -> bool:
    ctx = F.ctx
    S = ctx.subfield_elements(s)
    img = F.values[S]
    return subfield_closed(F, s) and len(np.unique(img)) == len(S)
