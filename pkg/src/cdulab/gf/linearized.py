"""Linearized polynomials sum c_i x^(Q^i) and the dual-basis coordinate projections."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import ConfigError, SingularBasis
from .field import FieldCtx
from .linalg import inverse_over_field
from .subfield import SubfieldView


@dataclass(frozen=True)
class LinearizedPoly:
    """L(x) = sum_i coeffs[i] * x^(p^(r*i)); r = 1 gives the usual p-polynomials."""

    ctx: FieldCtx
    coeffs: tuple[int, ...]
    r: int = 1

    def __call__(self, x):
        return eval_linearized(self, x)

    @classmethod
    def frobenius(cls, ctx: FieldCtx, j: int = 1) -> "LinearizedPoly":
        coeffs = [0] * (j + 1)
        coeffs[j] = 1
        return cls(ctx, tuple(coeffs))


def eval_linearized(L: LinearizedPoly, x):
    ctx = L.ctx
    x_ = np.asarray(x, dtype=np.int64)
    acc = np.zeros_like(x_)
    cur = x_
    for i, c in enumerate(L.coeffs):
        if i:
            cur = np.asarray(ctx.frobenius(cur, L.r))
        if c:
            acc = ctx.add(acc, ctx.mul(c, cur))
    if np.ndim(x) == 0:
        return int(acc)
    return acc


class DualProjection:
    """Coordinate functionals L_k for a basis beta of GF(Q^n) over GF(Q).

    L_k has coefficients taken from column k of the inverse of the Moore matrix
    A[i][j] = beta_i^(Q^j), so that L_k(sum_i beta_i x_i) = x_k.
    """

    def __init__(self, ctx: FieldCtx, base: SubfieldView, beta: Sequence[int]):
        if base.ctx != ctx:
            raise ConfigError("base subfield view belongs to another field")
        self.ctx = ctx
        self.base = base
        self.r = base.s
        self.qbase = ctx.p**base.s
        self.degree = ctx.n // base.s
        beta = [int(b) for b in beta]
        if len(beta) != self.degree:
            raise ConfigError(f"need {self.degree} basis elements, got {len(beta)}")
        self.beta = tuple(beta)
        self.moore = [[int(ctx.frobenius(b, self.r * j)) for j in range(self.degree)] for b in beta]
        try:
            self.ainv = inverse_over_field(ctx, self.moore)
        except SingularBasis as exc:
            raise SingularBasis("beta is not a basis over the base field") from exc
        self.projections = tuple(
            LinearizedPoly(ctx, tuple(self.ainv[i][k] for i in range(self.degree)), self.r)
            for k in range(self.degree)
        )

    def project(self, x, k: int):
        """k is zero-based."""
        return eval_linearized(self.projections[k], x)

    def coords(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        return np.stack([np.asarray(self.project(x, k)) for k in range(self.degree)], axis=-1)

    def reconstruct(self, coords) -> np.ndarray:
        ctx = self.ctx
        coords = np.asarray(coords, dtype=np.int64)
        out = np.zeros(coords.shape[:-1], dtype=np.int64)
        for k, b in enumerate(self.beta):
            out = ctx.add(out, ctx.mul(b, coords[..., k]))
        return out


def dual_projection(ctx_big: FieldCtx, base: SubfieldView, beta: Sequence[int]) -> DualProjection:
    return DualProjection(ctx_big, base, beta)
