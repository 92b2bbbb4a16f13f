"""Subfields GF(p^s) inside GF(p^n) and coordinates over an extension basis.

Subfield elements are always ambient indices; there is no separate small-field
object.
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np

from ..errors import ConfigError, SingularBasis
from .field import FieldCtx, divisors
from .linalg import inverse_mod_p


class SubfieldView:
    """GF(p^s) as a subset of ``ctx`` together with a basis g_1 = 1, g_2, ..., g_m
    of GF(p^n) over GF(p^s).

    ``basis`` overrides the default powers-of-theta basis; its first entry must be 1.
    """

    def __init__(self, ctx: FieldCtx, s: int, basis: Sequence[int] | None = None):
        ctx.check_divisor(s)
        self.ctx = ctx
        self.s = s
        self.m = ctx.n // s
        self.mask = ctx.subfield_mask(s)
        self.elements = np.flatnonzero(self.mask).astype(np.int64)
        self.size = ctx.p**s
        if basis is None:
            self.theta = self._find_theta()
            basis = [int(ctx.pow(self.theta, i)) for i in range(self.m)]
        else:
            basis = [int(b) for b in basis]
            if len(basis) != self.m:
                raise ConfigError(f"basis needs {self.m} elements, got {len(basis)}")
            if basis[0] != 1:
                raise ConfigError("first basis element must be 1")
            self.theta = None
        self.basis = tuple(basis)
        self._coord_matrix()  # validates independence

    def __repr__(self):
        return f"SubfieldView(GF({self.ctx.p}^{self.s}) in {self.ctx}, basis={list(self.basis)})"

    def _find_theta(self) -> int:
        if self.m == 1:
            return 1
        ctx = self.ctx
        proper = [self.s * j for j in divisors(self.m) if j < self.m]
        for theta in range(2, ctx.q):
            if not any(ctx.in_subfield(theta, d) for d in proper):
                return theta
        raise AssertionError("no generator of the extension found")

    @cached_property
    def zeta(self) -> int:
        """An element of degree s over GF(p); its powers span the subfield over GF(p)."""
        ctx = self.ctx
        for z in self.elements:
            if ctx.minimal_subfield(int(z)) == self.s:
                return int(z)
        return 1

    def _coord_matrix(self):
        ctx = self.ctx
        zpows = [int(ctx.pow(self.zeta, j)) for j in range(self.s)]
        self._zpows = np.array(zpows, dtype=np.int64)
        rows = [ctx.mul(g, z) for g in self.basis for z in zpows]
        mat = ctx.digits(np.array(rows, dtype=np.int64))
        try:
            self._minv = inverse_mod_p(mat, ctx.p)
        except SingularBasis as exc:
            raise SingularBasis("extension basis is not independent over the subfield") from exc

    def contains(self, x):
        return self.mask[np.asarray(x, dtype=np.int64)]

    def coords(self, x) -> np.ndarray:
        """(x_1..x_m) in the subfield with sum g_i x_i = x; shape ``x.shape + (m,)``."""
        ctx = self.ctx
        x = np.asarray(x, dtype=np.int64)
        e = (ctx.digits(x) @ self._minv) % ctx.p
        e = e.reshape(x.shape + (self.m, self.s))
        out = np.zeros(x.shape + (self.m,), dtype=np.int64)
        for j in range(self.s):
            out = ctx.add(out, ctx.scale(self._zpows[j], e[..., j]))
        return out

    def projection(self, c) -> int:
        """First coordinate c_1 of c (the component along g_1 = 1)."""
        return int(self.coords(np.int64(c))[0])

    def reconstruct(self, coords) -> np.ndarray:
        ctx = self.ctx
        coords = np.asarray(coords, dtype=np.int64)
        out = np.zeros(coords.shape[:-1], dtype=np.int64)
        for i, g in enumerate(self.basis):
            out = ctx.add(out, ctx.mul(g, coords[..., i]))
        return out


def subfield_coords(x: int, view: SubfieldView) -> np.ndarray:
    return view.coords(np.int64(x))
