"""Walsh spectrum and nonlinearity of (n,n)-functions over GF(2^n).

W(a, b) = sum_x (-1)^(Tr(b F(x)) + Tr(a x)) with the absolute trace.  The
linear form x -> Tr(a x) equals the dot product of x's polynomial-basis bits
with tau(a), where bit i of tau(a) is Tr(a g^i); the spectrum is therefore one
fast Walsh-Hadamard transform per b, read at tau(a).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..errors import DomainTooLarge, OddCharacteristic
from ..func import FunctionTable
from ..gf.field import FieldCtx

WALSH_FULL_CAP = 1 << 12
WALSH_MAX_Q = 1 << 20


@dataclass
class WalshSpectrum:
    """values[b - 1, a] = W(a, b) for b != 0."""

    values: np.ndarray
    nl: int
    n: int

    def W(self, a: int, b: int) -> int:
        if b == 0:
            raise ValueError("b must be nonzero")
        return int(self.values[b - 1, a])

    def parseval_ok(self) -> bool:
        return bool(np.all((self.values.astype(np.int64) ** 2).sum(axis=1) == 1 << (2 * self.n)))


def _check(F: FunctionTable) -> FieldCtx:
    ctx = F.ctx
    if ctx.p != 2:
        raise OddCharacteristic("Walsh transform is implemented for p = 2 only")
    if ctx.q > WALSH_MAX_Q:
        raise DomainTooLarge(f"q={ctx.q} above Walsh limit {WALSH_MAX_Q}")
    return ctx


def trace_table(ctx: FieldCtx) -> np.ndarray:
    return np.asarray(ctx.trace(ctx.elements()), dtype=np.int64)


def tau_table(ctx: FieldCtx, tr: np.ndarray | None = None) -> np.ndarray:
    tr = trace_table(ctx) if tr is None else tr
    a = ctx.elements()
    tau = np.zeros(ctx.q, dtype=np.int64)
    for i in range(ctx.n):
        tau |= tr[ctx.mul(a, 1 << i)] << i
    return tau


def _spectra(F: FunctionTable, bs: np.ndarray, tr: np.ndarray, tau: np.ndarray) -> np.ndarray:
    ctx = F.ctx
    comps = tr[ctx.mul(bs[:, None], F.values[None, :])]
    signs = 1 - 2 * comps
    return kernels.fwht_rows(signs)[:, tau]


def walsh(F: FunctionTable) -> WalshSpectrum:
    ctx = _check(F)
    if ctx.q > WALSH_FULL_CAP:
        raise DomainTooLarge(f"full spectrum for q={ctx.q} exceeds {WALSH_FULL_CAP}; use nonlinearity()")
    tr = trace_table(ctx)
    tau = tau_table(ctx, tr)
    vals = _spectra(F, np.arange(1, ctx.q, dtype=np.int64), tr, tau)
    nl = (1 << (ctx.n - 1)) - int(np.abs(vals).max()) // 2
    return WalshSpectrum(vals, nl, ctx.n)


def nonlinearity(F: FunctionTable, block: int = 64) -> int:
    """2^(n-1) - max |W(a, b)| / 2 over b != 0, streamed over blocks of b."""
    ctx = _check(F)
    tr = trace_table(ctx)
    tau = tau_table(ctx, tr)
    block = max(1, min(block, (1 << 22) // ctx.q))
    best = 0
    for lo in range(1, ctx.q, block):
        bs = np.arange(lo, min(ctx.q, lo + block), dtype=np.int64)
        best = max(best, int(np.abs(_spectra(F, bs, tr, tau)).max()))
    return (1 << (ctx.n - 1)) - best // 2
