"""c-DDT tables, c-differential uniformity and solution loci.

Every count comes from scanning all x for a row a and bucketing
F(x + a) - c F(x).  Full q x q tables are only built up to ``full_cap``;
uniformity itself streams row maxima with O(q) memory.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .. import kernels
from ..errors import DomainTooLarge
from ..func import FunctionTable
from ..gf.subfield import SubfieldView

DEFAULT_FULL_DDT_CAP = 1 << 12
DEFAULT_WITNESS_LIMIT = 64


@dataclass
class DdtTable:
    c: int
    counts: np.ndarray

    def row(self, a: int) -> np.ndarray:
        return self.counts[a]


@dataclass
class UniformityReport:
    c: int
    delta: int
    witnesses: list[tuple[int, int]]
    a0_excluded: bool
    a0_attains: bool = False
    witness_rows: int = 0
    truncated: bool = False

    def to_json(self) -> dict:
        return {
            "c": int(self.c),
            "delta": int(self.delta),
            "witnesses": [[int(a), int(b)] for a, b in self.witnesses],
            "a0_excluded": self.a0_excluded,
            "a0_attains": self.a0_attains,
            "witness_rows": self.witness_rows,
            "truncated": self.truncated,
        }


@dataclass
class LocusReport:
    c: int
    s: int
    inside: dict[tuple[int, int], list[int]] = field(default_factory=dict)
    outside: dict[tuple[int, int], list[int]] = field(default_factory=dict)

    def count(self, a: int, b: int) -> int:
        return len(self.inside.get((a, b), [])) + len(self.outside.get((a, b), []))

    @property
    def outside_total(self) -> int:
        return sum(len(v) for v in self.outside.values())


def _scaled(F: FunctionTable, c: int) -> np.ndarray:
    return np.asarray(F.ctx.mul(int(c), F.values), dtype=np.int64)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("CDU_WORKERS", "1")))
    except ValueError:
        return 1


def _row_maxima_job(args):
    F, cF, p, n, lo, hi = args
    return kernels.cddt_row_maxima(F, cF, p, n, lo, hi)


def row_maxima(F: FunctionTable, c: int, workers: int = 1) -> np.ndarray:
    """Largest c-DDT entry of every row (index a)."""
    ctx = F.ctx
    cF = _scaled(F, c)
    if workers <= 1 or ctx.q < 1024:
        return kernels.cddt_row_maxima(F.values, cF, ctx.p, ctx.n)
    bounds = np.linspace(0, ctx.q, workers * 4 + 1).astype(int)
    jobs = [(F.values, cF, ctx.p, ctx.n, int(lo), int(hi)) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_row_maxima_job, jobs))
    return np.concatenate(parts)


def c_ddt(F: FunctionTable, c: int, full_cap: int = DEFAULT_FULL_DDT_CAP) -> DdtTable:
    ctx = F.ctx
    if ctx.q > full_cap:
        raise DomainTooLarge(f"full c-DDT for q={ctx.q} exceeds cap {full_cap}; use c_uniformity")
    counts = kernels.cddt_rows(F.values, _scaled(F, c), ctx.p, ctx.n, np.arange(ctx.q))
    return DdtTable(int(c), counts)


def ddt_row(F: FunctionTable, c: int, a: int) -> np.ndarray:
    ctx = F.ctx
    return kernels.cddt_rows(F.values, _scaled(F, c), ctx.p, ctx.n, np.array([a]))[0]


def uniformity_from_ddt(ddt: DdtTable, witness_limit: int = DEFAULT_WITNESS_LIMIT) -> UniformityReport:
    counts = ddt.counts
    start = 1 if ddt.c == 1 else 0
    return _report(ddt.c, counts.max(axis=1), lambda rows: counts[rows], start, witness_limit)


def c_uniformity(F: FunctionTable, c: int, witness_limit: int = DEFAULT_WITNESS_LIMIT,
                 workers: int = 1) -> UniformityReport:
    """delta_{F,c}: the largest c-DDT entry, skipping row a = 0 exactly when c = 1.

    Witnesses are the lexicographically first (a, b) attaining delta.
    """
    return c_uniformity_rows(F, c, witness_limit, workers)[0]


def c_uniformity_rows(F: FunctionTable, c: int, witness_limit: int = DEFAULT_WITNESS_LIMIT,
                      workers: int = 1) -> tuple[UniformityReport, np.ndarray]:
    """Like c_uniformity, also returning the per-row maxima used for per-entry bounds."""
    ctx = F.ctx
    cF = _scaled(F, c)
    rmax = row_maxima(F, c, workers=workers)
    start = 1 if int(c) == 1 else 0
    rep = _report(int(c), rmax, lambda rows: kernels.cddt_rows(F.values, cF, ctx.p, ctx.n, rows),
                  start, witness_limit)
    return rep, rmax


def _report(c, rmax, rows_fn, start, witness_limit) -> UniformityReport:
    adm = rmax[start:]
    if adm.size == 0:
        return UniformityReport(c, 0, [], start == 1)
    delta = int(adm.max())
    hit_rows = np.flatnonzero(rmax == delta)
    hit_rows = hit_rows[hit_rows >= start]
    witnesses: list[tuple[int, int]] = []
    truncated = False
    for i in range(0, len(hit_rows), 16):
        blk = hit_rows[i:i + 16]
        counts = rows_fn(blk)
        for a, row in zip(blk, counts):
            for b in np.flatnonzero(row == delta):
                if len(witnesses) >= witness_limit:
                    truncated = True
                    break
                witnesses.append((int(a), int(b)))
            if truncated:
                break
        if truncated:
            break
    return UniformityReport(
        c=c,
        delta=delta,
        witnesses=witnesses,
        a0_excluded=start == 1,
        a0_attains=start == 0 and int(rmax[0]) == delta,
        witness_rows=int(len(hit_rows)),
        truncated=truncated or len(witnesses) < int(len(hit_rows)),
    )


def uniformity_profile(F: FunctionTable, cs, witness_limit: int = DEFAULT_WITNESS_LIMIT,
                       workers: int = 1) -> dict[int, UniformityReport]:
    return {int(c): c_uniformity(F, int(c), witness_limit, workers) for c in sorted(set(int(c) for c in cs))}


def derivative_values(F: FunctionTable, c: int, a: int) -> np.ndarray:
    """F(x + a) - c F(x) for every x."""
    ctx = F.ctx
    x = ctx.elements()
    return np.asarray(ctx.sub(F.values[ctx.add(x, int(a))], ctx.mul(int(c), F.values)))


def solution_locus(F: FunctionTable, c: int, a: int, b: int, s: int) -> LocusReport:
    ctx = F.ctx
    ctx.check_divisor(s)
    mask = ctx.subfield_mask(s)
    sols = np.flatnonzero(derivative_values(F, c, a) == int(b))
    rep = LocusReport(int(c), s)
    rep.inside[(int(a), int(b))] = [int(x) for x in sols[mask[sols]]]
    rep.outside[(int(a), int(b))] = [int(x) for x in sols[~mask[sols]]]
    return rep


@dataclass
class OutsideScan:
    """Solutions outside GF(p^s) of F(x+a) - cF(x) = b over a scope of (a, b)."""

    pairs_checked: int
    outside_count: int
    witnesses: list[tuple[int, int, int]]


def scan_outside(F: FunctionTable, c: int, s: int, a_set, b_set, witness_limit: int = 16) -> OutsideScan:
    ctx = F.ctx
    ctx.check_divisor(s)
    mask = ctx.subfield_mask(s)
    outside = np.flatnonzero(~mask)
    b_mask = np.zeros(ctx.q, dtype=bool)
    b_mask[np.asarray(list(b_set), dtype=np.int64)] = True
    x = outside
    cFx = ctx.mul(int(c), F.values[x])
    total = 0
    wit: list[tuple[int, int, int]] = []
    a_list = [int(a) for a in a_set]
    for a in a_list:
        vals = ctx.sub(F.values[ctx.add(x, a)], cFx)
        hit = b_mask[vals]
        cnt = int(hit.sum())
        if cnt:
            total += cnt
            for xi, bi in zip(x[hit], vals[hit]):
                if len(wit) >= witness_limit:
                    break
                wit.append((a, int(bi), int(xi)))
    return OutsideScan(len(a_list) * int(b_mask.sum()), total, wit)


def subfield_uniformity(F: FunctionTable, c: int, view: SubfieldView) -> int:
    """delta of F viewed as an (s,s)-function: x, a range over the subfield only."""
    ctx = F.ctx
    S = view.elements
    xa = ctx.add(S[:, None], S[None, :])  # row a, column x
    vals = ctx.sub(F.values[xa], ctx.mul(int(c), F.values[S])[None, :])
    r = len(S)
    keys = vals + (np.arange(r, dtype=np.int64) * ctx.q)[:, None]
    counts = np.bincount(keys.ravel(), minlength=r * ctx.q).reshape(r, ctx.q)
    rmax = counts.max(axis=1)
    if int(c) == 1:
        rmax = rmax[S != 0]
    return int(rmax.max()) if rmax.size else 0


def subfield_fiber_max(F: FunctionTable, view: SubfieldView) -> int:
    """delta_{f,0} for the restriction of F to the subfield."""
    return int(np.bincount(F.values[view.elements], minlength=F.ctx.q).max())


DDT_EXPORT_CAP = 1 << 8


def ddt_to_csv(ddt: DdtTable, cap: int = DDT_EXPORT_CAP) -> str:
    """Header row of b indices, then one row per a prefixed by a."""
    q = ddt.counts.shape[0]
    if q > cap:
        raise DomainTooLarge(f"DDT export for q={q} exceeds cap {cap}")
    lines = ["a," + ",".join(str(b) for b in range(q))]
    for a, row in enumerate(ddt.counts):
        lines.append(f"{a}," + ",".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"
