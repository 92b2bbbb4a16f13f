"""Small dense linear algebra: over GF(p) on integer matrices, and over GF(p^n)
through a ``FieldCtx``.  Matrices here are at most a few dozen rows."""

from __future__ import annotations

import numpy as np

from ..errors import SingularBasis


def inverse_mod_p(mat, p: int) -> np.ndarray:
    a = [[int(v) % p for v in row] for row in np.asarray(mat)]
    n = len(a)
    inv = [[int(i == j) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise SingularBasis("matrix is singular over GF(%d)" % p)
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = pow(a[col][col], p - 2, p)
        a[col] = [v * f % p for v in a[col]]
        inv[col] = [v * f % p for v in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                t = a[r][col]
                a[r] = [(x - t * y) % p for x, y in zip(a[r], a[col])]
                inv[r] = [(x - t * y) % p for x, y in zip(inv[r], inv[col])]
    return np.array(inv, dtype=np.int64)


def rank_mod_p(mat, p: int) -> int:
    a = [[int(v) % p for v in row] for row in np.asarray(mat)]
    rank = 0
    rows = len(a)
    cols = len(a[0]) if rows else 0
    for col in range(cols):
        piv = next((r for r in range(rank, rows) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        f = pow(a[rank][col], p - 2, p)
        a[rank] = [v * f % p for v in a[rank]]
        for r in range(rows):
            if r != rank and a[r][col]:
                t = a[r][col]
                a[r] = [(x - t * y) % p for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def inverse_over_field(ctx, mat) -> list[list[int]]:
    """Gauss-Jordan inverse of a square matrix of element indices."""
    a = [[int(v) for v in row] for row in mat]
    n = len(a)
    inv = [[int(i == j) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise SingularBasis("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = ctx.inv(a[col][col])
        a[col] = [ctx.mul(v, f) for v in a[col]]
        inv[col] = [ctx.mul(v, f) for v in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                t = a[r][col]
                a[r] = [ctx.sub(x, ctx.mul(t, y)) for x, y in zip(a[r], a[col])]
                inv[r] = [ctx.sub(x, ctx.mul(t, y)) for x, y in zip(inv[r], inv[col])]
    return inv
