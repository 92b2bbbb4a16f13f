"""Hot inner loops, each in a numba flavour and a pure-numpy flavour.

The public names (``cddt_row_maxima``, ``cddt_rows``, ``moebius``,
``fwht_rows``) dispatch on :func:`cdulab._accel.numba_enabled` at call time;
the ``_nb`` / ``_np`` variants are importable directly for benchmarks and for
cross-checking the two paths.

Field elements are int64 indices with base-p digits as coordinates, so for
p = 2 addition is XOR and for odd p it is digit-wise addition mod p.
"""

import numpy as np

from ._accel import njit, numba_enabled

# rows x q cells processed per numpy block
_NP_BLOCK_CELLS = 1 << 22


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------

@njit(cache=True)
def _digit_table(q, p, n):
    """D[x, j] = j-th base-p digit of x."""
    D = np.zeros((q, n), dtype=np.int8)
    for x in range(q):
        v = x
        for j in range(n):
            D[x, j] = v % p
            v //= p
    return D


@njit(cache=True)
def _row_counts_nb(F, cF, a, p, n, counts, D, W):
    q = F.shape[0]
    counts[:] = 0
    if p == 2:
        for x in range(q):
            counts[F[x ^ a] ^ cF[x]] += 1
        return
    for x in range(q):
        idx = 0
        for j in range(n):
            d = D[x, j] + D[a, j]
            if d >= p:
                d -= p
            idx += d * W[j]
        y = F[idx]
        c = cF[x]
        r = 0
        for j in range(n):
            d = D[y, j] - D[c, j]
            if d < 0:
                d += p
            r += d * W[j]
        counts[r] += 1


@njit(cache=True)
def _tables_nb(q, p, n):
    W = np.ones(n, dtype=np.int64)
    for j in range(1, n):
        W[j] = W[j - 1] * p
    if p == 2:
        return np.zeros((1, 1), dtype=np.int8), W
    return _digit_table(q, p, n), W


@njit(cache=True)
def cddt_row_maxima_nb(F, cF, p, n, a_lo, a_hi):
    q = F.shape[0]
    D, W = _tables_nb(q, p, n)
    counts = np.zeros(q, dtype=np.int64)
    out = np.zeros(a_hi - a_lo, dtype=np.int64)
    for a in range(a_lo, a_hi):
        _row_counts_nb(F, cF, a, p, n, counts, D, W)
        mx = 0
        for b in range(q):
            if counts[b] > mx:
                mx = counts[b]
        out[a - a_lo] = mx
    return out


@njit(cache=True)
def cddt_rows_nb(F, cF, p, n, rows):
    q = F.shape[0]
    D, W = _tables_nb(q, p, n)
    out = np.zeros((rows.shape[0], q), dtype=np.int64)
    counts = np.zeros(q, dtype=np.int64)
    for i in range(rows.shape[0]):
        _row_counts_nb(F, cF, rows[i], p, n, counts, D, W)
        out[i, :] = counts
    return out


@njit(cache=True)
def moebius_nb(values):
    out = values.copy()
    q = out.shape[0]
    h = 1
    while h < q:
        for start in range(0, q, 2 * h):
            for j in range(start, start + h):
                out[j + h] ^= out[j]
        h *= 2
    return out


@njit(cache=True)
def fwht_rows_nb(mat):
    out = mat.copy()
    rows, q = out.shape
    for r in range(rows):
        h = 1
        while h < q:
            for start in range(0, q, 2 * h):
                for j in range(start, start + h):
                    u = out[r, j]
                    v = out[r, j + h]
                    out[r, j] = u + v
                    out[r, j + h] = u - v
            h *= 2
    return out


# ---------------------------------------------------------------------------
# numpy kernels
# ---------------------------------------------------------------------------

def _np_addsub(a, b, p, n, sign):
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    w = 1
    for _ in range(n):
        out += ((a // w % p + sign * (b // w % p)) % p) * w
        w *= p
    return out


def _np_block_values(F, cF, p, n, rows):
    q = F.shape[0]
    x = np.arange(q, dtype=np.int64)[None, :]
    a = np.asarray(rows, dtype=np.int64)[:, None]
    if p == 2:
        return F[x ^ a] ^ cF[None, :]
    return _np_addsub(F[_np_addsub(x, a, p, n, 1)], cF[None, :], p, n, -1)


def _np_block_counts(F, cF, p, n, rows):
    q = F.shape[0]
    vals = _np_block_values(F, cF, p, n, rows)
    keys = vals + (np.arange(len(rows), dtype=np.int64) * q)[:, None]
    return np.bincount(keys.ravel(), minlength=len(rows) * q).reshape(len(rows), q)


def _np_blocks(q, rows):
    step = max(1, _NP_BLOCK_CELLS // q)
    for i in range(0, len(rows), step):
        yield rows[i:i + step]


def cddt_row_maxima_np(F, cF, p, n, a_lo, a_hi):
    rows = np.arange(a_lo, a_hi, dtype=np.int64)
    out = np.zeros(len(rows), dtype=np.int64)
    pos = 0
    for blk in _np_blocks(F.shape[0], rows):
        out[pos:pos + len(blk)] = _np_block_counts(F, cF, p, n, blk).max(axis=1)
        pos += len(blk)
    return out


def cddt_rows_np(F, cF, p, n, rows):
    rows = np.asarray(rows, dtype=np.int64)
    parts = [_np_block_counts(F, cF, p, n, blk) for blk in _np_blocks(F.shape[0], rows)]
    if not parts:
        return np.zeros((0, F.shape[0]), dtype=np.int64)
    return np.concatenate(parts).astype(np.int64)


def moebius_np(values):
    out = np.array(values, dtype=np.int64, copy=True)
    q = out.shape[0]
    h = 1
    while h < q:
        v = out.reshape(-1, 2, h)
        v[:, 1, :] ^= v[:, 0, :]
        h *= 2
    return out


def fwht_rows_np(mat):
    out = np.array(mat, dtype=np.int64, copy=True)
    rows, q = out.shape
    h = 1
    while h < q:
        v = out.reshape(rows, -1, 2, h)
        u = v[:, :, 0, :].copy()
        w = v[:, :, 1, :]
        v[:, :, 0, :] += w
        v[:, :, 1, :] = u - w
        h *= 2
    return out


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def cddt_row_maxima(F, cF, p, n, a_lo=0, a_hi=None):
    """Max c-DDT entry of every row a in [a_lo, a_hi)."""
    F, cF = _i64(F), _i64(cF)
    a_hi = F.shape[0] if a_hi is None else a_hi
    if numba_enabled():
        return cddt_row_maxima_nb(F, cF, int(p), int(n), int(a_lo), int(a_hi))
    return cddt_row_maxima_np(F, cF, p, n, a_lo, a_hi)


def cddt_rows(F, cF, p, n, rows):
    """Full c-DDT rows: out[i, b] = #{x : F(x + rows[i]) - cF(x) = b}."""
    F, cF, rows = _i64(F), _i64(cF), _i64(rows)
    if numba_enabled():
        return cddt_rows_nb(F, cF, int(p), int(n), rows)
    return cddt_rows_np(F, cF, p, n, rows)


def moebius(values):
    """Binary Moebius transform of a table of bit-vectors (all coordinates at once)."""
    values = _i64(values)
    if numba_enabled():
        return moebius_nb(values)
    return moebius_np(values)


def fwht_rows(mat):
    """Unnormalized Walsh-Hadamard transform of each row."""
    mat = _i64(np.atleast_2d(mat))
    if numba_enabled():
        return fwht_rows_nb(mat)
    return fwht_rows_np(mat)
