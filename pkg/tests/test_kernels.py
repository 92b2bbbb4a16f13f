"""The compiled and pure-numpy kernels must agree bit for bit."""

import numpy as np
import pytest

from cdulab import _accel, kernels
from cdulab.gf import make_field


@pytest.fixture
def numpy_only(monkeypatch):
    monkeypatch.setenv("CDULAB_NUMBA", "0")


def test_flag(monkeypatch):
    monkeypatch.setenv("CDULAB_NUMBA", "0")
    assert not _accel.numba_enabled()
    monkeypatch.setenv("CDULAB_NUMBA", "1")
    assert _accel.numba_enabled() == _accel.HAVE_NUMBA


def _both(monkeypatch, fn, *args):
    monkeypatch.setenv("CDULAB_NUMBA", "1")
    a = fn(*args)
    monkeypatch.setenv("CDULAB_NUMBA", "0")
    b = fn(*args)
    return a, b


@pytest.mark.parametrize("p,n", [(2, 6), (3, 4), (5, 2), (7, 2)])
def test_cddt_kernels_agree(monkeypatch, p, n):
    ctx = make_field(p, n)
    rng = np.random.default_rng(p * n)
    F = rng.integers(0, ctx.q, ctx.q)
    cF = ctx.mul(int(rng.integers(0, ctx.q)), F)
    a, b = _both(monkeypatch, kernels.cddt_rows, F, cF, p, n, np.arange(ctx.q))
    assert np.array_equal(a, b)
    a, b = _both(monkeypatch, kernels.cddt_row_maxima, F, cF, p, n, 3, ctx.q - 1)
    assert np.array_equal(a, b)
    assert np.array_equal(a, kernels.cddt_rows(F, cF, p, n, np.arange(3, ctx.q - 1)).max(axis=1))


@pytest.mark.parametrize("n", [1, 4, 8])
def test_moebius_fwht_agree(monkeypatch, n):
    rng = np.random.default_rng(n)
    vals = rng.integers(0, 1 << n, 1 << n)
    a, b = _both(monkeypatch, kernels.moebius, vals)
    assert np.array_equal(a, b)
    # involution
    assert np.array_equal(kernels.moebius(a), vals)
    mat = 1 - 2 * rng.integers(0, 2, (3, 1 << n))
    a, b = _both(monkeypatch, kernels.fwht_rows, mat)
    assert np.array_equal(a, b)
    H = np.array([[(-1) ** bin(i & j).count("1") for j in range(1 << n)] for i in range(1 << n)])
    assert np.array_equal(a, mat @ H)


def test_engine_under_numpy_path(numpy_only):
    from cdulab.constructions import gold
    from cdulab.engine import c_uniformity, nonlinearity
    ctx = make_field(2, 5)
    assert c_uniformity(gold(ctx, 1), 1).delta == 2
    assert nonlinearity(gold(ctx, 1)) == 12
