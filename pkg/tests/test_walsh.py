import numpy as np
import pytest

from cdulab.constructions import gold, inverse_perm, kasami
from cdulab.engine import nonlinearity, walsh
from cdulab.errors import DomainTooLarge, OddCharacteristic
from cdulab.func import FunctionTable, affine_map, compose, identity
from cdulab.gf import LinearizedPoly, make_field

from oracles import naive_nonlinearity


def test_gold5_nl():
    ctx = make_field(2, 5)
    assert walsh(gold(ctx, 1)).nl == 12
    assert nonlinearity(gold(ctx, 1)) == 12


def test_identity_nl_zero():
    assert nonlinearity(identity(make_field(2, 6))) == 0


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_parseval(n):
    ctx = make_field(2, n)
    rng = np.random.default_rng(n)
    spec = walsh(FunctionTable(ctx, rng.integers(0, ctx.q, ctx.q)))
    assert spec.parseval_ok()


@pytest.mark.parametrize("n", [3, 4, 5])
def test_nl_matches_naive(n):
    ctx = make_field(2, n)
    rng = np.random.default_rng(10 + n)
    mod = list(ctx.modulus)
    for F in (inverse_perm(ctx), kasami(ctx, 1), FunctionTable(ctx, rng.integers(0, ctx.q, ctx.q))):
        assert nonlinearity(F) == naive_nonlinearity(list(F.values), n, mod)


def test_walsh_entry_definition():
    ctx = make_field(2, 4)
    F = inverse_perm(ctx)
    spec = walsh(F)
    tr = ctx.trace(ctx.elements())
    for a, b in [(0, 1), (3, 7), (15, 2)]:
        w = sum((-1) ** int(tr[ctx.mul(b, F(x))] ^ tr[ctx.mul(a, x)]) for x in range(16))
        assert spec.W(a, b) == w
    with pytest.raises(ValueError):
        spec.W(0, 0)


def test_nl_affine_invariance():
    ctx = make_field(2, 6)
    F = inverse_perm(ctx)
    A = affine_map(LinearizedPoly(ctx, (0, 1)), 7, require_bijective=True)
    B = affine_map(LinearizedPoly(ctx, (0, 0, 5)), 3, require_bijective=True)
    assert nonlinearity(compose(A, compose(F, B))) == nonlinearity(F)


def test_errors():
    with pytest.raises(OddCharacteristic):
        nonlinearity(identity(make_field(3, 2)))
    with pytest.raises(DomainTooLarge):
        walsh(identity(make_field(2, 13)))
