import numpy as np
import pytest

from cdulab.constructions import (
    PieceSpec,
    concat,
    gold,
    gold_shift,
    gold_shift_closed_form,
    inverse_perm,
    kasami,
    kasami_modified,
    piecewise_chain,
    piecewise_three,
    piecewise_two,
    power_map,
    random_affine_perm,
    random_subfield_closed,
)
from cdulab.errors import (
    AlphaOutsideSubfield,
    AlphaZero,
    BadChain,
    BaseFieldMismatch,
    NonCoprimeDegrees,
    OddCharacteristic,
    SubfieldEscape,
)
from cdulab.func import FunctionTable, UnivariatePoly, from_poly, identity, is_permutation
from cdulab.gf import DualProjection, SubfieldView, make_field

from oracles import naive_cddt, naive_delta


def test_power_maps_basic():
    ctx = make_field(2, 5)
    g = gold(ctx, 1)
    assert is_permutation(g) and g.meta["t"] == 1
    assert kasami(ctx, 1) == g.with_meta(kind="kasami", k=1)
    K = kasami(make_field(2, 6), 2)
    assert K(0) == 0 and K(1) == 1
    with pytest.raises(OddCharacteristic):
        gold(make_field(3, 2), 1)


@pytest.mark.parametrize("n,build,expected", [
    (5, lambda c: gold(c, 1), 2),
    (6, lambda c: gold(c, 2), 4),
    (6, lambda c: kasami(c, 2), 4),
    (4, inverse_perm, 4),
    (5, inverse_perm, 2),
])
def test_known_uniformities_against_oracle(n, build, expected):
    ctx = make_field(2, n)
    F = build(ctx)
    assert naive_delta(list(F.values), 1, 2, n, list(ctx.modulus)) == expected


def test_inverse_involution():
    ctx = make_field(3, 3)
    inv = inverse_perm(ctx)
    assert inv(1) == 1
    assert np.array_equal(inv.values[inv.values], ctx.elements())


def _selector_poly(ctx, s):
    # (x^{p^s} - x)^{q-1}: 0 on the subfield, 1 off it
    x = UnivariatePoly.monomial(ctx, 1)
    return (UnivariatePoly.monomial(ctx, ctx.p**s) - x) ** (ctx.q - 1)


@pytest.mark.parametrize("p,n,s", [(2, 6, 3), (2, 6, 2), (3, 4, 2), (2, 8, 4)])
def test_piecewise_two_polynomial_identity(p, n, s):
    ctx = make_field(p, n)
    view = SubfieldView(ctx, s)
    rng = np.random.default_rng(n + s)
    f = random_subfield_closed(view, rng)
    g = FunctionTable(ctx, rng.integers(0, ctx.q, ctx.q))
    F = piecewise_two(f, g, s)
    from cdulab.func import interpolate
    fp, gp = interpolate(f), interpolate(g)
    poly = fp + (gp - fp) * _selector_poly(ctx, s)
    assert from_poly(ctx, poly) == F
    assert piecewise_two(f, f, s) == f


def test_piecewise_two_escape():
    ctx = make_field(2, 4)
    with pytest.raises(SubfieldEscape):
        piecewise_two(FunctionTable(ctx, np.full(16, 2)), identity(ctx), 2)


def test_piecewise_three_populations():
    ctx = make_field(2, 6)
    f = FunctionTable(ctx, np.zeros(64))
    g = FunctionTable(ctx, np.ones(64))
    h = FunctionTable(ctx, np.full(64, 5))
    F = piecewise_three(f, g, h, s=3, t=2)
    assert np.bincount(F.values, minlength=6)[[0, 1, 5]].tolist() == [4, 6, 54]
    # prime-field points take the f branch
    assert F(0) == 0 and F(1) == 0
    assert piecewise_three(f, f, f, 3, 2) == f
    with pytest.raises(NonCoprimeDegrees):
        piecewise_three(f, g, h, s=2, t=2)


def test_chain_populations_and_errors():
    ctx = make_field(2, 4)
    pieces = [(1, FunctionTable(ctx, np.zeros(16))), (2, FunctionTable(ctx, np.ones(16))),
              (4, FunctionTable(ctx, np.full(16, 9)))]
    F = piecewise_chain(PieceSpec(pieces))
    assert np.bincount(F.values)[[0, 1, 9]].tolist() == [2, 2, 12]
    with pytest.raises(BadChain):
        piecewise_chain(PieceSpec([(1, pieces[0][1]), (3, pieces[2][1])]))
    with pytest.raises(BadChain):
        piecewise_chain(PieceSpec([(2, pieces[0][1])]))
    with pytest.raises(BadChain):
        piecewise_chain(PieceSpec([(2, FunctionTable(ctx, np.full(16, 9))), (4, pieces[2][1])]))


def test_chain_two_levels_is_piecewise_two():
    ctx = make_field(3, 3)
    f, g = identity(ctx), power_map(ctx, 2)
    F = piecewise_chain(PieceSpec([(1, f), (3, g)]))
    assert F == piecewise_two(f, g, 1)
    # direct evaluation on a few points
    for x in (0, 1, 2):
        assert F(x) == x
    for x in (3, 10, 26):
        assert F(x) == ctx.pow(x, 2)


@pytest.mark.parametrize("n,s,k", [(6, 2, 1), (6, 3, 5), (8, 4, 3), (9, 3, 2)])
def test_gold_shift_forms_agree(n, s, k):
    ctx = make_field(2, n)
    view = SubfieldView(ctx, s)
    g = gold(ctx, k)
    for alpha in view.elements[1:]:
        G = gold_shift(ctx, s, k, int(alpha))
        assert G == gold_shift_closed_form(ctx, s, k, int(alpha)).with_meta(**G.meta)
        assert np.array_equal(G.values[view.mask], ctx.add(g.values[view.mask], int(alpha)))
        assert np.array_equal(G.values[~view.mask], g.values[~view.mask])


def test_gold_shift_alpha_errors():
    ctx = make_field(2, 6)
    with pytest.raises(AlphaZero):
        gold_shift(ctx, 2, 1, 0)
    with pytest.raises(AlphaOutsideSubfield):
        gold_shift(ctx, 2, 1, 2)


def _proj(ctx, r, seed):
    from cdulab.errors import SingularBasis
    base = SubfieldView(ctx, r)
    rng = np.random.default_rng(seed)
    while True:
        try:
            return DualProjection(ctx, base, rng.integers(1, ctx.q, ctx.n // r))
        except SingularBasis:
            pass


def test_concat_identity_and_coordinatewise():
    ctx = make_field(3, 2)
    proj = _proj(ctx, 1, 0)
    ident = identity(ctx)
    assert np.array_equal(concat(proj, [ident, ident]).values, ctx.elements())
    sq = power_map(ctx, 2)
    F = concat(proj, [sq, sq])
    b1, b2 = proj.beta
    for a in range(3):
        for b in range(3):
            x = ctx.add(ctx.mul(b1, a), ctx.mul(b2, b))
            assert F(x) == ctx.add(ctx.mul(b1, a * a % 3), ctx.mul(b2, b * b % 3))


def test_concat_base_mismatch():
    ctx = make_field(3, 2)
    proj = _proj(ctx, 1, 0)
    with pytest.raises(BaseFieldMismatch):
        concat(proj, [identity(ctx)])
    with pytest.raises(BaseFieldMismatch):
        concat(proj, [identity(ctx), FunctionTable(ctx, np.full(9, 5))])


@pytest.mark.parametrize("p,n,r", [(3, 2, 1), (2, 4, 2), (3, 4, 2)])
def test_concat_decoupling_exhaustive(p, n, r):
    ctx = make_field(p, n)
    proj = _proj(ctx, r, p + n)
    view = proj.base
    rng = np.random.default_rng(n)
    fs = [random_subfield_closed(view, rng) for _ in range(n // r)]
    F = concat(proj, fs)
    co = proj.coords(ctx.elements())
    mod = list(ctx.modulus)
    for c in view.elements:
        c = int(c)
        if c == 1:
            continue
        if ctx.q <= 16:
            big = np.array(naive_cddt(list(F.values), c, p, n, mod))
        else:
            from cdulab.engine import c_ddt
            big = c_ddt(F, c).counts
        for a in range(ctx.q):
            for b in range(ctx.q):
                assert big[a][b] == _sub_count(ctx, fs, view, c, co[a], co[b])


def _sub_count(ctx, fs, view, c, ak, bk):
    out = 1
    S = view.elements
    for f, a, b in zip(fs, ak, bk):
        lhs = ctx.sub(f.values[ctx.add(S, int(a))], ctx.mul(c, f.values[S]))
        out *= int(np.count_nonzero(lhs == int(b)))
    return out


def test_kasami_modified_shape():
    ctx = make_field(2, 6)
    view = SubfieldView(ctx, 2)
    rng = np.random.default_rng(0)
    A1, A2 = random_affine_perm(view, rng), random_affine_perm(view, rng)
    F = kasami_modified(ctx, 2, 2, A1, A2)
    K = kasami(ctx, 2)
    assert np.array_equal(F.values[~view.mask], K.values[~view.mask])
    assert view.mask[F.values[view.mask]].all()
