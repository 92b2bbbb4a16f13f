import numpy as np
import pytest
from hypothesis import given, strategies as st

from cdulab.constructions import gold, inverse_perm, kasami, power_map
from cdulab.engine import (
    c_ddt,
    c_uniformity,
    c_uniformity_rows,
    ddt_to_csv,
    derivative_values,
    row_maxima,
    scan_outside,
    solution_locus,
    subfield_fiber_max,
    subfield_uniformity,
    uniformity_from_ddt,
    uniformity_profile,
)
from cdulab.errors import DomainTooLarge, NotADivisor
from cdulab.func import FunctionTable, fiber_sizes, identity
from cdulab.gf import SubfieldView, make_field

from oracles import naive_cddt


def _corpus(ctx, count, seed):
    rng = np.random.default_rng(seed)
    out = [identity(ctx), inverse_perm(ctx), power_map(ctx, 2), power_map(ctx, 3)]
    while len(out) < count:
        out.append(FunctionTable(ctx, rng.integers(0, ctx.q, ctx.q)))
    return out


@pytest.mark.parametrize("p,n", [(2, 4), (3, 2)])
def test_cddt_matches_triple_loop(p, n):
    ctx = make_field(p, n)
    mod = list(ctx.modulus)
    for F in _corpus(ctx, 6, p + n):
        for c in range(ctx.q):
            got = c_ddt(F, c).counts
            assert np.array_equal(got, np.array(naive_cddt(list(F.values), c, p, n, mod)))


def test_identity_c0_all_ones():
    ctx = make_field(2, 4)
    assert np.all(c_ddt(identity(ctx), 0).counts == 1)


def test_x2_gf7_pn():
    ctx = make_field(7, 1)
    F = power_map(ctx, 2)
    counts = c_ddt(F, 1).counts
    assert counts[1:].max() == 1
    rep = c_uniformity(F, 1)
    assert rep.delta == 1 and rep.a0_excluded


def test_gold5_values():
    ctx = make_field(2, 5)
    G = gold(ctx, 1)
    assert c_uniformity(G, 1).delta == 2
    for c in range(2, ctx.q):
        assert c_uniformity(G, c).delta <= 3


def test_permutation_c0_is_one():
    ctx = make_field(3, 3)
    assert c_uniformity(inverse_perm(ctx), 0).delta == 1


@pytest.mark.parametrize("p,n", [(2, 5), (3, 3), (5, 2)])
def test_row_sums_and_c0_rows(p, n):
    ctx = make_field(p, n)
    rng = np.random.default_rng(n)
    F = FunctionTable(ctx, rng.integers(0, ctx.q, ctx.q))
    for c in rng.integers(0, ctx.q, 4).tolist() + [0, 1]:
        assert np.all(c_ddt(F, c).counts.sum(axis=1) == ctx.q)
    rows = c_ddt(F, 0).counts
    hist = np.sort(fiber_sizes(F))
    for a in range(ctx.q):
        assert np.array_equal(np.sort(rows[a]), hist)
    assert c_uniformity(F, 0).delta == fiber_sizes(F).max()


@pytest.mark.parametrize("n", [3, 4, 5])
def test_even_counts_char2(n):
    ctx = make_field(2, n)
    rng = np.random.default_rng(n)
    F = FunctionTable(ctx, rng.integers(0, ctx.q, ctx.q))
    assert np.all(c_ddt(F, 1).counts[1:] % 2 == 0)


def test_pcn_equivalences():
    ctx = make_field(3, 3)
    for c in range(2, ctx.q):
        F = power_map(ctx, 2)
        counts = c_ddt(F, c).counts
        pcn = c_uniformity(F, c).delta == 1
        assert pcn == bool(np.all(counts == 1))


def test_witnesses_lexicographic():
    ctx = make_field(2, 4)
    F = gold(ctx, 1)
    rep = c_uniformity(F, 1)
    counts = c_ddt(F, 1).counts
    hits = [(a, b) for a in range(1, 16) for b in range(16) if counts[a, b] == rep.delta]
    assert rep.witnesses == hits[: len(rep.witnesses)]
    assert rep.witnesses[0] == hits[0]
    short = c_uniformity(F, 1, witness_limit=2)
    assert short.witnesses == hits[:2] and short.truncated


def test_a0_attains_flag():
    ctx = make_field(2, 3)
    F = FunctionTable(ctx, np.zeros(8))
    rep = c_uniformity(F, 0)
    assert rep.delta == 8 and rep.a0_attains and not rep.a0_excluded


def test_streaming_matches_full():
    ctx = make_field(2, 7)
    F = kasami(ctx, 2)
    for c in (0, 1, 5, 77):
        full = uniformity_from_ddt(c_ddt(F, c))
        rep, rmax = c_uniformity_rows(F, c)
        assert rep.delta == full.delta and rep.witnesses == full.witnesses
        assert np.array_equal(rmax, c_ddt(F, c).counts.max(axis=1))


def test_parallel_rows_deterministic():
    ctx = make_field(2, 10)
    F = gold(ctx, 3)
    assert np.array_equal(row_maxima(F, 5, workers=2), row_maxima(F, 5, workers=1))


def test_profile():
    ctx = make_field(2, 4)
    G = gold(ctx, 1)
    prof = uniformity_profile(G, range(ctx.q))
    assert list(prof) == list(range(16))
    assert prof[1].delta == 2
    assert uniformity_profile(G, []) == {}
    assert uniformity_profile(inverse_perm(ctx), {0})[0].delta == 1


def test_locus_partition():
    ctx = make_field(2, 6)
    F = gold(ctx, 1)
    counts = c_ddt(F, 3).counts
    rng = np.random.default_rng(0)
    for a, b in rng.integers(0, 64, (20, 2)):
        loc = solution_locus(F, 3, int(a), int(b), 2)
        assert loc.count(int(a), int(b)) == counts[a, b]
        mask = ctx.subfield_mask(2)
        assert all(mask[x] for x in loc.inside[(a, b)])
        assert not any(mask[x] for x in loc.outside[(a, b)])
    ident = solution_locus(identity(ctx), 0, 5, 9, 3)
    assert ident.count(5, 9) == 1
    with pytest.raises(NotADivisor):
        solution_locus(F, 1, 1, 1, 4)


def test_gold12_no_outside_solution():
    ctx = make_field(2, 12)
    F = gold(ctx, 2)
    assert solution_locus(F, 1, 1, 1, 4).outside_total == 0
    S = ctx.subfield_elements(4)
    scan = scan_outside(F, 1, 4, S[S != 0], S)
    assert scan.outside_count == 0


def test_scan_outside_counts():
    ctx = make_field(2, 6)
    F = gold(ctx, 1)
    S = ctx.subfield_elements(2)
    scan = scan_outside(F, 2, 2, S, S)
    total = 0
    for a in S:
        for b in S:
            total += solution_locus(F, 2, int(a), int(b), 2).outside_total
    assert scan.outside_count == total
    assert scan.pairs_checked == 16


def test_subfield_uniformity():
    ctx = make_field(2, 6)
    view = SubfieldView(ctx, 3)
    F = gold(ctx, 1)
    small = make_field(2, 3)
    # gold(3,1) restricted to the subfield is the gold map of GF(8)
    assert subfield_uniformity(F, 1, view) == c_uniformity(gold(small, 1), 1).delta
    assert subfield_fiber_max(F, view) == 1


def test_derivative_values():
    ctx = make_field(3, 2)
    F = power_map(ctx, 2)
    d = derivative_values(F, 2, 4)
    x = ctx.elements()
    assert np.array_equal(d, ctx.sub(F.values[ctx.add(x, 4)], ctx.mul(2, F.values)))


def test_ddt_csv():
    ctx = make_field(2, 2)
    ddt = c_ddt(identity(ctx), 0)
    text = ddt_to_csv(ddt)
    lines = text.strip().split("\n")
    assert lines[0] == "a,0,1,2,3"
    assert lines[1] == "0,1,1,1,1"
    with pytest.raises(DomainTooLarge):
        ddt_to_csv(c_ddt(identity(make_field(2, 9)), 0))
    with pytest.raises(DomainTooLarge):
        c_ddt(identity(make_field(2, 13)), 0)


def test_report_json():
    ctx = make_field(2, 4)
    j = c_uniformity(gold(ctx, 1), 1).to_json()
    assert j["c"] == 1 and j["delta"] == 2 and isinstance(j["witnesses"][0], list)


@given(st.lists(st.integers(0, 8), min_size=9, max_size=9), st.integers(0, 8))
def test_property_row_sums_gf9(vals, c):
    ctx = make_field(3, 2)
    F = FunctionTable(ctx, vals)
    counts = c_ddt(F, c).counts
    assert np.all(counts.sum(axis=1) == 9)
    assert c_uniformity(F, c).delta >= 1
