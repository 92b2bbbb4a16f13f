"""Acceptance criteria, one test per criterion.

Each test prints a single ``[criterion N] PASS|FAIL`` line (also collected in the
terminal summary) with the measured runtime, then asserts both the criterion
and its runtime budget.
"""

import time
from math import gcd

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from cdulab.constructions import gold, random_subfield_closed
from cdulab.engine import c_ddt, c_uniformity, walsh
from cdulab.errors import SingularBasis
from cdulab.func import FunctionTable, from_poly
from cdulab.gf import DualProjection, SubfieldView, make_field
from cdulab.verify import Claim, check_no_outside_solutions, verify_bound
from cdulab.verify.claims import Ingredients

from oracles import naive_cddt


def report(num, ok, start, budget, detail=""):
    elapsed = time.perf_counter() - start
    ok = bool(ok) and elapsed < budget
    line = f"[criterion {num}] {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s, budget {budget:.0f}s) {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


def test_criterion_01_oracle_equivalence():
    t0 = time.perf_counter()
    mismatches, cells = 0, 0
    for p, n in ((2, 4), (3, 2)):
        ctx = make_field(p, n)
        rng = np.random.default_rng(2024 + p)
        mod = list(ctx.modulus)
        for _ in range(25):
            F = FunctionTable(ctx, rng.integers(0, ctx.q, ctx.q))
            for c in range(ctx.q):
                got = c_ddt(F, c).counts
                want = np.array(naive_cddt(list(F.values), c, p, n, mod))
                mismatches += int(np.count_nonzero(got != want))
                cells += got.size
    assert report(1, mismatches == 0, t0, 10, f"{cells} cells, {mismatches} mismatches")


def test_criterion_02_gold_bound():
    t0 = time.perf_counter()
    worst, checked = None, 0
    for n in range(4, 11):
        ctx = make_field(2, n)
        for k in range(1, n):
            G = gold(ctx, k)
            bound = 2 ** gcd(k, n) + 1
            for c in range(2, ctx.q):
                d = c_uniformity(G, c, witness_limit=1).delta
                checked += 1
                if d > bound and worst is None:
                    worst = (n, k, c, d, bound)
    assert report(2, worst is None, t0, 120, f"{checked} (n,k,c) triples; first violation {worst}")


def _all_pass(claims):
    reps = [verify_bound(Claim(cid, params)) for cid, params in claims]
    entries = sum(len(r.entries) for r in reps)
    worst = max((r.observed for r in reps), default=None)
    return all(r.passed for r in reps), entries, worst, reps


def test_criterion_03_pante_gold():
    t0 = time.perf_counter()
    claims = []
    for n, ss in ((6, (2, 3)), (8, (2, 4))):
        for s in ss:
            for k in range(1, n):
                if gcd(k, n) == 1:
                    claims.append(("THM_PANTE_GOLD", {"p": 2, "n": n, "s": s, "k": k, "alpha": "all", "cs": "ne1"}))
    ok, entries, worst, _ = _all_pass(claims)
    assert report(3, ok, t0, 120, f"{entries} (k,alpha,c) cases, max delta {worst} <= 9")


def test_criterion_04_gold_th():
    t0 = time.perf_counter()
    ok9, e9, w9, _ = _all_pass([("THM_GOLD_6", {"p": 2, "n": 9, "s": 3, "k": 1, "alpha": "all"})])
    ok15, e15, w15, _ = _all_pass([("THM_GOLD_5", {"p": 2, "n": 15, "s": 3, "k": 1, "alpha": ["sub(3,1)"]})])
    assert report(4, ok9 and ok15, t0, 600,
                  f"n=9: {e9} cases max {w9} <= 6; n=15: {e15} cases max {w15} <= 5")


def test_criterion_05_pcn_gold():
    t0 = time.perf_counter()
    ok, entries, worst, _ = _all_pass([("THM_GOLD_PCN_T", {"p": 2, "n": 9, "s": 3, "k": 3, "alpha": "all"})])
    assert report(5, ok and entries == 49, t0, 30, f"{entries} (alpha,c) cases, max delta {worst} <= 3")


def test_criterion_06_gold12_no_outside():
    t0 = time.perf_counter()
    ctx = make_field(2, 12)
    F = gold(ctx, 2)
    d1 = c_uniformity(F, 1).delta
    sub = check_no_outside_solutions(F, 1, 4, "sub")
    gld = check_no_outside_solutions(F, 1, 4, "gold")
    ok = d1 == 4 and sub.passed and gld.passed and not sub.exploratory and not gld.exploratory
    assert report(6, ok, t0, 30, f"delta_F,1 = {d1}; outside solutions sub={sub.observed} gold={gld.observed}")


def test_criterion_07_gold15_prime_orbit():
    t0 = time.perf_counter()
    ctx = make_field(2, 15)
    F = gold(ctx, 1)
    ing = Ingredients()
    applied, outside, all_ok = [], 0, True
    for c in ctx.subfield_elements(3):
        c = int(c)
        if c == 1:
            continue
        rep = check_no_outside_solutions(F, c, 3, "cdiffH2", exploratory=True, ing=ing)
        if rep.exploratory:
            continue  # prime-orbit condition fails for this c
        applied.append(c)
        outside += rep.observed
        all_ok &= rep.passed
    ok = all_ok and len(applied) > 0
    assert report(7, ok, t0, 300, f"condition holds for c in {applied}; outside solutions {outside}")


def test_criterion_08_kasami():
    t0 = time.perf_counter()
    small = verify_bound(Claim("THM_KASAMI", {"p": 2, "n": 6, "s": 2, "k": 2, "pairs": 5, "seed": 8,
                                              "checks": ["perm", "delta", "nl"]}))
    t1 = time.perf_counter()
    big = verify_bound(Claim("THM_KASAMI", {"p": 2, "n": 18, "s": 6, "k": 2, "pairs": 1, "seed": 8,
                                            "checks": ["perm", "degree"]}))
    t_big = time.perf_counter() - t1
    deltas = [e["observed"] for e in small.entries if e["check"] == "delta_{F,1}"]
    nls = [e["observed"] for e in small.entries if e["check"] == "nonlinearity"]
    deg = [e["observed"] for e in big.entries if e["check"] == "algebraic degree"]
    ok = small.passed and big.passed and len(deltas) == 5 and deg == [17] and t_big < 120
    assert report(8, ok, t0, 150, f"n=6 deltas {deltas} <= 6, NL {nls} >= 20; n=18 degree {deg} "
                                  f"({t_big:.1f}s)")


def test_criterion_09_concat():
    t0 = time.perf_counter()
    claims = []
    for d1 in (2, 3, 5):
        for d2 in (2, 3, 5):
            claims.append(("THM_CONCAT", {"p": 7, "n": 2, "base": 1,
                                          "fs": [{"kind": "power", "d": d1}, {"kind": "power", "d": d2}]}))
    claims.append(("THM_CONCAT", {"p": 2, "n": 4, "base": 2,
                                  "fs": [{"kind": "power", "d": 2}, {"kind": "power", "d": 3}]}))
    claims.append(("THM_CONCAT", {"p": 2, "n": 4, "base": 2,
                                  "fs": [{"kind": "power", "d": 2}, {"kind": "identity"}]}))
    ok, entries, _, reps = _all_pass(claims)
    pcn = sum(e["pcn_corollary"] for r in reps for e in r.entries)
    pcn_ok = all(e["observed"] == 1 for r in reps for e in r.entries if e["pcn_corollary"])
    assert report(9, ok and pcn_ok and pcn > 0, t0, 60,
                  f"{entries} (pair,c) cases exact; PcN corollary applied {pcn} times")


# ---------------------------------------------------------------------------
# criterion 10: randomized instances of the piecewise bounds
# ---------------------------------------------------------------------------

def _subfield_coeff_poly(ctx, s, rng, terms=3):
    S = ctx.subfield_elements(s)
    exps = rng.choice(np.arange(1, ctx.q), size=terms, replace=False)
    return from_poly(ctx, {int(e): int(rng.choice(S[1:])) for e in exps})


def _g_with_subfield_coeffs(ctx, s, rng):
    kind = rng.integers(0, 3)
    if kind == 0:
        return _subfield_coeff_poly(ctx, s, rng)
    if kind == 1:
        d = int(rng.integers(2, ctx.q - 1))
        return from_poly(ctx, {d: 1})
    return from_poly(ctx, {2 if ctx.p > 2 else 3: 1})


def _cs(ctx, pool, rng, cap=24):
    pool = [int(c) for c in pool]
    if len(pool) <= cap:
        return pool
    return sorted(int(c) for c in rng.choice(pool, size=cap, replace=False))


T2_FIELDS = [(2, 3, 1), (2, 4, 2), (2, 6, 2), (2, 6, 3), (2, 8, 4), (3, 3, 1), (3, 4, 2), (3, 4, 1)]
THREE_FIELDS = [(2, 6, 2, 3), (2, 6, 3, 2), (3, 6, 2, 3), (3, 6, 3, 2)]
MAIN_FIELDS = [(2, 3, 1), (2, 6, 2), (2, 6, 3), (2, 8, 4), (3, 3, 1), (3, 4, 2), (3, 4, 1)]


def _t2_instances(rng, count):
    out = []
    for i in range(count):
        p, n, s = T2_FIELDS[i % len(T2_FIELDS)]
        ctx = make_field(p, n)
        f = random_subfield_closed(SubfieldView(ctx, s), rng)
        g = FunctionTable(ctx, rng.integers(0, ctx.q, ctx.q))
        cs = _cs(ctx, [c for c in range(ctx.q) if c != 1], rng)
        out.append(("THM_T2_TWO_PIECE", {"ctx": ctx, "s": s, "f": f, "g": g, "cs": cs}))
    return out


def _three_instances(rng, count):
    out = []
    for i in range(count):
        p, n, s, t = THREE_FIELDS[i % len(THREE_FIELDS)]
        ctx = make_field(p, n)
        f = random_subfield_closed(SubfieldView(ctx, t), rng)
        g = random_subfield_closed(SubfieldView(ctx, s), rng)
        h = FunctionTable(ctx, rng.integers(0, ctx.q, ctx.q))
        cs = _cs(ctx, [c for c in range(ctx.q) if c != 1], rng, cap=12) + [0]
        out.append(("THM_THREE_PIECE", {"ctx": ctx, "s": s, "t": t, "f": f, "g": g, "h": h,
                                         "cs": sorted(set(cs))}))
    return out


def _main_instances(rng, count, claim):
    out = []
    for i in range(count):
        p, n, s = MAIN_FIELDS[i % len(MAIN_FIELDS)]
        ctx = make_field(p, n)
        f = random_subfield_closed(SubfieldView(ctx, s), rng)
        g = _g_with_subfield_coeffs(ctx, s, rng)
        S = ctx.subfield_elements(s)
        if claim == "THM_MAIN":
            cs = [int(c) for c in S if c != 1]
        else:
            cs = _cs(ctx, [c for c in range(2, ctx.q)], rng)
        out.append((claim, {"ctx": ctx, "s": s, "f": f, "g": g, "cs": cs}))
    return out


def test_criterion_10_random_bounds():
    t0 = time.perf_counter()
    rng = np.random.default_rng(10)
    families = {
        "THM_T2_TWO_PIECE": _t2_instances(rng, 50),
        "THM_THREE_PIECE": _three_instances(rng, 50),
        "THM_MAIN": _main_instances(rng, 50, "THM_MAIN"),
        "REMARK_REDUCE": _main_instances(rng, 50, "REMARK_REDUCE"),
    }
    failures, routes, cases = [], {}, 0
    for name, inst in families.items():
        for cid, params in inst:
            rep = verify_bound(Claim(cid, params))
            assert all(ok for _, ok in rep.hypothesis_checks)
            cases += len(rep.entries)
            if not rep.passed:
                failures.append((cid, rep.bound, rep.observed))
            if cid == "THM_MAIN":
                for e in rep.entries:
                    routes[e["route"]] = routes.get(e["route"], 0) + 1
    both_ways = routes.get("THM_MAIN", 0) > 0 and sum(v for k, v in routes.items() if k != "THM_MAIN") > 0
    ok = not failures and both_ways
    assert report(10, ok, t0, 300, f"200 instances, {cases} c-cases, failures {failures[:3]}, routes {routes}")


# ---------------------------------------------------------------------------
# criterion 11: property suites
# ---------------------------------------------------------------------------

def _random_basis(ctx, base, rng):
    while True:
        try:
            return DualProjection(ctx, base, rng.integers(1, ctx.q, ctx.n // base.s))
        except SingularBasis:
            continue


def test_criterion_11_properties():
    t0 = time.perf_counter()
    rng = np.random.default_rng(11)
    problems = []
    tables = 0
    for p, n in ((2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (2, 6)):
        ctx = make_field(p, n)
        for _ in range(3):
            F = FunctionTable(ctx, rng.integers(0, ctx.q, ctx.q))
            hist = np.sort(np.bincount(F.values, minlength=ctx.q))
            for c in range(ctx.q):
                counts = c_ddt(F, c).counts
                tables += 1
                if not np.all(counts.sum(axis=1) == ctx.q):
                    problems.append(("row sum", p, n, c))
                if c == 0 and not all(np.array_equal(np.sort(r), hist) for r in counts):
                    problems.append(("c=0 histogram", p, n))
                if p == 2 and c == 1 and np.any(counts[1:] % 2):
                    problems.append(("even counts", n))
            if p == 2 and not walsh(F).parseval_ok():
                problems.append(("parseval", n))
    projections = 0
    for p, n, r in ((2, 4, 1), (2, 4, 2), (2, 6, 2), (2, 6, 3), (2, 8, 4), (2, 12, 4), (2, 12, 6), (3, 4, 2),
                    (3, 6, 3), (3, 6, 2), (5, 4, 2), (7, 4, 2), (2, 12, 3)):
        ctx = make_field(p, n)
        proj = _random_basis(ctx, SubfieldView(ctx, r), rng)
        x = ctx.elements()
        projections += 1
        if not np.array_equal(proj.reconstruct(proj.coords(x)), x):
            problems.append(("reconstruction", p, n, r))
    assert report(11, not problems, t0, 60,
                  f"{tables} DDTs, {projections} dual projections, problems {problems[:3]}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
