"""Claim registry: each entry builds a construction from params, validates the
hypotheses of the result it instantiates, evaluates the bound from exhaustively
computed ingredient uniformities and compares it with the exhaustive count.

Params are JSON-friendly.  The field comes from ``p``/``n``/``modulus`` (or a
``field`` object); piece functions are construction specs (see ``cdulab.dsl``)
or FunctionTable objects when called from Python.  ``cs`` selects the c values:
a list of elements, ``"all"``, ``"ne1"``, ``"nonzero_ne1"``, or ``"sub:d"`` /
``"sub:d:ne1"`` / ``"sub:d:nonzero_ne1"`` for GF(p^d).
"""

from __future__ import annotations

import re
from math import gcd
from typing import Callable

import numpy as np

from .. import constructions as cons
from ..dsl import build, parse_element
from ..engine.cddt import c_uniformity_rows, row_maxima, scan_outside, subfield_fiber_max, subfield_uniformity
from ..engine.walsh import nonlinearity
from ..errors import CoefficientsNotInSubfield, ConfigError, HypothesisViolation
from ..func import FunctionTable, algebraic_degree, fiber_sizes
from ..gf.field import FieldCtx, field_from_json, make_field
from ..gf.linearized import DualProjection
from ..gf.subfield import SubfieldView
from . import hypotheses as H
from .report import Claim, Hypotheses, VerificationReport, aggregate

WITNESS_LIMIT = 8


# ---------------------------------------------------------------------------
# params helpers
# ---------------------------------------------------------------------------

def field_of(params: dict) -> FieldCtx:
    if "ctx" in params and isinstance(params["ctx"], FieldCtx):
        return params["ctx"]
    if "field" in params:
        return field_from_json(params["field"])
    try:
        return make_field(int(params["p"]), int(params["n"]), params.get("modulus"))
    except KeyError as exc:
        raise ConfigError(f"claim params need p and n (missing {exc})") from exc


def piece(ctx: FieldCtx, spec) -> FunctionTable:
    if isinstance(spec, FunctionTable):
        if spec.ctx != ctx:
            raise ConfigError("piece function is over a different field")
        return spec
    return build(ctx, spec)


_SUBSET = re.compile(r"^sub:(\d+)(?::(ne1|nonzero_ne1))?$")


def parse_cset(ctx: FieldCtx, spec) -> list[int]:
    if isinstance(spec, (list, tuple)):
        cs = [parse_element(ctx, c) for c in spec]
    elif isinstance(spec, (int, np.integer)):
        cs = [parse_element(ctx, spec)]
    elif spec in ("all", "ne1", "nonzero_ne1"):
        cs = list(range(ctx.q))
        if spec != "all":
            cs.remove(1)
        if spec == "nonzero_ne1":
            cs.remove(0)
    elif isinstance(spec, str) and _SUBSET.match(spec):
        m = _SUBSET.match(spec)
        d = int(m.group(1))
        ctx.check_divisor(d)
        cs = [int(c) for c in ctx.subfield_elements(d)]
        if m.group(2):
            cs.remove(1)
        if m.group(2) == "nonzero_ne1":
            cs.remove(0)
    else:
        raise ConfigError(f"cannot parse c-set {spec!r}")
    return sorted(set(cs))


def parse_alphas(ctx: FieldCtx, spec, s: int) -> list[int]:
    if spec == "all":
        return [int(a) for a in ctx.subfield_elements(s) if a != 0]
    if isinstance(spec, (list, tuple)):
        return [parse_element(ctx, a) for a in spec]
    return [parse_element(ctx, spec)]


def _jsonable(v):
    if isinstance(v, FunctionTable):
        return {"kind": v.meta.get("kind", "table"), "meta": _jsonable(v.meta)}
    if isinstance(v, FieldCtx):
        return v.spec.to_json()
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.integer):
        return int(v)
    return v


# ---------------------------------------------------------------------------
# exhaustive ingredients
# ---------------------------------------------------------------------------

class Ingredients:
    """Memoized exhaustive uniformities of ingredient functions."""

    def __init__(self, workers: int = 1):
        self.workers = workers
        self._cache: dict = {}
        self._keep: list = []

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def delta(self, F: FunctionTable, c: int) -> int:
        """delta_{F,c} over the whole field."""
        self._keep.append(F)

        def go():
            rm = row_maxima(F, c, self.workers)
            return int((rm[1:] if int(c) == 1 else rm).max())
        return self._memo(("d", id(F), int(c)), go)

    def delta_sub(self, F: FunctionTable, c: int, view: SubfieldView) -> int:
        """delta_{F,c} with F viewed as an (s,s)-function; c must lie in the subfield."""
        self._keep.append(F)
        return self._memo(("ds", id(F), int(c), view.s), lambda: subfield_uniformity(F, c, view))

    def fiber(self, F: FunctionTable) -> int:
        self._keep.append(F)
        return self._memo(("f", id(F)), lambda: int(fiber_sizes(F).max()))

    def fiber_sub(self, F: FunctionTable, view: SubfieldView) -> int:
        self._keep.append(F)
        return self._memo(("fs", id(F), view.s), lambda: subfield_fiber_max(F, view))


def observe(F: FunctionTable, c: int, workers: int = 1):
    rep, rmax = c_uniformity_rows(F, c, WITNESS_LIMIT, workers)
    return rep, rmax


def _entry(c, bound, observed, witnesses=(), relation="<=", **extra) -> dict:
    bound, observed = int(bound), int(observed)
    if relation == "<=":
        ok, slack = observed <= bound, bound - observed
    elif relation == ">=":
        ok, slack = observed >= bound, observed - bound
    else:
        ok, slack = observed == bound, -abs(observed - bound)
    e = {"c": None if c is None else int(c), "bound": bound, "observed": observed, "slack": slack,
         "relation": relation, "pass": bool(ok), "witnesses": [list(map(int, w)) for w in witnesses]}
    e.update(extra)
    return e


def _cs_hyps(ctx, hyp: Hypotheses, cs, *, ne1=True, nonzero=False, sub=None):
    if ne1:
        hyp.check("c != 1", all(c != 1 for c in cs))
    if nonzero:
        hyp.check("c != 0", all(c != 0 for c in cs))
    if sub is not None:
        hyp.check(f"c in GF({ctx.p}^{sub})", all(ctx.in_subfield(c, sub) for c in cs))


def _divisor_hyp(ctx, hyp: Hypotheses, d: int, name: str = "s") -> bool:
    ok = hyp.check(f"{name} divides n", H.divides(d, ctx.n))
    if not ok:
        hyp.enforce()
    return ok


# ---------------------------------------------------------------------------
# two-piece (thm:t2), its c = 0 case and the reduced form
# ---------------------------------------------------------------------------

def _two_piece_setup(ctx, params, hyp):
    s = int(params["s"])
    _divisor_hyp(ctx, hyp, s)
    f, g = piece(ctx, params["f"]), piece(ctx, params["g"])
    hyp.check("n > 2", ctx.n > 2)
    hyp.check("f maps GF(p^s) into itself", H.subfield_closed(f, s))
    return s, f, g


def _views(ctx, s, params) -> list[SubfieldView]:
    views = [SubfieldView(ctx, s, params.get("basis"))]
    sweep = int(params.get("sweep_bases", 0))
    if sweep and views[0].m > 1:
        rng = np.random.default_rng(int(params.get("seed", 0)))
        tries = 0
        while len(views) < sweep + 1 and tries < 100 * sweep:
            tries += 1
            basis = [1] + [int(x) for x in rng.integers(1, ctx.q, views[0].m - 1)]
            try:
                views.append(SubfieldView(ctx, s, basis))
            except ConfigError:
                continue
    return views


def run_t2_two_piece(ctx, params, hyp, ing, opts, force_c0=False):
    s, f, g = _two_piece_setup(ctx, params, hyp)
    cs = [0] if force_c0 else parse_cset(ctx, params.get("cs", "ne1"))
    _cs_hyps(ctx, hyp, cs)
    hyp.enforce(opts["exploratory"])
    F = cons.piecewise_two(f, g, s)
    views = _views(ctx, s, params)
    sub_view = views[0]
    entries = []
    for c in cs:
        rep, _ = observe(F, c, opts["workers"])
        if c == 0:
            bound = ing.fiber_sub(f, sub_view) + ing.fiber(g)
            entries.append(_entry(c, bound, rep.delta, rep.witnesses, case="c=0"))
            continue
        dgc, dg0 = ing.delta(g, c), ing.fiber(g)
        per_basis = []
        for v in views:
            c1 = int(v.projection(c))
            b = max(ing.delta_sub(f, c1, v) + dgc, dgc + 2 * ctx.p**s * dg0)
            per_basis.append({"basis": list(v.basis), "c1": c1, "bound": b, "pass": rep.delta <= b})
        e = _entry(c, per_basis[0]["bound"], rep.delta, rep.witnesses, c1=per_basis[0]["c1"])
        if len(per_basis) > 1:
            e["per_basis"] = per_basis
        entries.append(e)
    return entries, [], "bound"


def run_t2_c0(ctx, params, hyp, ing, opts):
    return run_t2_two_piece(ctx, params, hyp, ing, opts, force_c0=True)


def run_remark_reduce(ctx, params, hyp, ing, opts):
    s, f, g = _two_piece_setup(ctx, params, hyp)
    hyp.check("g has coefficients in GF(p^s)", H.commutes_with_frobenius(g, s))
    cs = parse_cset(ctx, params.get("cs", "nonzero_ne1"))
    _cs_hyps(ctx, hyp, cs, nonzero=True)
    hyp.enforce(opts["exploratory"])
    F = cons.piecewise_two(f, g, s)
    view = SubfieldView(ctx, s, params.get("basis"))
    Q = ctx.p**s
    entries = []
    for c in cs:
        rep, _ = observe(F, c, opts["workers"])
        c1 = int(view.projection(c))
        cq = int(ctx.pow(c, Q - 1))
        cqi = int(ctx.inv(cq))
        dgc = ing.delta(g, c)
        lit = max(ing.delta_sub(f, c1, view) + dgc, dgc + 2 * ing.delta(g, cq))
        alt = max(ing.delta_sub(f, c1, view) + dgc, dgc + ing.delta(g, cq) + ing.delta(g, cqi))
        entries.append(_entry(c, lit, rep.delta, rep.witnesses, c1=c1, c_pow=cq, alt_bound=alt))
    return entries, [], "bound"


# ---------------------------------------------------------------------------
# chain
# ---------------------------------------------------------------------------

def chain_bounds(ctx, ks, fs, c, ing, views) -> tuple[int, int]:
    """(literal, recursive) readings of the chain bound for c != 0.

    literal:   delta_{f_t,c} + sum_{i<t} max{delta_{f_i,c^(i)}, 2p^{k_i} sum_{j=1}^{t-i-1} delta_{f_j,0}}
    recursive: B_t = delta_{f_t,c}, B_i = B_{i+1} + max{delta_{f_i,c^(i)}, 2p^{k_i} sum_{j>i} delta_{f_j,0}}
    """
    t = len(ks)
    fib = [ing.fiber_sub(f, v) if k < ctx.n else ing.fiber(f) for k, f, v in zip(ks, fs, views)]
    dc = [ing.delta_sub(f, int(v.projection(c)), v) for f, v in zip(fs[:-1], views[:-1])]
    top = ing.delta(fs[-1], c)
    literal = top + sum(max(dc[i], 2 * ctx.p ** ks[i] * sum(fib[: t - i - 2])) for i in range(t - 1))
    rec = top
    for i in range(t - 2, -1, -1):
        rec += max(dc[i], 2 * ctx.p ** ks[i] * sum(fib[i + 1:]))
    return literal, rec


def run_t2_chain(ctx, params, hyp, ing, opts):
    pcs = params["pieces"]
    ks = [int(pc["k"]) for pc in pcs]
    fs = [piece(ctx, pc["f"]) for pc in pcs]
    hyp.check("n > 2", ctx.n > 2)
    if not hyp.check("k_1 | k_2 | ... | k_t = n", H.valid_chain(ks, ctx.n)):
        hyp.enforce()
    hyp.check("t >= 2", len(ks) >= 2)
    hyp.check("f_i maps GF(p^k_i) into itself", all(H.subfield_closed(f, k) for k, f in zip(ks[:-1], fs[:-1])))
    cs = parse_cset(ctx, params.get("cs", "ne1"))
    _cs_hyps(ctx, hyp, cs)
    hyp.enforce(opts["exploratory"])
    F = cons.piecewise_chain(cons.PieceSpec(list(zip(ks, fs))))
    views = [SubfieldView(ctx, k) for k in ks]
    entries = []
    for c in cs:
        rep, _ = observe(F, c, opts["workers"])
        if c == 0:
            bound = sum(ing.fiber_sub(f, v) for f, v in zip(fs[:-1], views[:-1])) + ing.fiber(fs[-1])
            entries.append(_entry(c, bound, rep.delta, rep.witnesses, case="c=0"))
            continue
        lit, rec = chain_bounds(ctx, ks, fs, c, ing, views)
        e = _entry(c, max(lit, rec), rep.delta, rep.witnesses, literal_bound=lit, recursive_bound=rec,
                   literal_holds=rep.delta <= lit)
        entries.append(e)
    notes = ["bound asserted is max(literal, recursive); the piece written f_n is read as f_t"]
    return entries, notes, "bound"


# ---------------------------------------------------------------------------
# three pieces
# ---------------------------------------------------------------------------

def run_three_piece(ctx, params, hyp, ing, opts):
    s, t = int(params["s"]), int(params["t"])
    _divisor_hyp(ctx, hyp, s)
    _divisor_hyp(ctx, hyp, t, "t")
    f, g, h = (piece(ctx, params[k]) for k in ("f", "g", "h"))
    hyp.check("n > 2", ctx.n > 2)
    hyp.check("n = s t", ctx.n == s * t)
    if not hyp.check("gcd(s, t) = 1", H.coprime(s, t)):
        hyp.enforce()
    hyp.check("f maps GF(p^t) into itself", H.subfield_closed(f, t))
    hyp.check("g maps GF(p^s) into itself", H.subfield_closed(g, s))
    cs = parse_cset(ctx, params.get("cs", "ne1"))
    _cs_hyps(ctx, hyp, cs)
    hyp.enforce(opts["exploratory"])
    F = cons.piecewise_three(f, g, h, s, t)
    vt, vs = SubfieldView(ctx, t), SubfieldView(ctx, s)
    p = ctx.p
    df0, dg0, dh0 = ing.fiber_sub(f, vt), ing.fiber_sub(g, vs), ing.fiber(h)
    entries = []
    for c in cs:
        rep, _ = observe(F, c, opts["workers"])
        if c == 0:
            lit, sym = df0 + 2 * dg0, df0 + dg0 + dh0
            entries.append(_entry(c, max(lit, sym), rep.delta, rep.witnesses, literal_bound=lit,
                                  symmetric_bound=sym, literal_holds=rep.delta <= lit))
            continue
        c1, c1p = int(vt.projection(c)), int(vs.projection(c))
        dfc, dgc, dhc = ing.delta_sub(f, c1, vt), ing.delta_sub(g, c1p, vs), ing.delta(h, c)
        terms = [
            dfc + dgc + dhc,
            dfc + 2 * p**s * dh0 + dhc,
            1 + p**t * dh0 + min(p**t * dg0, p**s * df0) + dgc + dhc,
            (2 * p**t + 2 * p**s) * dh0 + dhc,
        ]
        entries.append(_entry(c, max(terms), rep.delta, rep.witnesses, c1=c1, c1_prime=c1p, terms=terms))
    notes = ["c = 0 asserts against max of the literal and symmetric readings"]
    return entries, notes, "bound"


# ---------------------------------------------------------------------------
# outside-solution scans and (H1)/(H2)
# ---------------------------------------------------------------------------

def _scan(F, c, s, a_set, b_set):
    return scan_outside(F, c, s, a_set, b_set, witness_limit=WITNESS_LIMIT)


def h1_h2_counts(g: FunctionTable, c: int, s: int):
    S = g.ctx.subfield_elements(s)
    h1 = _scan(g, 1, s, S[S != 0], S)
    h2 = _scan(g, c, s, S, S)
    return h1, h2


def check_h1_h2(g: FunctionTable, c: int, s: int) -> VerificationReport:
    ctx = g.ctx
    ctx.check_divisor(s)
    hyp = Hypotheses()
    hyp.check(f"c in GF({ctx.p}^{s})", ctx.in_subfield(int(c), s))
    hyp.check("c != 1", int(c) != 1)
    hyp.enforce()
    h1, h2 = h1_h2_counts(g, int(c), s)
    entries = [
        _entry(1, 0, h1.outside_count, h1.witnesses, hypothesis="H1", pairs=h1.pairs_checked),
        _entry(c, 0, h2.outside_count, h2.witnesses, hypothesis="H2", pairs=h2.pairs_checked),
    ]
    return aggregate("H1_H2", {"s": s, "c": int(c)}, hyp, entries, kind="scan")


_VARIANTS = ("sub", "subs2k", "subpcn", "cdiffH2", "gold", None)


def _variant_hyps(F, c, s, variant, hyp, ing):
    ctx = F.ctx
    m = ctx.n // s
    if variant in ("sub", "subs2k", "gold"):
        hyp.check("p = 2", ctx.p == 2)
        hyp.check("c = 1", c == 1)
    if variant == "sub":
        hyp.check("m odd", H.is_odd(m))
        hyp.check("delta_{F,1} <= 4", ing.delta(F, 1) <= 4)
    elif variant == "subs2k":
        d = ing.delta(F, 1)
        k = d // 2
        hyp.check("delta_{F,1} = 2k with k >= 2", d % 2 == 0 and k >= 2)
        hyp.check("m not divisible by any 2 <= t <= k", H.no_divisor_in_range(m, 2, k))
    elif variant == "subpcn":
        hyp.check(f"c in GF(p^{s})", ctx.in_subfield(c, s))
        d = ing.delta(F, c)
        hyp.check("F PcN, or APcN with m odd", d == 1 or (d == 2 and H.is_odd(m)))
    elif variant == "cdiffH2":
        hyp.check(f"c in GF(p^{s})", ctx.in_subfield(c, s))
        hyp.check("no prime r <= delta_{F,c} divides m", H.no_small_prime_divides(m, ing.delta(F, c)))
    elif variant == "gold":
        k = F.meta.get("k")
        is_gold = F.meta.get("kind") == "gold" and k is not None
        hyp.check("F is a Gold map", is_gold)
        hyp.check("m odd", H.is_odd(m))
        if is_gold:
            hyp.check("gcd(n,k) divides s", H.divides(gcd(ctx.n, int(k)), s))


def check_no_outside_solutions(F: FunctionTable, c: int, s: int, variant: str | None = None,
                               a_set=None, b_set=None, exploratory: bool = False,
                               ing: Ingredients | None = None) -> VerificationReport:
    """Scan F(x+a) - cF(x) = b for solutions outside GF(p^s), with a, b in the subfield."""
    ctx = F.ctx
    ctx.check_divisor(s)
    if variant not in _VARIANTS:
        raise ConfigError(f"unknown proposition variant {variant!r}")
    if not H.commutes_with_frobenius(F, s):
        raise CoefficientsNotInSubfield(f"F does not commute with x -> x^(p^{s})")
    ing = ing or Ingredients()
    c = int(c)
    hyp = Hypotheses()
    hyp.check(f"F has coefficients in GF(p^{s})", True)
    _variant_hyps(F, c, s, variant, hyp, ing)
    hyp.enforce(exploratory)
    S = ctx.subfield_elements(s)
    if a_set is None:
        a_set = S if variant in ("subpcn", "cdiffH2") else S[S != 0]
    b_set = S if b_set is None else b_set
    scan = _scan(F, c, s, a_set, b_set)
    entries = [_entry(c, 0, scan.outside_count, scan.witnesses, pairs=scan.pairs_checked)]
    params = {"c": c, "s": s, "variant": variant}
    return aggregate("NO_OUTSIDE", params, hyp, entries, kind="scan", exploratory=bool(hyp.failed))


def run_no_outside(ctx, params, hyp, ing, opts):
    F = piece(ctx, params["F"])
    s = int(params["s"])
    entries, notes = [], []
    for c in parse_cset(ctx, params.get("cs", [1])):
        rep = check_no_outside_solutions(F, c, s, params.get("variant"), exploratory=opts["exploratory"],
                                         ing=ing)
        for name, ok in rep.hypothesis_checks:
            hyp.check(f"{name} (c={c})", ok)
        entries.extend(rep.entries)
    return entries, notes, "scan"


def run_h1_h2(ctx, params, hyp, ing, opts):
    g = piece(ctx, params["g"])
    s = int(params["s"])
    _divisor_hyp(ctx, hyp, s)
    cs = parse_cset(ctx, params.get("cs", f"sub:{s}:ne1"))
    _cs_hyps(ctx, hyp, cs, sub=s)
    hyp.enforce()
    entries = []
    for i, c in enumerate(cs):
        part = check_h1_h2(g, c, s).entries
        entries.extend(part if i == 0 else part[1:])
    return entries, [], "scan"


# ---------------------------------------------------------------------------
# th:main and the variant without (H2)
# ---------------------------------------------------------------------------

def _main_setup(ctx, params, hyp, default_cs):
    s, f, g = _two_piece_setup(ctx, params, hyp)
    hyp.check("g has coefficients in GF(p^s)", H.commutes_with_frobenius(g, s))
    cs = parse_cset(ctx, params.get("cs", default_cs.format(s=s)))
    _cs_hyps(ctx, hyp, cs, sub=s)
    return s, f, g, cs


def _per_entry(c, rmax, mask, bound_in, bound_out, rep, **extra):
    inside = mask.copy()
    if c == 1:
        inside[0] = False
    obs_in = int(rmax[inside].max()) if inside.any() else 0
    obs_out = int(rmax[~mask].max()) if (~mask).any() else 0
    slack = min(bound_in - obs_in, bound_out - obs_out)
    use_in = bound_in - obs_in <= bound_out - obs_out
    e = _entry(c, bound_in if use_in else bound_out, obs_in if use_in else obs_out, rep.witnesses,
               bound_in=int(bound_in), observed_in=obs_in, bound_out=int(bound_out), observed_out=obs_out,
               global_delta=rep.delta, **extra)
    e["pass"] = bool(obs_in <= bound_in and obs_out <= bound_out)
    e["slack"] = int(slack)
    return e


def run_main(ctx, params, hyp, ing, opts, route_mode="main"):
    s, f, g, cs = _main_setup(ctx, params, hyp, "sub:{s}:ne1")
    hyp.enforce(opts["exploratory"])
    F = cons.piecewise_two(f, g, s)
    view = SubfieldView(ctx, s)
    mask = view.mask
    S = view.elements
    h1 = _scan(g, 1, s, S[S != 0], S)
    h1_ok = h1.outside_count == 0
    if route_mode == "noh2":
        hyp.check("H1", h1_ok)
        hyp.enforce(opts["exploratory"])
    entries = []
    for c in cs:
        rep, rmax = observe(F, c, opts["workers"])
        dgc, dg0, dfc = ing.delta(g, c), ing.fiber(g), ing.delta_sub(f, c, view)
        h2_ok = _scan(g, c, s, S, S).outside_count == 0
        if route_mode == "noh2":
            route = "RM_NOH2"
        elif h1_ok and h2_ok and c != 0:
            route = "THM_MAIN"
        elif h1_ok and c != 0:
            route = "RM_NOH2"
        else:
            route = "THM_T2_C0" if c == 0 else "THM_T2_TWO_PIECE"
        info = {"route": route, "H1": h1_ok, "H2": h2_ok}
        if route == "THM_MAIN":
            e = _per_entry(c, rmax, mask, max(dfc, dgc), dgc + 2 * dg0, rep, **info)
        elif route == "RM_NOH2":
            e = _per_entry(c, rmax, mask, dfc + dgc, dgc + 2 * dg0, rep, **info)
        elif c == 0:
            e = _entry(c, ing.fiber_sub(f, view) + dg0, rep.delta, rep.witnesses, global_delta=rep.delta, **info)
        else:
            b = max(dfc + dgc, dgc + 2 * ctx.p**s * dg0)
            e = _entry(c, b, rep.delta, rep.witnesses, global_delta=rep.delta, **info)
        entries.append(e)
    notes = ["per-entry bounds split by a in GF(p^s) / a outside; failing (H1)/(H2) or c = 0 is routed"]
    return entries, notes, "bound"


def run_rm_noh2(ctx, params, hyp, ing, opts):
    return run_main(ctx, params, hyp, ing, opts, route_mode="noh2")


def run_caldesim(ctx, params, hyp, ing, opts):
    hyp.check("p = 2", ctx.p == 2)
    s, f, g = _two_piece_setup(ctx, params, hyp)
    hyp.check("g has coefficients in GF(2^s)", H.commutes_with_frobenius(g, s))
    hyp.check("g permutes GF(2^s)", H.permutes_subfield(g, s))
    m = ctx.n // s
    dg1 = ing.delta(g, 1)
    k = dg1 // 2
    hyp.check("m not divisible by any 2 <= t <= k, k = delta_{g,1}/2", H.no_divisor_in_range(m, 2, k))
    hyp.check("m odd when k = 1", k != 1 or H.is_odd(m))
    hyp.enforce(opts["exploratory"])
    F = cons.piecewise_two(f, g, s)
    view = SubfieldView(ctx, s)
    rep, rmax = observe(F, 1, opts["workers"])
    df1 = ing.delta_sub(f, 1, view)
    e = _per_entry(1, rmax, view.mask, max(df1, dg1), dg1 + 2, rep, k=k)
    return [e], [], "bound"


# ---------------------------------------------------------------------------
# shifted Gold maps
# ---------------------------------------------------------------------------

def _gold_shift_common(ctx, params, hyp, s_key="s"):
    hyp.check("p = 2", ctx.p == 2)
    s, k = int(params[s_key]), int(params["k"])
    _divisor_hyp(ctx, hyp, s)
    hyp.check("1 <= k < n", 1 <= k < ctx.n)
    alphas = parse_alphas(ctx, params.get("alpha", params.get("alphas", "all")), s)
    hyp.check("alpha in GF(2^s)*", all(H.nonzero_in_subfield(ctx, a, s) for a in alphas))
    return s, k, alphas


def _gold_shift_entries(ctx, s, k, alphas, cs, bound, opts):
    entries = []
    for a in alphas:
        G = cons.gold_shift(ctx, s, k, a)
        for c in cs:
            rep, _ = observe(G, c, opts["workers"])
            entries.append(_entry(c, bound, rep.delta, rep.witnesses, alpha=int(a)))
    return entries


def run_pante_gold(ctx, params, hyp, ing, opts):
    s, k, alphas = _gold_shift_common(ctx, params, hyp)
    hyp.check("gcd(k, n) = 1", H.coprime(k, ctx.n))
    cs = parse_cset(ctx, params.get("cs", "ne1"))
    _cs_hyps(ctx, hyp, cs)
    hyp.enforce(opts["exploratory"])
    return _gold_shift_entries(ctx, s, k, alphas, cs, 9, opts), [], "bound"


def run_gold_pcn_t(ctx, params, hyp, ing, opts):
    s, k, alphas = _gold_shift_common(ctx, params, hyp)
    n = ctx.n
    t = gcd(n, k)
    hyp.check("m odd", H.is_odd(n // s))
    hyp.check("t = gcd(n,k) divides s", H.divides(t, s))
    hyp.check("n/t odd", H.is_odd(n // t))
    cs = parse_cset(ctx, params.get("cs", f"sub:{t}:ne1"))
    _cs_hyps(ctx, hyp, cs, sub=t)
    hyp.enforce(opts["exploratory"])
    return _gold_shift_entries(ctx, s, k, alphas, cs, 3, opts), [f"t = {t}"], "bound"


def _run_gold(ctx, params, hyp, ing, opts, bound):
    s, k, alphas = _gold_shift_common(ctx, params, hyp)
    hyp.check("n odd", H.is_odd(ctx.n))
    hyp.check("gcd(k, n) = 1", H.coprime(k, ctx.n))
    if bound == 5:
        hyp.check("3 does not divide m", (ctx.n // s) % 3 != 0)
    cs = parse_cset(ctx, params.get("cs", f"sub:{s}:ne1"))
    _cs_hyps(ctx, hyp, cs, sub=s)
    hyp.enforce(opts["exploratory"])
    return _gold_shift_entries(ctx, s, k, alphas, cs, bound, opts), [], "bound"


def run_gold_6(ctx, params, hyp, ing, opts):
    return _run_gold(ctx, params, hyp, ing, opts, 6)


def run_gold_5(ctx, params, hyp, ing, opts):
    return _run_gold(ctx, params, hyp, ing, opts, 5)


# ---------------------------------------------------------------------------
# modified Kasami permutation
# ---------------------------------------------------------------------------

KASAMI_CHECKS = ("perm", "delta", "nl", "degree")


def kasami_nl_bound(n: int, s: int) -> int:
    """2^(n-1) - 2^(s/2+1) - 2^(n/2), rounded up to an integer (n is even here)."""
    return (1 << (n - 1)) - (1 << (s // 2 + 1)) - (1 << (n // 2))


def run_kasami(ctx, params, hyp, ing, opts):
    hyp.check("p = 2", ctx.p == 2)
    s, k = int(params["s"]), int(params["k"])
    _divisor_hyp(ctx, hyp, s)
    n, m = ctx.n, ctx.n // s
    hyp.check("s even", s % 2 == 0)
    hyp.check("s/2 odd", H.is_odd(s // 2))
    hyp.check("m odd", H.is_odd(m))
    hyp.check("gcd(k, n) = 2", gcd(k, n) == 2)
    hyp.enforce(opts["exploratory"])
    checks = tuple(params.get("checks", KASAMI_CHECKS))
    view = SubfieldView(ctx, s)
    if "A1" in params:
        pairs = [(piece(ctx, params["A1"]), piece(ctx, params["A2"]))]
    else:
        rng = np.random.default_rng(int(params.get("seed", 0)))
        pairs = [(cons.random_affine_perm(view, rng), cons.random_affine_perm(view, rng))
                 for _ in range(int(params.get("pairs", 1)))]
    entries = []
    notes = []
    for idx, (A1, A2) in enumerate(pairs):
        F = cons.kasami_modified(ctx, s, k, A1, A2)
        tag = {"pair": idx, "A1": A1.meta, "A2": A2.meta}
        if "perm" in checks:
            collisions = ctx.q - len(np.unique(F.values))
            entries.append(_entry(None, 0, collisions, check="permutation (image collisions)", **tag))
        if "delta" in checks:
            rep, _ = observe(F, 1, opts["workers"])
            entries.append(_entry(1, 6, rep.delta, rep.witnesses, check="delta_{F,1}", **tag))
        if "nl" in checks:
            entries.append(_entry(None, kasami_nl_bound(n, s), nonlinearity(F), relation=">=",
                                  check="nonlinearity", **tag))
        if "degree" in checks:
            if s > 2:
                entries.append(_entry(None, n - 1, algebraic_degree(F), relation="==",
                                      check="algebraic degree", **tag))
            elif idx == 0:
                notes.append("degree claim needs s > 2; skipped")
    return entries, notes, "bound"


# ---------------------------------------------------------------------------
# concatenation
# ---------------------------------------------------------------------------

def verify_concat(proj: DualProjection, fs, c: int, ing: Ingredients | None = None,
                  workers: int = 1) -> VerificationReport:
    """delta_{F,c} = prod_i delta_{f_i,c} exactly, the f_i taken over the base field."""
    ctx = proj.ctx
    c = int(c)
    ing = ing or Ingredients(workers)
    hyp = Hypotheses()
    hyp.check(f"c in GF({ctx.p}^{proj.r})", ctx.in_subfield(c, proj.r))
    hyp.check("c != 1", c != 1)
    hyp.enforce()
    deltas = [ing.delta_sub(f, c, proj.base) for f in fs]
    F = cons.concat(proj, fs)
    rep, _ = observe(F, c, workers)
    prod = int(np.prod(deltas))
    pcn = all(d == 1 for d in deltas)
    e = _entry(c, prod, rep.delta, rep.witnesses, relation="==", component_deltas=deltas, pcn_corollary=pcn)
    notes = ["PcN corollary asserted (all components PcN)"] if pcn else []
    return aggregate("CONCAT", {"c": c, "beta": list(proj.beta)}, hyp, [e], kind="exact", notes=notes)


def run_concat(ctx, params, hyp, ing, opts):
    r = int(params["base"])
    _divisor_hyp(ctx, hyp, r, "base degree")
    base = SubfieldView(ctx, r)
    beta = params.get("beta")
    beta = list(base.basis) if beta is None else [parse_element(ctx, b) for b in beta]
    proj = DualProjection(ctx, base, beta)
    fs = [piece(ctx, f) for f in params["fs"]]
    cs = parse_cset(ctx, params.get("cs", f"sub:{r}:ne1"))
    _cs_hyps(ctx, hyp, cs, sub=r)
    hyp.enforce()
    entries, notes = [], []
    for c in cs:
        rep = verify_concat(proj, fs, c, ing, opts["workers"])
        entries.extend(rep.entries)
        notes.extend(n for n in rep.notes if n not in notes)
    return entries, notes, "exact"


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

REGISTRY: dict[str, Callable] = {
    "THM_T2_TWO_PIECE": run_t2_two_piece,
    "THM_T2_C0": run_t2_c0,
    "THM_T2_CHAIN": run_t2_chain,
    "REMARK_REDUCE": run_remark_reduce,
    "THM_THREE_PIECE": run_three_piece,
    "THM_MAIN": run_main,
    "RM_NOH2": run_rm_noh2,
    "THM_CALDESIM": run_caldesim,
    "THM_PANTE_GOLD": run_pante_gold,
    "THM_GOLD_PCN_T": run_gold_pcn_t,
    "THM_GOLD_6": run_gold_6,
    "THM_GOLD_5": run_gold_5,
    "THM_KASAMI": run_kasami,
    "THM_CONCAT": run_concat,
    "NO_OUTSIDE": run_no_outside,
    "H1_H2": run_h1_h2,
}


def verify_bound(claim: Claim | dict, workers: int = 1, exploratory: bool = False) -> VerificationReport:
    """Run one registered claim.  Raises HypothesisViolation unless ``exploratory``."""
    if isinstance(claim, dict):
        claim = Claim.from_json(claim)
    try:
        runner = REGISTRY[claim.id]
    except KeyError as exc:
        raise ConfigError(f"unknown claim {claim.id!r}") from exc
    ctx = field_of(claim.params)
    hyp = Hypotheses()
    opts = {"workers": workers, "exploratory": exploratory}
    try:
        entries, notes, kind = runner(ctx, claim.params, hyp, Ingredients(workers), opts)
    except KeyError as exc:
        raise ConfigError(f"{claim.id} params missing {exc}") from exc
    explo = exploratory and bool(hyp.failed)
    rep = aggregate(claim.id, _jsonable(claim.params), hyp, entries, kind, notes, explo)
    return rep


__all__ = [
    "Ingredients",
    "KASAMI_CHECKS",
    "REGISTRY",
    "chain_bounds",
    "check_h1_h2",
    "check_no_outside_solutions",
    "field_of",
    "h1_h2_counts",
    "kasami_nl_bound",
    "parse_alphas",
    "parse_cset",
    "verify_bound",
    "verify_concat",
    "HypothesisViolation",
]
