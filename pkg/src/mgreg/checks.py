"""Machine-checkable consequences of the support and regularity theorems.

Each check returns a :class:`Report` with status PASS, FAIL or SKIPPED.
Inclusions are tested soundly: the left-hand side only uses certified
nonzero entries, while uncertified entries count as "maybe nonzero" on the
bound side, so an unstabilized colimit can never produce a spurious FAIL.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .grading import shift_set
from .koszul import betti_box, betti_table, koszul_homology_dim, tor_dim, variables
from .local_cohomology import EXACT, STABILIZED, cohomology_table, mayer_vietoris_bound
from .regions import Box, LatticeRegion, form_contains, form_minkowski, form_union, orthant
from .regularity import (
    CERTIFIED,
    admissible_degrees,
    reg_lower_bound_from_betti,
    regularity_region,
    ring_support_forms,
)
from .ring import MonomialIdeal, radical_contains, truncate

PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"


@dataclass
class Report:
    theorem_id: str
    instance_id: str
    status: str
    witness: object = None
    detail: str = ""

    def as_dict(self):
        w = None if self.witness is None else _jsonable(self.witness)
        return {
            "theorem_id": self.theorem_id,
            "instance_id": self.instance_id,
            "status": self.status,
            "witness": w,
            "detail": self.detail,
        }


def _jsonable(x):
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


def _sub(p, v):
    return tuple(a - b for a, b in zip(p, v))


def _add(p, v):
    return tuple(a + b for a, b in zip(p, v))


def _certain(entry):
    return entry.status in (STABILIZED, EXACT)


class Context:
    """Shared data for one instance: tables, Betti numbers and regions."""

    def __init__(self, instance_id, B, module, box, witness=None, t_max=12, window=2, margin=2):
        self.id = instance_id
        self.B = B if isinstance(B, MonomialIdeal) else MonomialIdeal(B)
        self.module = module
        self.grading = module.grading
        self.field = module.field
        self.box = box
        self.witness = witness if witness is not None else module.ann_witness()
        self.t_max, self.window, self.margin = t_max, window, margin
        self._cache = {}
        g = self.grading
        top = np.array([sum(d[c] for d in g.degrees) for c in range(g.k)])
        self.reach = top
        # one table large enough for every check: box minus E_n, plus the
        # F-shift and margin needed by the regularity regions built on it
        lo = np.array(box.lo) - top - 1 - max(2, int(top.max()))
        hi = np.array(box.hi) + margin + 1
        self.table_box = Box(tuple(lo), tuple(hi))

    def get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def table(self):
        return self.get("table", lambda: cohomology_table(self.B, self.module, self.table_box, t_max=self.t_max, window=self.window))

    @property
    def s(self):
        return self.table.s

    @property
    def betti(self):
        def run():
            bb = betti_box(self.module)
            return {j: dict(v) for j, v in betti_table(self.module, bb).items()}

        return self.get("betti", run)

    @property
    def betti_degrees(self):
        return {j: set(v) for j, v in self.betti.items()}

    def reg_box(self):
        lo = np.array(self.box.lo) - self.reach
        return Box(tuple(lo), self.box.hi)

    def regularity(self, ell=0, flavor="weak"):
        return self.get(
            ("reg", ell, flavor),
            lambda: regularity_region(
                self.B, self.module, self.reg_box(), ell, flavor, self.margin, self.t_max, self.window,
                table=self.table, betti=self.betti_degrees,
            ),
        )

    def tor_points(self, j):
        return sorted(p for p in self.betti.get(j, {}) if p in self.box)

    def support(self, i, table=None):
        t = table or self.table
        return {p for p in self.box.points() if _certain(t.entry(i, p)) and t.entry(i, p).dim}

    def maybe_support(self, i, p, table=None):
        t = table or self.table
        if p not in t.box:
            return True
        e = t.entry(i, p)
        return bool(e.dim) or not _certain(e)


def pessimistic_complement(reg):
    """Points of the box not certified regular."""
    box = reg.box
    mask = np.array([not (p in reg.region and reg.status[p] == CERTIFIED) for p in box.points()])
    return LatticeRegion(box, mask.reshape(box.shape))


def _in_complement(comp, p):
    return p not in comp.box or p in comp


# -- support bounds ----------------------------------------------------------------------------------


def check_lem_lc_monomial(ctx):
    for ell in range(ctx.s + 1):
        bound = mayer_vietoris_bound(ctx.B, ctx.module, ell, ctx.box, ctx.t_max, ctx.window)
        for p in sorted(ctx.support(ell)):
            if p not in bound:
                return Report("lemLCMonomial", ctx.id, FAIL, [ell, p])
    return Report("lemLCMonomial", ctx.id, PASS)


def _koszul_lc_check(ctx, theorem_id, f, deltas, homology):
    r = len(f)
    E = {m: {tuple(int(x) for x in np.sum(c, axis=0)) for c in combinations(deltas, m)} for m in range(1, r + 1)}
    E[0] = {(0,) * ctx.grading.k}
    for j in range(r + 1):
        for p in ctx.box.points():
            if not homology(j, p):
                continue
            ok = any(
                ctx.maybe_support(k, _sub(p, e)) for k in range(ctx.s + 1) if j + k <= r for e in E[j + k]
            )
            if not ok:
                return Report(theorem_id, ctx.id, FAIL, [j, p])
    return Report(theorem_id, ctx.id, PASS)


def check_thm_lc_to_tor(ctx):
    """Koszul homology on the generators of B against the cohomology supports."""
    f = list(ctx.B.gens)
    if not f:
        return Report("ThmLCtoTor", ctx.id, SKIPPED, detail="B = 0")
    deltas = [ctx.grading.degree(m) for m in f]
    return _koszul_lc_check(ctx, "ThmLCtoTor", f, deltas, lambda j, p: koszul_homology_dim(f, ctx.module, j, p))


def check_cor_lc_to_tor(ctx):
    g = ctx.grading
    return _koszul_lc_check(
        ctx, "CorLCtoTor", variables(g), list(g.degrees), lambda j, p: tor_dim(ctx.module, j, p)
    )


def check_cor_supp_hi(ctx):
    g = ctx.grading
    if not g.is_standard:
        return Report("corSuppHi", ctx.id, SKIPPED, detail="non-standard grading")
    ring = ring_support_forms(ctx.B, g, ctx.field, ctx.box)
    T = ctx.betti_degrees
    for ell in range(ctx.s + 1):
        pieces = [
            form_minkowski(ring[ell + i], list(pts))
            for i, pts in T.items()
            if pts and ell + i in ring and ring[ell + i]
        ]
        form = form_union(*pieces) if pieces else ()
        pts = sorted(ctx.support(ell))
        if pts:
            inside = form_contains(form, pts)
            for p, ok in zip(pts, inside):
                if not ok:
                    return Report("corSuppHi", ctx.id, FAIL, [ell, p])
    return Report("corSuppHi", ctx.id, PASS)


# -- Tor from regularity --------------------------------------------------------------------------------


def check_thm_lc_to_tor1(ctx):
    g = ctx.grading
    reg = ctx.regularity(0)
    comp = pessimistic_complement(reg)
    for j in range(g.n + 1):
        for p in ctx.tor_points(j):
            if j == g.n:
                ok = any(ctx.maybe_support(0, _sub(p, e)) for e in shift_set(g, g.n))
            else:
                ok = any(_in_complement(comp, _sub(p, e)) for e in shift_set(g, j + 1))
            if not ok:
                return Report("ThmLCtoTor1", ctx.id, FAIL, [j, p])
    return Report("ThmLCtoTor1", ctx.id, PASS)


def check_thm_lc_to_tor2(ctx):
    g = ctx.grading
    adm = admissible_degrees(ctx.B, g, ctx.witness)
    if not adm:
        return Report("ThmLCtoTor2", ctx.id, SKIPPED, detail="no degree with B in sqrt(B_i + ann)")
    comp = pessimistic_complement(ctx.regularity(0))
    for j in range(g.n + 1):
        for p in ctx.tor_points(j):
            for mu in adm:
                if not any(_in_complement(comp, _sub(_sub(p, mu), e)) for e in shift_set(g, j)):
                    return Report("ThmLCtoTor2", ctx.id, FAIL, [j, p, list(mu)])
    return Report("ThmLCtoTor2", ctx.id, PASS)


def check_reg_lower_bound(ctx):
    """Every point of the Betti-derived region is certified regular or at least not refuted."""
    g = ctx.grading
    if not g.is_standard:
        return Report("ThmTortoLC", ctx.id, SKIPPED, detail="non-standard grading")
    reg = ctx.regularity(0)
    lb = reg_lower_bound_from_betti(ctx.B, g, ctx.field, ctx.betti_degrees, 0, reg.box)
    for p in lb.points():
        if p not in reg.region and reg.status[p] == CERTIFIED:
            return Report("ThmTortoLC", ctx.id, FAIL, p)
    return Report("ThmTortoLC", ctx.id, PASS)


# -- persistence and weak-to-strong ----------------------------------------------------------------------


def check_pers1dir(ctx):
    g = ctx.grading
    t = ctx.table
    dirs = [mu for mu in g.distinct_degrees if radical_contains(ctx.B, _block_ideal(g, mu) + ctx.witness)]
    if not dirs:
        return Report("pers1dir", ctx.id, SKIPPED, detail="no admissible direction")
    s = ctx.s
    for gam in dirs:
        for ell in range(1, s + 1):
            for mu in t.box.points():
                # rays run against the direction: H^{l+i} at mu - i*gamma
                ray = [(ell + i, _sub(mu, tuple(i * x for x in gam))) for i in range(s - ell + 1)]
                if any(q not in t.box or not _certain(t.entry(i, q)) or t.entry(i, q).dim for i, q in ray):
                    continue
                for i, q in ray:
                    q2 = _add(q, gam)
                    if q2 in t.box and _certain(t.entry(i, q2)) and t.entry(i, q2).dim:
                        return Report("pers1dir", ctx.id, FAIL, [ell, mu, list(gam)])
    return Report("pers1dir", ctx.id, PASS)


def _block_ideal(g, mu):
    return MonomialIdeal.coordinate(g.variables_of_degree(mu), g.n)


def cd_upper_bound(B, K, n):
    """An upper bound for ``cd_B(R/K)`` (monomial K): 0, dim R/K, or #gens of sqrt B."""
    if radical_contains(B, K):
        return 0
    primes = K.minimal_primes()
    dim = n - min(len(P) for P in primes) if primes else n
    return min(dim, len(B.radical().gens))


def check_wrtor(ctx):
    """Clauses (2) and (4): weak implies regular above cd; no generators past a regular degree."""
    g = ctx.grading
    blocks = [_block_ideal(g, mu) + ctx.witness for mu in g.distinct_degrees]
    cd = max(cd_upper_bound(ctx.B, K, g.n) for K in blocks)
    tested = False
    for ell in range(cd + 1, ctx.s + 1):
        reg = ctx.regularity(ell)
        for p in reg.box.points():
            if p in reg.weak and reg.status[p] == CERTIFIED and p not in reg.region:
                return Report("wRtoR", ctx.id, FAIL, ["(2)", ell, p])
        tested = True
    if all(radical_contains(ctx.B, K) for K in blocks):
        reg = ctx.regularity(0)
        for p in reg.box.points():
            if p not in reg.region or reg.status[p] != CERTIFIED:
                continue
            for q in ctx.box.points():
                if q != p and all(a >= b for a, b in zip(q, p)) and g.in_monoid(_sub(q, p)):
                    if tor_dim(ctx.module, 0, q):
                        return Report("wRtoR", ctx.id, FAIL, ["(4)", p, q])
        tested = True
    if not tested:
        return Report("wRtoR", ctx.id, SKIPPED, detail=f"cd bracket inconclusive (upper bound {cd})")
    return Report("wRtoR", ctx.id, PASS)


# -- truncations -----------------------------------------------------------------------------------------


def default_truncations(g):
    """C-stable sets used by the truncation checks (standard gradings)."""
    one = tuple(1 for _ in range(g.k))
    return {"S1": (orthant(one),), "S0": (orthant((0,) * g.k),)}


def _truncation(ctx, name, form):
    def run():
        region = LatticeRegion.from_form(ctx.table_box.pad(8), form)
        N = truncate(ctx.module, region)
        sub = Context(f"{ctx.id}[{name}]", ctx.B, N, ctx.box, ctx.witness, ctx.t_max, ctx.window, ctx.margin)
        return region, sub

    return ctx.get(("trunc", name), run)


def _torsion_hypothesis(ctx):
    """``B in B_i`` for every block, and Z Gamma containing a positive vector."""
    g = ctx.grading
    for mu in g.distinct_degrees:
        Bi = _block_ideal(g, mu)
        if not all(Bi.contains(m) for m in ctx.B.radical().gens):
            return False
    tot = np.sum([g.degree(m) for m in ctx.B.gens], axis=0)
    return bool(np.all(tot > 0))


def check_tronctor(ctx):
    g = ctx.grading
    if not g.is_standard:
        return Report("tronctor", ctx.id, SKIPPED, detail="non-standard grading")
    for name, form in default_truncations(g).items():
        region, sub = _truncation(ctx, name, form)
        for j in range(g.n + 1):
            Ej, Ej1 = shift_set(g, j), shift_set(g, j + 1)
            for p in ctx.box.points():
                dn = tor_dim(sub.module, j, p)
                if dn and not any(_sub(p, e) in region for e in Ej):
                    return Report("tronctor", ctx.id, FAIL, ["(1)", name, j, p])
                dm = tor_dim(ctx.module, j, p)
                if all(_sub(p, e) in region for e in Ej) and dn < dm:
                    return Report("tronctor", ctx.id, FAIL, ["(2) surjective", name, j, p])
                if Ej1 and all(_sub(p, e) in region for e in Ej1) and dn != dm:
                    return Report("tronctor", ctx.id, FAIL, ["(2) iso", name, j, p])
    return Report("tronctor", ctx.id, PASS)


def check_thm_lc_to_tor3(ctx):
    g = ctx.grading
    if not g.is_standard:
        return Report("ThmLCtoTor3", ctx.id, SKIPPED, detail="non-standard grading")
    reg = ctx.regularity(0)
    comp = pessimistic_complement(reg)
    adm = admissible_degrees(ctx.B, g, ctx.witness)
    for name, form in default_truncations(g).items():
        region, sub = _truncation(ctx, name, form)

        def outside(q):
            return _in_complement(comp, q) or q not in region

        for j in range(g.n + 1):
            for p in ctx.box.points():
                if not tor_dim(sub.module, j, p):
                    continue
                if j == g.n:
                    # E_{n+1} is empty; Tor_n(N) = Tor_n(M) lies in Supp H^0_B(M) + E_n
                    if not any(ctx.maybe_support(0, _sub(p, e)) for e in shift_set(g, g.n)):
                        return Report("ThmLCtoTor3", ctx.id, FAIL, [name, j, p])
                    continue
                if not any(outside(_sub(p, e)) for e in shift_set(g, j + 1)):
                    return Report("ThmLCtoTor3", ctx.id, FAIL, [name, j, p])
                for mu in adm:
                    if not any(outside(_sub(_sub(p, mu), e)) for e in shift_set(g, j)):
                        return Report("ThmLCtoTor3", ctx.id, FAIL, [name, j, p, list(mu)])
    return Report("ThmLCtoTor3", ctx.id, PASS)


def check_regtrunc(ctx):
    if not ctx.grading.is_standard or not _torsion_hypothesis(ctx):
        return Report("regtrunc", ctx.id, SKIPPED, detail="needs B inside every block ideal")
    for name, form in default_truncations(ctx.grading).items():
        region, sub = _truncation(ctx, name, form)
        tm, tn = ctx.table, sub.table
        for p in ctx.box.points():
            for i in range(2, min(ctx.s, sub.s) + 1):
                em, en = tm.entry(i, p), tn.entry(i, p)
                if _certain(em) and _certain(en) and em.dim != en.dim:
                    return Report("regtrunc", ctx.id, FAIL, ["(3)", name, i, p])
            em, en = tm.entry(0, p), tn.entry(0, p)
            if _certain(em) and _certain(en) and bool(en.dim) != (bool(em.dim) and p in region):
                return Report("regtrunc", ctx.id, FAIL, ["(5)", name, p])
    return Report("regtrunc", ctx.id, PASS)


def check_prop_reg_ell(ctx):
    if not ctx.grading.is_standard or not _torsion_hypothesis(ctx):
        return Report("propRegEll", ctx.id, SKIPPED, detail="needs B inside every block ideal")
    for name, form in default_truncations(ctx.grading).items():
        region, sub = _truncation(ctx, name, form)
        for ell in range(ctx.s + 1):
            rm, rn = ctx.regularity(ell), sub.regularity(ell)
            for p in rm.box.points():
                if p not in region or not (rm.certified(p) and rn.certified(p)):
                    continue
                if (p in rm.region) != (p in rn.region):
                    return Report("propRegEll", ctx.id, FAIL, [name, ell, p])
    return Report("propRegEll", ctx.id, PASS)


ALL_CHECKS = (
    check_lem_lc_monomial,
    check_thm_lc_to_tor,
    check_cor_lc_to_tor,
    check_thm_lc_to_tor1,
    check_thm_lc_to_tor2,
    check_cor_supp_hi,
    check_reg_lower_bound,
    check_pers1dir,
    check_wrtor,
    check_tronctor,
    check_thm_lc_to_tor3,
    check_regtrunc,
    check_prop_reg_ell,
)


def run_checks(ctx, checks=ALL_CHECKS):
    return [c(ctx) for c in checks]


# -- standard Z-graded sanity -----------------------------------------------------------------------------


def end_degrees(table):
    """``a_i = max{d : H^i(M)_d != 0}`` over the table (None when zero on the box)."""
    out = {}
    for i in range(table.s + 1):
        pts = [p[0] for p in table.box.points() if table.entry(i, p).dim]
        out[i] = max(pts) if pts else None
    return out


def z_regularity(B, module, box, **kw):
    """Castelnuovo-Mumford regularity read off the region ``reg_B(M) = Z_{>=r}``."""
    reg = regularity_region(B, module, box, **kw)
    if not reg.certified():
        return None, reg
    pts = [p[0] for p in reg.points()]
    return (min(pts) if pts else None), reg


def check_classical(instance_id, module, box):
    """``b_i - i <= reg M = max(a_i + i)`` and ``reg M_{>=d} = max(reg M, d)``."""
    g = module.grading
    if g.k != 1 or not g.is_standard:
        return Report("classical", instance_id, SKIPPED, detail="needs a standard Z-grading")
    m = MonomialIdeal.coordinate(range(g.n), g.n)
    r, reg = z_regularity(m, module, box)
    if r is None or r == box.lo[0]:
        return Report("classical", instance_id, SKIPPED, detail="regularity not certified inside the box")
    a = end_degrees(reg.table)
    from_ends = max(a[i] + i for i in a if a[i] is not None) if any(v is not None for v in a.values()) else None
    if from_ends is not None and from_ends != r:
        return Report("classical", instance_id, FAIL, ["reg", r, from_ends])
    betti = betti_table(module, betti_box(module))
    for j, pts in betti.items():
        for p in pts:
            if p[0] - j > r:
                return Report("classical", instance_id, FAIL, ["betti", j, p[0]])
    for d in (r - 1, r, r + 2):
        N = truncate(module, LatticeRegion.from_form(Box((box.lo[0] - 8,), (box.hi[0] + 8,)), (orthant((d,)),)))
        rd, _ = z_regularity(m, N, box)
        if rd != max(r, d):
            return Report("classical", instance_id, FAIL, ["truncation", d, rd])
    return Report("classical", instance_id, PASS, detail=f"reg={r}")
