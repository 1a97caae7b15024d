"""Graded pieces of local cohomology H^i_B(M) for monomial ideals B.

Three independent routes:

* ``P1``: colimit over t of the cohomology of the Koszul cochain complex on
  the Frobenius powers ``f_1^t, ..., f_s^t`` of the generators of B;
* ``P2``: colimit of ``Ext^i(R/B^[t], M)`` computed from the Taylor
  resolution of ``B^[t]`` (generators of the radical, so all lcms are
  squarefree);
* ``P3``: the closed form ``H^i_B(R) = (+)_a N_{i,a} (x) R*_a`` for free
  modules.

P1 and P2 are the same "subset cochain complex": for a subset J of the
generators the term is ``M_{gamma + deg u_J}`` with ``u_J = t * sum f_j`` (P1)
or ``u_J = t * lcm f_j`` (P2), and the coboundary from ``J - {j}`` to J is a
sign times multiplication by ``x^(u_J - u_{J-{j}})``.  Transition maps from
stage t to t' multiply the J-component by ``x^(u'_J - u_J)``.

Monomial modules are handled fine degree by fine degree (each fine piece is
0 or 1 dimensional, so the complex only depends on a presence pattern);
other modules go through degreewise linear algebra.
"""

from collections import namedtuple
from functools import lru_cache
from itertools import product

import numpy as np

from .grading import Grading, NoPositiveFunctional
from .koszul import (
    all_subsets,
    monomial_presence,
    pattern_dims,
    pattern_transition_rank,
    presence_patterns,
    sign,
    subsets,
)
from .regions import LatticeRegion, form_union
from .ring import InfiniteDimensional, MonomialIdeal, MonomialQuotient, ZeroModule

STABILIZED = "stabilized"
T_MAX = "t_max_reached"
EXACT = "exact"

Entry = namedtuple("Entry", "dim status path t_stab")


class Unstabilized(RuntimeError):
    def __init__(self, t_max, i=None, gamma=None):
        super().__init__(f"colimit not stabilized by t_max={t_max} (i={i}, gamma={gamma})")
        self.t_max, self.i, self.gamma = t_max, i, gamma


# -- Cech data ---------------------------------------------------------------------


class CechData:
    """Generators used by a path and the exponent vectors ``u_J(t)``."""

    def __init__(self, B, path):
        B = B if isinstance(B, MonomialIdeal) else MonomialIdeal(B)
        if B.is_zero:
            raise ValueError("B must be a nonzero monomial ideal")
        self.B = B
        self.path = path
        self.gens = B.gens if path == "P1" else B.radical().gens
        self.s = len(self.gens)
        self.n = B.n
        order, _ = all_subsets(self.s)
        G = np.array(self.gens, dtype=np.int64)
        if path == "P1":
            base = [G[list(J)].sum(axis=0) if J else np.zeros(self.n, dtype=np.int64) for J in order]
        else:
            base = [G[list(J)].max(axis=0) if J else np.zeros(self.n, dtype=np.int64) for J in order]
        self.base = np.array(base, dtype=np.int64)
        self.order = order

    def u(self, t):
        return t * self.base


def _generator_floor(module):
    """Componentwise lower bound for the degrees of generators of M."""
    from .ring import DirectSum, Presentation, Shifted, Truncation

    k = module.grading.k
    if isinstance(module, MonomialQuotient):
        return np.array(module.twist)
    if isinstance(module, Presentation):
        return np.array(module.row_shifts).min(axis=0)
    if isinstance(module, Shifted):
        return _generator_floor(module.module) - np.array(module.g)
    if isinstance(module, Truncation):
        return _generator_floor(module.module)
    if isinstance(module, DirectSum) and module.modules:
        return np.min([_generator_floor(m) for m in module.modules], axis=0)
    return np.zeros(k, dtype=np.int64)


def t_min_for(module, gamma):
    """First stage at which the stabilization test may start (heuristic)."""
    lo = _generator_floor(module)
    return 1 + max(0, int(-min(np.asarray(gamma) - lo)))


# -- fine (monomial) route ---------------------------------------------------------------


def _fine_profile(module, data, gamma, t, t2):
    """Per i: (dim H^i at stage t, rank of transition t -> t2)."""
    g = module.grading
    field = module.field
    s = data.s
    U, U2 = data.u(t), data.u(t2)
    L = U.max(axis=0)
    dims = [0] * (s + 1)
    ranks = [0] * (s + 1)
    for summand in module.monomial_summands():
        ideal, twist, region = summand
        target = tuple(int(x) for x in np.asarray(gamma) - np.asarray(twist) + g.D @ L)
        C = g.monomials(target)
        if len(C) == 0:
            continue
        E = C - L
        n_e, n_j = len(E), len(U)
        p1 = monomial_presence(summand, g, (E[:, None, :] + U[None]).reshape(-1, g.n)).reshape(n_e, n_j)
        p2 = monomial_presence(summand, g, (E[:, None, :] + U2[None]).reshape(-1, g.n)).reshape(n_e, n_j)
        pats, counts, _ = presence_patterns(np.hstack([p1, p2]))
        for pat, c in zip(pats, counts):
            a, b = pat[:n_j], pat[n_j:]
            if not any(a):
                continue
            d = pattern_dims(field, s, a)
            for i in range(s + 1):
                if d[i]:
                    dims[i] += int(c) * d[i]
                    ranks[i] += int(c) * pattern_transition_rank(field, s, a, b, i)
    return dims, ranks


def _fine_stage_dims(module, data, gamma, t):
    g = module.grading
    s = data.s
    U = data.u(t)
    L = U.max(axis=0)
    dims = [0] * (s + 1)
    for summand in module.monomial_summands():
        ideal, twist, region = summand
        C = g.monomials(tuple(int(x) for x in np.asarray(gamma) - np.asarray(twist) + g.D @ L))
        if len(C) == 0:
            continue
        E = C - L
        pres = monomial_presence(summand, g, (E[:, None, :] + U[None]).reshape(-1, g.n)).reshape(len(E), len(U))
        pats, counts, _ = presence_patterns(pres)
        for pat, c in zip(pats, counts):
            if any(pat):
                d = pattern_dims(module.field, s, pat)
                for i in range(s + 1):
                    dims[i] += int(c) * d[i]
    return dims


# -- coarse route ---------------------------------------------------------------------


class _CoarseStage:
    """The stage-t complex of a general module in degree gamma."""

    def __init__(self, module, data, gamma, t):
        self.module, self.data, self.gamma, self.t = module, data, tuple(gamma), t
        g = module.grading
        U = data.u(t)
        self.U = U
        _, pos = all_subsets(data.s)
        self.pos = pos
        self.deg = {J: tuple(int(x) for x in np.asarray(gamma) + g.D @ U[pos[J]]) for J in data.order}
        self.dims = {J: module.dim(self.deg[J]) for J in data.order}
        self._delta = {}
        self._Z = {}

    def offsets(self, i):
        out, o = {}, 0
        for J in subsets(self.data.s, i):
            out[J] = o
            o += self.dims[J]
        return out, o

    def delta(self, i):
        """Coboundary C^i -> C^{i+1}."""
        if i in self._delta:
            return self._delta[i]
        F = self.module.field
        s = self.data.s
        src, ns = self.offsets(i)
        dst, nd = self.offsets(i + 1)
        out = F.zeros(nd, ns)
        for J in subsets(s, i + 1):
            if not self.dims[J]:
                continue
            for q in range(len(J)):
                K = J[:q] + J[q + 1 :]
                if not self.dims[K]:
                    continue
                e = tuple(int(x) for x in self.U[self.pos[J]] - self.U[self.pos[K]])
                block = self.module.mult_monomial(self.deg[K], e)
                if sign(J, q) < 0:
                    block = F.sub(F.zeros(*block.shape), block)
                out[dst[J] : dst[J] + self.dims[J], src[K] : src[K] + self.dims[K]] = block
        self._delta[i] = out
        return out

    def cocycles(self, i):
        if i not in self._Z:
            F = self.module.field
            _, ns = self.offsets(i)
            D = self.delta(i) if i < self.data.s else F.zeros(0, ns)
            self._Z[i] = F.nullspace(D) if D.shape[0] else F.identity(ns)
        return self._Z[i]

    def dim_h(self, i):
        F = self.module.field
        _, ns = self.offsets(i)
        z = self.cocycles(i).shape[1]
        b = F.rank(self.delta(i - 1)) if i >= 1 and ns else 0
        return z - b

    def transition(self, other, i):
        """Matrix of C^i(stage t) -> C^i(stage t') ."""
        F = self.module.field
        src, ns = self.offsets(i)
        dst, nd = other.offsets(i)
        out = F.zeros(nd, ns)
        for J in subsets(self.data.s, i):
            if not self.dims[J] or not other.dims[J]:
                continue
            e = tuple(int(x) for x in other.U[self.pos[J]] - self.U[self.pos[J]])
            out[dst[J] : dst[J] + other.dims[J], src[J] : src[J] + self.dims[J]] = self.module.mult_monomial(self.deg[J], e)
        return out


class _CoarseEngine:
    def __init__(self, module, data, gamma):
        self.module, self.data, self.gamma = module, data, gamma
        self.stages = {}

    def stage(self, t):
        if t not in self.stages:
            self.stages[t] = _CoarseStage(self.module, self.data, self.gamma, t)
        return self.stages[t]

    def profile(self, t, t2):
        F = self.module.field
        a, b = self.stage(t), self.stage(t2)
        dims, ranks = [], []
        for i in range(self.data.s + 1):
            dims.append(a.dim_h(i))
            Z = a.cocycles(i)
            if Z.shape[1] == 0 or dims[-1] == 0:
                ranks.append(0)
                continue
            phiZ = F.matmul(a.transition(b, i), Z)
            _, nd = b.offsets(i)
            Bd = b.delta(i - 1) if i >= 1 else F.zeros(nd, 0)
            rb = F.rank(Bd) if Bd.size else 0
            ranks.append(F.rank(F.hstack([phiZ, Bd], nd)) - rb)
        return dims, ranks


# -- colimits -------------------------------------------------------------------------------


def is_free(module):
    summ = module.monomial_summands()
    return summ is not None and all(J.is_zero and reg is None for J, _, reg in summ)


def colimit_dims(B, module, gamma, path="P1", t_max=12, window=2, strict=False):
    """All ``H^i_B(M)_gamma`` (i = 0..s) through P1 or P2, as a list of Entry."""
    gamma = tuple(int(x) for x in gamma)
    data = CechData(B, path)
    s = data.s
    if isinstance(module, ZeroModule):
        return [Entry(0, STABILIZED, path, 1) for _ in range(s + 1)]
    fine = module.monomial_summands() is not None
    if path == "P2" and is_free(module):
        return _certified_free_p2(data, module, gamma)
    engine = None if fine else _CoarseEngine(module, data, gamma)
    tmin = t_min_for(module, gamma)
    history = [[] for _ in range(s + 1)]
    result = [None] * (s + 1)
    t = 1
    while t + window <= t_max and any(r is None for r in result):
        if fine:
            _, ranks = _fine_profile(module, data, gamma, t, t + window)
        else:
            _, ranks = engine.profile(t, t + window)
        for i in range(s + 1):
            if result[i] is not None:
                continue
            history[i].append((t, ranks[i]))
            run = [r for tt, r in history[i] if tt >= tmin][-window:]
            if len(run) == window and len(set(run)) == 1:
                result[i] = Entry(run[0], STABILIZED, path, t - window + 1)
        t += 1
    for i in range(s + 1):
        if result[i] is None:
            if strict:
                raise Unstabilized(t_max, i, gamma)
            last = history[i][-1][1] if history[i] else 0
            result[i] = Entry(last, T_MAX, path, None)
    return result


def lc_dim_power_colimit(B, M, i, gamma, t_max=12, window=2):
    e = _pick(colimit_dims(B, M, gamma, "P1", t_max, window), i)
    return e.dim, e.status


def lc_dim_taylor_ext(B, M, i, gamma, t_max=12, window=2):
    e = _pick(colimit_dims(B, M, gamma, "P2", t_max, window), i)
    return e.dim, e.status


def _pick(entries, i):
    if 0 <= i < len(entries):
        return entries[i]
    return Entry(0, STABILIZED, entries[0].path if entries else "P1", 1)


# -- the closed form for free modules ---------------------------------------------------------


@lru_cache(maxsize=None)
def mustata_N(B, field):
    """``{a: (dim N_{0,a}, ..., dim N_{s,a})}`` for the nonzero sign patterns a."""
    rad = B.radical()
    gens = rad.gens
    s = len(gens)
    order, _ = all_subsets(s)
    supp_l = [frozenset(v for j in J for v in range(B.n) if gens[j][v]) for J in order]
    out = {}
    for a in product((0, 1), repeat=B.n):
        sa = frozenset(v for v in range(B.n) if a[v])
        pattern = tuple(sa <= sl for sl in supp_l)
        d = pattern_dims(field, s, pattern)
        if any(d):
            # N_{i,a} = 0 when |a| < i
            assert all(d[i] == 0 for i in range(s + 1) if sum(a) < i), (a, d)
            out[a] = d
    return out


def _signed_grading(grading, a):
    D = grading.D.copy()
    for v in range(grading.n):
        if a[v]:
            D[:, v] = -D[:, v]
    return D


def fiber_points(grading, a, gamma):
    """Fine degrees e with sign pattern a (e_v <= -1 iff a_v = 1) and degree gamma."""
    D = _signed_grading(grading, a)
    target = tuple(int(x) for x in np.asarray(gamma) + grading.D @ np.asarray(a))
    try:
        sg = Grading(D)
    except NoPositiveFunctional:
        raise InfiniteDimensional(f"fiber of pattern {a} over {gamma} is not finite") from None
    ep = sg.monomials(target)
    av = np.asarray(a, dtype=np.int64)
    return np.where(av == 1, -1 - ep, ep)


def mustata_dims(B, module, gamma):
    """``[dim H^i_B(M)_gamma]`` for a free module M via the closed form."""
    B = B if isinstance(B, MonomialIdeal) else MonomialIdeal(B)
    g = module.grading
    s = len(B.radical().gens)
    out = [0] * (s + 1)
    N = mustata_N(B, module.field)
    for _, twist, _ in module.monomial_summands():
        gg = tuple(a - b for a, b in zip(gamma, twist))
        for a, d in N.items():
            cnt = None
            for i in range(s + 1):
                if d[i]:
                    if cnt is None:
                        cnt = len(fiber_points(g, a, gg))
                    out[i] += d[i] * cnt
    return out


def certified_t(B, module, gamma, i=None):
    """Stage from which the Taylor route is exact in degree gamma for a free module."""
    g = module.grading
    N = mustata_N(B, module.field)
    t = 1
    for _, twist, _ in module.monomial_summands():
        gg = tuple(a - b for a, b in zip(gamma, twist))
        for a, d in N.items():
            if (d[i] if i is not None else any(d)):
                pts = fiber_points(g, a, gg)
                if len(pts):
                    t = max(t, int(-pts.min()))
    return t


def _certified_free_p2(data, module, gamma):
    t = certified_t(data.B, module, gamma)
    dims = _fine_stage_dims(module, data, gamma, t)
    return [Entry(d, STABILIZED, "P2", t) for d in dims]


def mustata_ring_support(B, grading, field, i, box):
    """Supp H^i_B(R) on ``box``; exact infinite form for standard gradings."""
    B = B if isinstance(B, MonomialIdeal) else MonomialIdeal(B)
    N = mustata_N(B, field)
    pats = [a for a, d in N.items() if i < len(d) and d[i]]
    if grading.is_standard:
        blocks = grading.blocks
        form = []
        for a in pats:
            piece = []
            for blk in blocks:
                vals = {a[v] for v in blk}
                if vals == {0}:
                    piece.append((0, None))
                elif vals == {1}:
                    piece.append((None, -len(blk)))
                else:
                    piece.append((None, None))
            form.append(tuple(piece))
        return LatticeRegion.from_form(box, form_union(form))
    mask = np.zeros(box.shape, dtype=bool)
    for p in box.points():
        mask[box.index(p)] = any(len(fiber_points(grading, a, p)) for a in pats)
    return LatticeRegion(box, mask)


# -- Mayer-Vietoris bound -------------------------------------------------------------------------


def mayer_vietoris_bound(B, module, ell, box, t_max=12, window=2):
    """Union of ``Supp H^{ell+i-1}_{P_{j1}+...+P_{ji}}(M)`` over the minimal primes."""
    B = B if isinstance(B, MonomialIdeal) else MonomialIdeal(B)
    primes = B.minimal_primes()
    n = B.n
    mask = np.zeros(box.shape, dtype=bool)
    from itertools import combinations

    for r in range(1, len(primes) + 1):
        for combo in combinations(primes, r):
            vars_ = sorted(set().union(*combo))
            P = MonomialIdeal.coordinate(vars_, n)
            level = ell + r - 1
            if level < 0 or level > len(vars_):
                continue
            table = cohomology_table(P, module, box, path="auto", t_max=t_max, window=window, degrees=[level])
            for p in box.points():
                if table.dim(level, p):
                    mask[box.index(p)] = True
    return LatticeRegion(box, mask)


# -- tables ---------------------------------------------------------------------------------------


class CohomologyTable:
    """``(i, gamma) -> Entry`` over a box."""

    def __init__(self, B, module, box, entries, s, path):
        self.B, self.module, self.box = B, module, box
        self.entries = entries
        self.s = s
        self.path = path

    def entry(self, i, gamma):
        gamma = tuple(gamma)
        if i < 0 or i > self.s:
            return Entry(0, STABILIZED, self.path, None)
        try:
            return self.entries[(i, gamma)]
        except KeyError:
            raise KeyError(f"(i={i}, gamma={gamma}) not in table") from None

    def dim(self, i, gamma):
        return self.entry(i, gamma).dim

    def certified(self, i, gamma):
        return self.entry(i, gamma).status in (STABILIZED, EXACT)

    def degrees(self):
        return sorted({i for i, _ in self.entries})

    def support(self, i):
        pts = [p for (j, p), e in self.entries.items() if j == i and e.dim]
        return LatticeRegion.from_points(self.box, pts)

    def uncertified(self):
        return sorted((i, p) for (i, p), e in self.entries.items() if e.status == T_MAX)

    def rows(self):
        for (i, p) in sorted(self.entries):
            e = self.entries[(i, p)]
            yield (i,) + tuple(p) + (e.dim, e.status, e.path, "" if e.t_stab is None else e.t_stab)

    def translate(self, v):
        """Table of the same data indexed by ``gamma + v``."""
        ent = {(i, tuple(a + b for a, b in zip(p, v))): e for (i, p), e in self.entries.items()}
        return CohomologyTable(self.B, self.module, self.box.translate(v), ent, self.s, self.path)


def choose_path(module, path):
    if path != "auto":
        return path
    if is_free(module):
        return "P3"
    if module.monomial_summands() is not None:
        return "P1"
    return "P2"


def cohomology_table(B, module, box, path="auto", t_max=12, window=2, degrees=None):
    B = B if isinstance(B, MonomialIdeal) else MonomialIdeal(B)
    path = choose_path(module, path)
    entries = {}
    if path == "P3":
        if not is_free(module):
            raise ValueError("the closed form only applies to free modules")
        s = len(B.radical().gens)
        for p in box.points():
            d = mustata_dims(B, module, p)
            for i in range(s + 1):
                if degrees is None or i in degrees:
                    entries[(i, p)] = Entry(d[i], EXACT, "P3", None)
        return CohomologyTable(B, module, box, entries, s, path)
    s = CechData(B, path).s
    for p in box.points():
        ents = colimit_dims(B, module, p, path, t_max, window)
        for i, e in enumerate(ents):
            if degrees is None or i in degrees:
                entries[(i, p)] = e
    return CohomologyTable(B, module, box, entries, s, path)


def cd_bracket(table):
    """``(lower, upper)`` bounds for the cohomological dimension from a table."""
    nz = [i for (i, _), e in table.entries.items() if e.dim]
    return (max(nz) if nz else None, table.s)
