"""Weak regularity, regularity regions reg_B^l(M), and the bounds tying them to Tor.

A point gamma is weakly regular at level l when it avoids
``U_{i>=l} Supp H^i_B(M) + F_{i-1}`` (``E_{i-1}`` for the very weak
flavour), and regular when every point of ``gamma + C`` is weakly regular.
Only finitely many points of ``gamma + C`` can be inspected, so the tail
beyond the working box is controlled by an outer bound for the irregular
set built from the exact supports of H^i_B(R) and the Betti degrees of M.
"""


import numpy as np

from .grading import shift_set
from .koszul import betti_box, betti_table
from .local_cohomology import STABILIZED, EXACT, cohomology_table, is_free, mustata_ring_support
from .regions import (
    Box,
    LatticeRegion,
    form_complement,
    form_down,
    form_intersect,
    form_minkowski,
    form_union,
    gbox_any,
    minkowski_sum,
)
from .ring import MonomialIdeal

CERTIFIED = "certified"
UNCERTIFIED = "boundary-uncertified"


class InsufficientTable(KeyError):
    pass


class HypothesisFailed(ValueError):
    pass


def level_shifts(grading, ell, s, flavor="weak"):
    """``{i: E_{i-1} or F_{i-1}}`` for ``ell <= i <= s``."""
    kind = "F" if flavor == "weak" else "E"
    return {i: shift_set(grading, i - 1, kind) for i in range(max(ell, 0), s + 1)}


def _all_shifts(shifts):
    pts = [v for vs in shifts.values() for v in vs]
    return pts


def weakly_regular(table, grading, gamma, ell=0, flavor="weak"):
    """Definition check at one point, reading the cohomology table."""
    gamma = tuple(gamma)
    for i, vs in level_shifts(grading, ell, table.s, flavor).items():
        for v in vs:
            p = tuple(a - b for a, b in zip(gamma, v))
            if p not in table.box:
                raise InsufficientTable((i, p))
            if table.dim(i, p):
                return False
    return True


# -- outer bounds off the box ---------------------------------------------------------------


def ring_support_forms(B, grading, field, box):
    """``{i: infinite form of Supp H^i_B(R)}`` (standard gradings)."""
    B = B if isinstance(B, MonomialIdeal) else MonomialIdeal(B)
    s = len(B.radical().gens)
    return {i: mustata_ring_support(B, grading, field, i, box).form for i in range(s + 1)}


def irregular_outer_form(B, module, ell, flavor, betti, box):
    """Infinite form containing ``U_{i>=l} Supp H^i_B(M) + F_{i-1}``.

    For free modules it is exact; otherwise it uses
    ``Supp H^i_B(M) in U_j Supp H^{i+j}_B(R) + T_j``.
    """
    g = module.grading
    if not g.is_standard:
        return None
    ring = ring_support_forms(B, g, module.field, box)
    s = max(ring)
    shifts = level_shifts(g, ell, s, flavor)
    if betti is None:
        return None
    pieces = []
    for i, vs in shifts.items():
        for j, pts in betti.items():
            if i + j > s or not pts or not ring.get(i + j):
                continue
            base = form_minkowski(ring[i + j], list(pts))
            pieces.append(form_minkowski(base, list(vs)))
    return form_union(*pieces) if pieces else ()


def _free_betti(module):
    """Betti degrees of a free module: just its shifts in homological degree 0."""
    return {0: {tuple(t) for _, t, _ in module.monomial_summands()}}


# -- regions ------------------------------------------------------------------------------------


class RegularityRegion:
    def __init__(self, level, flavor, region, status, weak, table, outer_form=None):
        self.level = level
        self.flavor = flavor
        self.region = region
        self.status = status  # per point of region.box
        self.weak = weak  # weakly regular points on the box (LatticeRegion)
        self.table = table
        self.outer_form = outer_form

    @property
    def box(self):
        return self.region.box

    def __contains__(self, p):
        return p in self.region

    def certified(self, p=None):
        if p is None:
            return all(v == CERTIFIED for v in self.status.values())
        return self.status[tuple(p)] == CERTIFIED

    def uncertified_points(self):
        return sorted(p for p, v in self.status.items() if v != CERTIFIED)

    def points(self):
        return self.region.points()


def _up_any(mask):
    """``out[p] = any(mask[q] for q >= p)`` (suffix OR along every axis)."""
    out = mask.copy()
    for ax in range(mask.ndim):
        out = np.flip(np.logical_or.accumulate(np.flip(out, axis=ax), axis=ax), axis=ax)
    return out


def _up_any_general(mask, grading, box):
    """Same for a general monoid C: BFS inside the box along the degrees."""
    out = mask.copy()
    pts = sorted(box.points(), key=lambda p: -grading.weight(p))
    for p in pts:
        if out[box.index(p)]:
            continue
        for d in grading.distinct_degrees:
            q = tuple(a + b for a, b in zip(p, d))
            if q in box and out[box.index(q)]:
                out[box.index(p)] = True
                break
    return out


def regularity_region(
    B,
    module,
    box,
    ell=0,
    flavor="weak",
    margin=2,
    t_max=12,
    window=2,
    path="auto",
    table=None,
    betti=None,
):
    """``reg_B^l(M)`` on ``box`` with a per-point certification flag."""
    B = B if isinstance(B, MonomialIdeal) else MonomialIdeal(B)
    g = module.grading
    s_guess = len(B.gens) if path == "P1" else len(B.radical().gens)
    shifts = level_shifts(g, ell, max(s_guess, len(B.gens)), flavor)
    allv = np.array(_all_shifts(shifts) or [(0,) * g.k])
    W = Box(box.lo, tuple(h + margin for h in box.hi))
    T = Box(tuple(np.array(W.lo) - allv.max(axis=0)), tuple(np.array(W.hi) - allv.min(axis=0)))
    if table is None or not table.box.contains_box(T):
        table = cohomology_table(B, module, T, path=path, t_max=t_max, window=window)
    shifts = level_shifts(g, ell, table.s, flavor)
    bad = np.zeros(W.shape, dtype=bool)
    maybe = np.zeros(W.shape, dtype=bool)
    for p in W.points():
        k = W.index(p)
        for i, vs in shifts.items():
            for v in vs:
                e = table.entry(i, tuple(a - b for a, b in zip(p, v)))
                if e.status in (STABILIZED, EXACT):
                    if e.dim:
                        bad[k] = True
                else:
                    maybe[k] = True
    maybe |= bad
    up = _up_any if g.is_standard else (lambda m: _up_any_general(m, g, W))
    bad_up, maybe_up = up(bad), up(maybe)

    # tail control
    if betti is None and g.is_standard:
        if is_free(module):
            betti = _free_betti(module)
        else:
            try:
                bb = betti_box(module)
            except ValueError:
                bb = None
            if bb is not None:
                tb = betti_table(module, bb)
                betti = {j: set(v) for j, v in tb.items()}
    outer = irregular_outer_form(B, module, ell, flavor, betti, W) if betti is not None else None
    if outer is not None:
        wform = (tuple((a, b) for a, b in zip(W.lo, W.hi)),)
        tail = form_down(form_intersect(outer, form_complement(wform, g.k)))
    else:
        tail = None

    mask = np.zeros(box.shape, dtype=bool)
    weak = np.zeros(box.shape, dtype=bool)
    status = {}
    for p in box.points():
        k = W.index(p)
        weak[box.index(p)] = not maybe[k]
        if bad_up[k]:
            status[p] = CERTIFIED  # a certified witness inside the box
            continue
        mask[box.index(p)] = not maybe_up[k]
        tail_ok = tail is not None and not gbox_any(tail, p)
        status[p] = CERTIFIED if (not maybe_up[k] and tail_ok) else UNCERTIFIED
    return RegularityRegion(
        ell, flavor, LatticeRegion(box, mask), status, LatticeRegion(box, weak), table, outer
    )


def ring_regularity_form(B, grading, field, ell=0, flavor="weak"):
    """Exact infinite form of ``reg_B^l(R)`` for standard gradings."""
    B = B if isinstance(B, MonomialIdeal) else MonomialIdeal(B)
    any_box = Box((0,) * grading.k, (0,) * grading.k)
    ring = ring_support_forms(B, grading, field, any_box)
    s = max(ring)
    pieces = [form_minkowski(ring[i], list(vs)) for i, vs in level_shifts(grading, ell, s, flavor).items() if ring[i]]
    X = form_union(*pieces) if pieces else ()
    return form_complement(form_down(X), grading.k)


# -- Tor bounds from regularity ---------------------------------------------------------------------


def _complement_form(region):
    if region.form is None:
        return None
    return form_complement(region.form, region.box.k)


def tor_bound_from_reg(
    reg, grading, j, box, kind="ThmLCtoTor1", i_list=None, h0_support=None, support=None, B=None, witness=None
):
    """Outer bound for ``Supp Tor_j(M, k)`` on ``box`` derived from ``reg_B(M)``.

    ``reg`` is a LatticeRegion (with infinite form when the translates leave
    its box).  ``kind`` selects ``E_{j+1} + C reg`` or, for the degrees
    ``gamma_i`` in ``i_list``, the intersection of ``gamma_i + E_j + C reg``.
    ``support`` (a region containing Supp M) adds the factor ``Supp M + E_j``.
    When ``B`` is given, each ``gamma_i`` must satisfy ``B in sqrt(B_i + witness)``;
    leaving it out evaluates the formula without checking the hypothesis.
    """
    n = grading.n
    comp = reg.complement()
    if kind == "ThmLCtoTor1":
        if j == n:
            if h0_support is None:
                raise ValueError("the case j = n needs Supp H^0_B(M)")
            out = minkowski_sum(h0_support, shift_set(grading, n), box)
        else:
            out = minkowski_sum(comp, shift_set(grading, j + 1), box)
    elif kind == "ThmLCtoTor2":
        if not i_list:
            raise HypothesisFailed("no degree satisfies the radical hypothesis")
        if B is not None:
            ok = admissible_degrees(B, grading, witness if witness is not None else MonomialIdeal([], grading.n))
            bad = [tuple(mu) for mu in i_list if tuple(mu) not in ok]
            if bad:
                raise HypothesisFailed(bad[0])
        out = None
        for mu in i_list:
            shifts = [tuple(a + b for a, b in zip(mu, e)) for e in shift_set(grading, j)]
            r = minkowski_sum(comp, shifts, box)
            out = r if out is None else out.intersect(r)
    else:
        raise ValueError(f"unknown bound {kind!r}")
    if support is not None:
        out = out.intersect(minkowski_sum(support, shift_set(grading, j), box))
    return out


def admissible_degrees(B, grading, witness):
    """Distinct degrees mu_i with ``B in sqrt(B_i + witness)``."""
    from .ring import radical_contains

    B = B if isinstance(B, MonomialIdeal) else MonomialIdeal(B)
    out = []
    for mu in grading.distinct_degrees:
        Bi = MonomialIdeal.coordinate(grading.variables_of_degree(mu), grading.n)
        if radical_contains(B, Bi + witness):
            out.append(mu)
    return out


def reg_lower_bound_from_betti(B, grading, field, betti, ell, box, flavor="weak"):
    """``U`` = intersection of ``reg_B^{l+i}(R) + gamma - gamma'`` over i, gamma in T_i, gamma' in F_i.

    Exact infinite form (standard gradings); every point of it is in
    ``reg_B^l(M)``.
    """
    B = B if isinstance(B, MonomialIdeal) else MonomialIdeal(B)
    s = len(B.radical().gens)
    full = (tuple((None, None) for _ in range(grading.k)),)
    form = full
    for i, pts in sorted(betti.items()):
        if not pts or ell + i > s:
            continue
        base = ring_regularity_form(B, grading, field, ell + i, flavor)
        for gam in pts:
            for v in shift_set(grading, i, "F"):
                shifted = form_minkowski(base, [tuple(a - b for a, b in zip(gam, v))])
                form = form_intersect(form, shifted)
    return LatticeRegion.from_form(box, form)


def standard_reg_number(region, lo):
    """For a Z-graded region ``Z_{>=r}`` on a box, return r (None if empty)."""
    pts = sorted(p[0] for p in region.points())
    return pts[0] if pts else None
