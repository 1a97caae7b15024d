"""Koszul complexes sliced per degree, Tor against the residue field, Betti supports.

Both the Koszul complex on the variables and the Cech-type complexes used for
local cohomology are "subset complexes": a term for every subset of a ground
set and signed incidence maps between sets differing in one element.  For a
monomial module every fine degree gives such a complex in which each subset
contributes either a one-dimensional space or nothing; its homology depends
only on that presence pattern and is cached.
"""

from functools import lru_cache
from itertools import combinations

import numpy as np

from .regions import Box, LatticeRegion
from .ring import MonomialQuotient

# -- subsets -----------------------------------------------------------------


@lru_cache(maxsize=None)
def subsets(s, j):
    """j-subsets of range(s) in lex order."""
    if j < 0 or j > s:
        return ()
    return tuple(combinations(range(s), j))


@lru_cache(maxsize=None)
def all_subsets(s):
    """Every subset of range(s), ordered by size then lex; with position index."""
    out = [J for j in range(s + 1) for J in subsets(s, j)]
    return tuple(out), {J: k for k, J in enumerate(out)}


def sign(J, q):
    """Sign attached to dropping the element at position q of sorted J."""
    return -1 if q % 2 else 1


@lru_cache(maxsize=None)
def incidence(s, j):
    """Signed incidence between j-subsets (columns) and (j-1)-subsets (rows)."""
    rows = subsets(s, j - 1)
    cols = subsets(s, j)
    ridx = {J: k for k, J in enumerate(rows)}
    out = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for c, J in enumerate(cols):
        for q in range(len(J)):
            out[ridx[J[:q] + J[q + 1 :]], c] = sign(J, q)
    out.setflags(write=False)
    return out


def _layer_masks(s, pattern):
    """Split a flat presence tuple (all_subsets order) into per-size index lists."""
    order, _ = all_subsets(s)
    layers = [[] for _ in range(s + 1)]
    pos = [0] * (s + 1)
    for k, J in enumerate(order):
        if pattern[k]:
            layers[len(J)].append(pos[len(J)])
        pos[len(J)] += 1
    return layers


def _restricted(field, s, layers, j):
    """Incidence j -> j-1 restricted to present sets, as a field matrix."""
    A = incidence(s, j)[np.ix_(layers[j - 1], layers[j])]
    if field.is_prime:
        return A % field.p
    return field.matrix(A.tolist()) if A.size else field.zeros(*A.shape)


@lru_cache(maxsize=1 << 16)
def pattern_ranks(field, s, pattern):
    layers = _layer_masks(s, pattern)
    ranks = [0] * (s + 2)
    for j in range(1, s + 1):
        if layers[j] and layers[j - 1]:
            ranks[j] = field.rank(_restricted(field, s, layers, j))
    return tuple(ranks)


@lru_cache(maxsize=1 << 16)
def pattern_dims(field, s, pattern):
    """Homology dimension in each size 0..s of the pattern's subset complex."""
    layers = _layer_masks(s, pattern)
    r = pattern_ranks(field, s, pattern)
    return tuple(len(layers[j]) - r[j] - r[j + 1] for j in range(s + 1))


@lru_cache(maxsize=1 << 16)
def pattern_transition_rank(field, s, src, dst, i):
    """Rank of the map on cohomology in size i induced by restriction ``src -> dst``.

    The cochain maps go from size i-1 to size i (transpose of ``incidence``);
    the transition is the identity on sets present in both patterns.
    """
    ls, ld = _layer_masks(s, src), _layer_masks(s, dst)
    if not ls[i] or not ld[i]:
        return 0
    # cocycles of src in size i: kernel of the coboundary i -> i+1
    if i + 1 <= s and ls[i + 1]:
        Z = field.nullspace(_restricted(field, s, ls, i + 1).T)
    else:
        Z = field.identity(len(ls[i]))
    if Z.shape[1] == 0:
        return 0
    pos = {v: k for k, v in enumerate(ld[i])}
    phiZ = field.zeros(len(ld[i]), Z.shape[1])
    for r, v in enumerate(ls[i]):
        if v in pos:
            phiZ[pos[v], :] = Z[r, :]
    if i >= 1 and ld[i - 1]:
        Bd = _restricted(field, s, ld, i).T
    else:
        Bd = field.zeros(len(ld[i]), 0)
    rb = field.rank(Bd) if Bd.shape[1] else 0
    both = field.hstack([phiZ, Bd], len(ld[i]))
    return field.rank(both) - rb


def presence_patterns(present):
    """Group rows of a boolean matrix; returns (unique rows as tuples, counts, inverse)."""
    if present.shape[0] == 0:
        return [], np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    uniq, inverse, counts = np.unique(present, axis=0, return_inverse=True, return_counts=True)
    return [tuple(bool(x) for x in row) for row in uniq], counts, inverse.reshape(-1)


def monomial_presence(summand, grading, points):
    """For fine degrees ``points`` (N x n) of a monomial summand: nonzero piece?"""
    ideal, twist, region = summand
    ok = np.all(points >= 0, axis=1)
    if ok.any() and not ideal.is_zero:
        ok[ok] &= ~ideal.contains_many(points[ok])
    if region is not None and ok.any():
        coarse = points[ok] @ grading.D.T + np.asarray(twist, dtype=np.int64)
        ok[ok] &= region.contains_many(coarse)
    return ok


# -- polynomial multiplication on a module ----------------------------------------


def mult_poly(module, gamma, poly):
    F = module.field
    out = None
    for e, c in sorted(poly.items()):
        if c == 0:
            continue
        term = F.scale(module.mult_monomial(gamma, e), c) if F.is_prime else module.mult_monomial(gamma, e) * c
        out = term if out is None else F.add(out, term)
    return out


def _poly_of(f, n):
    if isinstance(f, dict):
        return {tuple(int(x) for x in m): c for m, c in f.items() if c != 0}
    return {tuple(int(x) for x in f): 1}


# -- Koszul complex of an arbitrary sequence ----------------------------------------


class KoszulSlice:
    """``K_.(f; M)_gamma``: terms and differentials ``d_j : K_j -> K_{j-1}``."""

    def __init__(self, f, module, gamma):
        g = module.grading
        self.module = module
        self.gamma = tuple(int(x) for x in gamma)
        self.f = [_poly_of(x, g.n) for x in f]
        self.deltas = []
        for p in self.f:
            degs = {g.degree(m) for m in p}
            if len(degs) != 1:
                raise ValueError("Koszul sequence must be homogeneous and nonzero")
            self.deltas.append(degs.pop())
        self.r = len(self.f)

    def term_degree(self, J):
        return tuple(a - sum(self.deltas[i][d] for i in J) for d, a in enumerate(self.gamma))

    def term_dims(self, j):
        return [self.module.dim(self.term_degree(J)) for J in subsets(self.r, j)]

    def differential(self, j):
        F = self.module.field
        rows_J, cols_J = subsets(self.r, j - 1), subsets(self.r, j)
        rdims, cdims = self.term_dims(j - 1), self.term_dims(j)
        roff = np.concatenate([[0], np.cumsum(rdims)]).astype(int)
        coff = np.concatenate([[0], np.cumsum(cdims)]).astype(int)
        ridx = {J: k for k, J in enumerate(rows_J)}
        out = F.zeros(int(roff[-1]), int(coff[-1]))
        for c, J in enumerate(cols_J):
            if cdims[c] == 0:
                continue
            src = self.term_degree(J)
            for q, i in enumerate(J):
                K = J[:q] + J[q + 1 :]
                k = ridx[K]
                if rdims[k] == 0:
                    continue
                block = mult_poly(self.module, src, self.f[i])
                if block is None:
                    continue
                if sign(J, q) < 0:
                    block = F.sub(F.zeros(*block.shape), block)
                out[roff[k] : roff[k + 1], coff[c] : coff[c + 1]] = block
        return out

    def homology_dims(self):
        F = self.module.field
        dims = [sum(self.term_dims(j)) for j in range(self.r + 1)]
        ranks = [0] * (self.r + 2)
        for j in range(1, self.r + 1):
            D = self.differential(j)
            ranks[j] = F.rank(D) if D.size else 0
        return [dims[j] - ranks[j] - ranks[j + 1] for j in range(self.r + 1)]


def koszul_homology_dim(f, module, j, gamma):
    sl = KoszulSlice(f, module, gamma)
    if j < 0 or j > sl.r:
        return 0
    return sl.homology_dims()[j]


def variables(grading):
    return [tuple(int(i == v) for i in range(grading.n)) for v in range(grading.n)]


# -- Tor against the residue field ----------------------------------------------------


def _fine_tor(module, gamma):
    """Tor dims of a direct sum of monomial quotients at coarse degree gamma."""
    g = module.grading
    n = g.n
    order, _ = all_subsets(n)
    U = np.array([[1 if v in J else 0 for v in range(n)] for J in order], dtype=np.int64)
    total = [0] * (n + 1)
    for summand in module.monomial_summands():
        ideal, twist, region = summand
        C = g.monomials(tuple(a - b for a, b in zip(gamma, twist)))
        if len(C) == 0:
            continue
        pts = (C[:, None, :] - U[None, :, :]).reshape(-1, n)
        present = monomial_presence(summand, g, pts).reshape(len(C), len(order))
        pats, counts, _ = presence_patterns(present)
        for p, c in zip(pats, counts):
            if any(p):
                d = pattern_dims(module.field, n, p)
                for j in range(n + 1):
                    total[j] += int(c) * d[j]
    return total


def tor_dims(module, gamma):
    """``[dim Tor_j(M, k)_gamma for j = 0..n]``."""
    gamma = tuple(int(x) for x in gamma)
    if module.monomial_summands() is not None:
        return _fine_tor(module, gamma)
    return KoszulSlice(variables(module.grading), module, gamma).homology_dims()


def tor_dim(module, j, gamma):
    if j < 0 or j > module.grading.n:
        return 0
    return tor_dims(module, gamma)[j]


def betti_table(module, box):
    """``{j: {gamma: beta_{j,gamma}}}`` over the box, nonzero entries only."""
    out = {j: {} for j in range(module.grading.n + 1)}
    for p in box.points():
        for j, d in enumerate(tor_dims(module, p)):
            if d:
                out[j][p] = d
    return out


def betti_support(module, j, box, table=None):
    table = table or betti_table(module, box)
    return LatticeRegion.from_points(box, table.get(j, {}))


def betti_box(module):
    """A box containing every Betti degree (exact for monomial quotients).

    Fine Betti degrees of R/J lie between 0 and lcm of all generators; for
    other presentations the box spans the generator degrees up to the relation
    degrees plus the total variable degree (a heuristic).
    """
    from .ring import DirectSum, Presentation, Truncation

    g = module.grading
    D = g.D
    if isinstance(module, MonomialQuotient) and module.region is None:
        top = np.array([max(c) for c in zip(*module.ideal.gens)] if module.ideal.gens else [0] * g.n)
        lo = np.minimum(D, 0) @ top + np.array(module.twist)
        hi = np.maximum(D, 0) @ top + np.array(module.twist)
        return Box(lo, hi)
    if isinstance(module, MonomialQuotient) and module.region.form is not None and (D >= 0).all():
        # generators of the truncation sit at the corners of the region;
        # Betti degrees stay below corner + lcm(J) + every variable once
        top = np.array([max(c) for c in zip(*module.ideal.gens)] if module.ideal.gens else [0] * g.n)
        tw = np.array(module.twist)
        corners = [tw]
        for piece in module.region.form:
            corners.append(np.array([tw[d] if lo is None else max(lo, tw[d]) for d, (lo, _) in enumerate(piece)]))
        return Box(tw, np.max(corners, axis=0) + D @ top + D.sum(axis=1))
    if isinstance(module, DirectSum) and module.modules:
        boxes = [betti_box(m) for m in module.modules]
        return Box(np.min([b.lo for b in boxes], axis=0), np.max([b.hi for b in boxes], axis=0))
    if isinstance(module, Truncation) and module.region.form is not None:
        inner = betti_box(module.module)
        corners = [np.array(inner.lo)]
        for piece in module.region.form:
            corners.append(np.array([inner.lo[d] if lo is None else max(lo, inner.lo[d]) for d, (lo, _) in enumerate(piece)]))
        top = np.max(corners, axis=0)
        return Box(inner.lo, np.maximum(inner.hi, top + np.maximum(D.sum(axis=1), 0)))
    if isinstance(module, Presentation):
        shifts = np.array(module.row_shifts + module.col_shifts)
        total = D.sum(axis=1)
        return Box(shifts.min(axis=0), shifts.max(axis=0) + np.maximum(total, 0))
    raise ValueError("no automatic Betti box for this module; pass one explicitly")


def euler_check(f, module, gamma):
    """Alternating sums of term and homology dimensions agree."""
    sl = KoszulSlice(f, module, gamma)
    terms = sum((-1) ** j * sum(sl.term_dims(j)) for j in range(sl.r + 1))
    hom = sum((-1) ** j * d for j, d in enumerate(sl.homology_dims()))
    return terms == hom


def d_squared_zero(f, module, gamma):
    sl = KoszulSlice(f, module, gamma)
    F = module.field
    for j in range(2, sl.r + 1):
        A, B = sl.differential(j - 1), sl.differential(j)
        if A.size and B.size:
            P = F.matmul(A, B)
            if np.any(P != 0) if F.is_prime else any(x != 0 for x in P.flat):
                return False
    return True
