"""Monomial ideals and graded modules as degreewise oracles.

A module answers ``dim(gamma)`` and ``mult_monomial(gamma, exps)`` (the
matrix of multiplication by a monomial in the chosen bases).  Monomial
quotients ``(R/J)[-tau]`` restricted to a C-stable set also expose their fine
(Z^n-graded) structure, which the cohomology and Tor engines exploit.
"""

from fractions import Fraction
import threading

import numpy as np

from .grading import Grading
from .linalg import Field
from .regions import LatticeRegion, NotStable, OutOfBox, is_stable


class NonMonomialInput(ValueError):
    pass


class InfiniteDimensional(ValueError):
    pass


# -- monomial ideals --------------------------------------------------------

def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def lcm(*monos):
    return tuple(max(c) for c in zip(*monos))


class MonomialIdeal:
    """Ideal generated by monomials (exponent vectors), kept minimally generated."""

    def __init__(self, gens, n=None):
        gens = [tuple(int(x) for x in g) for g in gens]
        if n is None:
            if not gens:
                raise ValueError("cannot infer the number of variables")
            n = len(gens[0])
        if any(len(g) != n or min(g, default=0) < 0 for g in gens):
            raise ValueError("bad exponent vector")
        uniq = sorted(set(gens), key=lambda g: (sum(g), tuple(-x for x in g)))
        minimal = []
        for g in uniq:
            if not any(divides(h, g) for h in minimal):
                minimal.append(g)
        self.n = n
        self.gens = tuple(sorted(minimal, reverse=True))
        self._arr = np.array(self.gens, dtype=np.int64).reshape(len(self.gens), n)

    def __repr__(self):
        return f"MonomialIdeal({list(self.gens)})"

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.gens == other.gens and self.n == other.n

    def __hash__(self):
        return hash((self.n, self.gens))

    @property
    def is_zero(self):
        return not self.gens

    def contains(self, exps):
        return any(divides(g, exps) for g in self.gens)

    def contains_many(self, arr):
        """Vectorised membership for an ``(N, n)`` array of exponent vectors."""
        arr = np.asarray(arr, dtype=np.int64)
        out = np.zeros(arr.shape[0], dtype=bool)
        for g in self._arr:
            out |= np.all(arr >= g, axis=1)
        return out

    def radical(self):
        return MonomialIdeal([tuple(int(x > 0) for x in g) for g in self.gens], self.n)

    def supports(self):
        return [frozenset(i for i, x in enumerate(g) if x > 0) for g in self.gens]

    def minimal_primes(self):
        """Variable sets of the minimal primes (minimal vertex covers of the supports)."""
        if not self.gens:
            return []
        covers = [frozenset()]
        for s in self.supports():
            nxt = set()
            for c in covers:
                if c & s:
                    nxt.add(c)
                else:
                    nxt.update(c | {v} for v in s)
            covers = [c for c in nxt if not any(d < c for d in nxt)]
        return sorted((c for c in set(covers)), key=lambda c: (len(c), sorted(c)))

    def __add__(self, other):
        return MonomialIdeal(self.gens + other.gens, self.n)

    def __mul__(self, other):
        return MonomialIdeal([tuple(a + b for a, b in zip(g, h)) for g in self.gens for h in other.gens], self.n)

    def intersection(self, other):
        return MonomialIdeal([lcm(g, h) for g in self.gens for h in other.gens], self.n)

    def frobenius(self, t):
        return MonomialIdeal([tuple(t * x for x in g) for g in self.gens], self.n)

    @classmethod
    def coordinate(cls, variables, n):
        return cls([tuple(int(i == v) for i in range(n)) for v in variables], n)


def radical_contains(B, J):
    """``B`` is contained in the radical of ``J`` (both monomial)."""
    B, J = as_monomial_ideal(B), as_monomial_ideal(J)
    # g^N lies in J iff some generator of J has support inside supp(g)
    sj = J.supports()
    return all(any(s <= sg for s in sj) for sg in B.supports())


def ideal_radical_membership(B, J):
    return radical_contains(B, J)


def as_monomial_ideal(x, n=None):
    if isinstance(x, MonomialIdeal):
        return x
    gens = []
    for g in x:
        if isinstance(g, dict):
            terms = [m for m, c in g.items() if c != 0]
            if len(terms) != 1:
                raise NonMonomialInput(f"{g} is not a monomial")
            gens.append(terms[0])
        else:
            gens.append(tuple(g))
    return MonomialIdeal(gens, n)


# -- polynomials as {exponent tuple: coefficient} -----------------------------

def poly_degree(grading, poly):
    degs = {grading.degree(m) for m, c in poly.items() if c != 0}
    if len(degs) > 1:
        raise ValueError(f"polynomial is not homogeneous: degrees {sorted(degs)}")
    return degs.pop() if degs else None


def is_monomial_poly(poly):
    return sum(1 for c in poly.values() if c != 0) == 1


# -- module oracles -----------------------------------------------------------

class GradedModule:
    """Degreewise oracle: dimensions and multiplication matrices."""

    def __init__(self, grading, field):
        self.grading = grading
        self.field = field
        self._cache = {}
        self._lock = threading.RLock()

    def _memo(self, key, fn):
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = fn()
        with self._lock:
            return self._cache.setdefault(key, value)

    def dim(self, gamma):
        raise NotImplementedError

    def basis_labels(self, gamma):
        return [f"e{j}" for j in range(self.dim(gamma))]

    def mult_monomial(self, gamma, exps):
        raise NotImplementedError

    def mult(self, gamma, i):
        e = [0] * self.grading.n
        e[i] = 1
        return self.mult_monomial(gamma, tuple(e))

    # fine structure: list of (J, tau, region or None) summands, or None
    def monomial_summands(self):
        return None

    def ann_witness(self):
        """A monomial ideal contained in the annihilator."""
        return MonomialIdeal([], self.grading.n)

    def _target(self, gamma, exps):
        return tuple(a + b for a, b in zip(gamma, self.grading.degree(exps)))


class ZeroModule(GradedModule):
    def dim(self, gamma):
        return 0

    def mult_monomial(self, gamma, exps):
        return self.field.zeros(0, 0)

    def monomial_summands(self):
        return []

    def ann_witness(self):
        return MonomialIdeal([(0,) * self.grading.n], self.grading.n)


class MonomialQuotient(GradedModule):
    """``(R/J)[-tau]`` restricted to a C-stable set (``region``; None = everything)."""

    def __init__(self, grading, field, ideal, twist=None, region=None):
        super().__init__(grading, field)
        self.ideal = as_monomial_ideal(ideal, grading.n)
        self.twist = tuple(twist) if twist is not None else (0,) * grading.k
        self.region = region

    def __repr__(self):
        return f"MonomialQuotient({list(self.ideal.gens)}, twist={self.twist})"

    def in_region(self, gamma):
        if self.region is None:
            return True
        return gamma in self.region

    def basis(self, gamma):
        gamma = tuple(int(x) for x in gamma)

        def build():
            if not self.in_region(gamma):
                arr = np.zeros((0, self.grading.n), dtype=np.int64)
            else:
                mons = self.grading.monomials(tuple(g - t for g, t in zip(gamma, self.twist)))
                arr = mons[~self.ideal.contains_many(mons)] if len(mons) else mons
            index = {tuple(int(x) for x in row): j for j, row in enumerate(arr)}
            return arr, index

        return self._memo(("basis", gamma), build)

    def dim(self, gamma):
        return len(self.basis(gamma)[0])

    def basis_labels(self, gamma):
        names = self.grading.names
        out = []
        for row in self.basis(gamma)[0]:
            parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, row) if e]
            out.append("*".join(parts) or "1")
        return out

    def mult_monomial(self, gamma, exps):
        gamma = tuple(gamma)
        src, _ = self.basis(gamma)
        tgt_deg = self._target(gamma, exps)
        _, tindex = self.basis(tgt_deg)
        out = self.field.zeros(len(tindex), len(src))
        one = self.field.elem(1)
        for j, row in enumerate(src):
            k = tindex.get(tuple(int(a + b) for a, b in zip(row, exps)))
            if k is not None:
                out[k, j] = one
        return out

    def monomial_summands(self):
        return [(self.ideal, self.twist, self.region)]

    def ann_witness(self):
        return self.ideal


class Presentation(GradedModule):
    """Cokernel of ``F1 -> F0`` given by a matrix of homogeneous polynomials.

    ``row_shifts[r]`` is the degree of the r-th generator of F0 and
    ``col_shifts[c]`` that of the c-th relation; ``entries[(r, c)]`` is a
    polynomial ``{exps: coeff}`` of degree ``col_shifts[c] - row_shifts[r]``.
    """

    def __init__(self, grading, field, row_shifts, col_shifts, entries, ann=None):
        super().__init__(grading, field)
        self.row_shifts = [tuple(int(x) for x in s) for s in row_shifts]
        self.col_shifts = [tuple(int(x) for x in s) for s in col_shifts]
        self.entries = {}
        for (r, c), poly in entries.items():
            poly = {tuple(int(x) for x in m): Fraction(v) for m, v in poly.items() if v != 0}
            if not poly:
                continue
            want = tuple(a - b for a, b in zip(self.col_shifts[c], self.row_shifts[r]))
            got = poly_degree(grading, poly)
            if got != want:
                raise ValueError(f"entry ({r},{c}) has degree {got}, expected {want}")
            self.entries[(r, c)] = poly
        self._ann = ann

    def _free_coords(self, gamma):
        coords = []
        for r, s in enumerate(self.row_shifts):
            for row in self.grading.monomials(tuple(g - x for g, x in zip(gamma, s))):
                coords.append((r, tuple(int(x) for x in row)))
        return coords, {c: j for j, c in enumerate(coords)}

    def _piece(self, gamma):
        gamma = tuple(int(x) for x in gamma)

        def build():
            F = self.field
            coords, index = self._free_coords(gamma)
            rows = []
            for c, s in enumerate(self.col_shifts):
                col = [(r, p) for (r, cc), p in self.entries.items() if cc == c]
                if not col:
                    continue
                for m in self.grading.monomials(tuple(g - x for g, x in zip(gamma, s))):
                    acc = {}
                    for r, p in col:
                        for e, coef in p.items():
                            k = index[(r, tuple(int(a + b) for a, b in zip(m, e)))]
                            acc[k] = acc.get(k, 0) + coef
                    v = F.zeros(1, len(coords))[0]
                    for k, coef in acc.items():
                        v[k] = F.elem(coef)
                    rows.append(v)
            if rows:
                R, pivots = F.rref(np.array(rows, dtype=F.dtype))
                R = R[: len(pivots)]
            else:
                R, pivots = F.zeros(0, len(coords)), []
            pset = set(pivots)
            free = [j for j in range(len(coords)) if j not in pset]
            return coords, index, R, list(pivots), free

        return self._memo(("piece", gamma), build)

    def dim(self, gamma):
        return len(self._piece(gamma)[4])

    def basis_labels(self, gamma):
        coords, _, _, _, free = self._piece(gamma)
        names = self.grading.names
        out = []
        for j in free:
            r, m = coords[j]
            parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
            out.append(f"{'*'.join(parts) or '1'}*g{r}")
        return out

    def reduce(self, gamma, V):
        """Coordinates in the basis of M_gamma of the columns of V (free coordinates)."""
        F = self.field
        coords, index, R, pivots, free = self._piece(gamma)
        if pivots:
            V = F.sub(V, F.matmul(R.T, V[pivots, :]))
        return V[free, :]

    def mult_monomial(self, gamma, exps):
        F = self.field
        gamma = tuple(gamma)
        coords, _, _, _, free = self._piece(gamma)
        tgt = self._target(gamma, exps)
        tcoords, tindex, _, _, _ = self._piece(tgt)
        V = F.zeros(len(tcoords), len(free))
        one = F.elem(1)
        for j, f in enumerate(free):
            r, m = coords[f]
            V[tindex[(r, tuple(a + b for a, b in zip(m, exps)))], j] = one
        return self.reduce(tgt, V)

    def ann_witness(self):
        if self._ann is not None:
            return self._ann
        return MonomialIdeal([], self.grading.n)


class Shifted(GradedModule):
    """``M[g]`` with ``M[g]_gamma = M_{gamma + g}``."""

    def __init__(self, module, g):
        super().__init__(module.grading, module.field)
        self.module = module
        self.g = tuple(int(x) for x in g)

    def _s(self, gamma):
        return tuple(a + b for a, b in zip(gamma, self.g))

    def dim(self, gamma):
        return self.module.dim(self._s(gamma))

    def basis_labels(self, gamma):
        return self.module.basis_labels(self._s(gamma))

    def mult_monomial(self, gamma, exps):
        return self.module.mult_monomial(self._s(gamma), exps)

    def ann_witness(self):
        return self.module.ann_witness()


class Truncation(GradedModule):
    """``M_S``: the pieces of M with degree in the C-stable set S."""

    def __init__(self, module, region):
        super().__init__(module.grading, module.field)
        if not is_stable(region, module.grading):
            raise NotStable("truncation set is not C-stable")
        self.module = module
        self.region = region

    def dim(self, gamma):
        return self.module.dim(gamma) if tuple(gamma) in self.region else 0

    def basis_labels(self, gamma):
        return self.module.basis_labels(gamma) if tuple(gamma) in self.region else []

    def mult_monomial(self, gamma, exps):
        tgt = self._target(gamma, exps)
        if tuple(gamma) not in self.region:
            return self.field.zeros(self.dim(tgt), 0)
        # the target lies in S as S + C = S
        return self.module.mult_monomial(gamma, exps)

    def ann_witness(self):
        return self.module.ann_witness()


class DirectSum(GradedModule):
    def __init__(self, *modules, grading=None, field=None):
        if not modules and grading is None:
            raise ValueError("empty direct sum needs a grading")
        super().__init__(grading or modules[0].grading, field or modules[0].field)
        self.modules = tuple(modules)

    def dim(self, gamma):
        return sum(m.dim(gamma) for m in self.modules)

    def basis_labels(self, gamma):
        return [f"{lab}@{j}" for j, m in enumerate(self.modules) for lab in m.basis_labels(gamma)]

    def mult_monomial(self, gamma, exps):
        tgt = self._target(gamma, exps)
        blocks = [m.mult_monomial(gamma, exps) for m in self.modules]
        out = self.field.zeros(self.dim(tgt), self.dim(gamma))
        r = c = 0
        for b in blocks:
            out[r : r + b.shape[0], c : c + b.shape[1]] = b
            r += b.shape[0]
            c += b.shape[1]
        return out

    def monomial_summands(self):
        out = []
        for m in self.modules:
            s = m.monomial_summands()
            if s is None:
                return None
            out.extend(s)
        return out

    def ann_witness(self):
        w = None
        for m in self.modules:
            a = m.ann_witness()
            w = a if w is None else w.intersection(a)
        return w if w is not None else MonomialIdeal([(0,) * self.grading.n], self.grading.n)


# -- constructors -------------------------------------------------------------

def _restrict_region(region, g):
    """The set ``region - g`` (exact infinite form required off the box)."""
    from .regions import form_translate

    if region is None:
        return None
    neg = tuple(-x for x in g)
    box = region.box.translate(neg)
    if region.form is not None:
        return LatticeRegion.from_form(box, form_translate(region.form, neg))
    return LatticeRegion(box, region.mask)


def free_module(grading, field, shifts):
    """``(+)_j R[-shift_j]``."""
    zero = MonomialIdeal([], grading.n)
    mods = [MonomialQuotient(grading, field, zero, s) for s in shifts]
    if len(mods) == 1:
        return mods[0]
    return DirectSum(*mods, grading=grading, field=field)


def quotient(grading, field, polys, ann=None):
    """``R/(polys)``; a monomial quotient when every generator is a monomial."""
    polys = [p for p in polys if any(c != 0 for c in p.values())]
    if all(is_monomial_poly(p) for p in polys):
        return MonomialQuotient(grading, field, as_monomial_ideal(polys, grading.n))
    degs = [poly_degree(grading, p) for p in polys]
    entries = {(0, c): p for c, p in enumerate(polys)}
    return Presentation(grading, field, [(0,) * grading.k], degs, entries, ann=ann)


def shift(module, g):
    """``M[g]``; stays a monomial quotient when possible."""
    g = tuple(int(x) for x in g)
    if isinstance(module, MonomialQuotient):
        tw = tuple(a - b for a, b in zip(module.twist, g))
        return MonomialQuotient(module.grading, module.field, module.ideal, tw, _restrict_region(module.region, g))
    if isinstance(module, DirectSum):
        return DirectSum(*(shift(m, g) for m in module.modules), grading=module.grading, field=module.field)
    if isinstance(module, ZeroModule):
        return module
    return Shifted(module, g)


def truncate(module, region):
    """``M_S`` for a C-stable region S."""
    if not is_stable(region, module.grading):
        raise NotStable("truncation set is not C-stable")
    if isinstance(module, MonomialQuotient):
        reg = region if module.region is None else _intersect_regions(module.region, region)
        return MonomialQuotient(module.grading, module.field, module.ideal, module.twist, reg)
    if isinstance(module, DirectSum):
        return DirectSum(*(truncate(m, region) for m in module.modules), grading=module.grading, field=module.field)
    if isinstance(module, ZeroModule):
        return module
    return Truncation(module, region)


def _intersect_regions(a, b):
    if a.box == b.box:
        return a.intersect(b)
    if a.form is not None and b.form is not None:
        from .regions import form_intersect

        return LatticeRegion.from_form(b.box, form_intersect(a.form, b.form))
    raise OutOfBox("cannot intersect regions on different boxes without infinite forms")


class Piece:
    __slots__ = ("degree", "dim", "labels")

    def __init__(self, degree, dim, labels):
        self.degree, self.dim, self.labels = degree, dim, labels

    def __repr__(self):
        return f"Piece({self.degree}, dim={self.dim})"


def graded_piece(module, gamma):
    gamma = tuple(int(x) for x in gamma)
    return Piece(gamma, module.dim(gamma), module.basis_labels(gamma))


def check_commutativity(module, gamma, i, j):
    """``x_j x_i = x_i x_j`` on M_gamma."""
    F = module.field
    g = module.grading
    gi = tuple(a + b for a, b in zip(gamma, g.degrees[i]))
    gj = tuple(a + b for a, b in zip(gamma, g.degrees[j]))
    A = F.matmul(module.mult(gi, j), module.mult(gamma, i))
    B = F.matmul(module.mult(gj, i), module.mult(gamma, j))
    return np.array_equal(F.normalize(A), F.normalize(B)) if F.is_prime else bool(np.all(A == B))


__all__ = [
    "Field", "Grading", "MonomialIdeal", "GradedModule", "ZeroModule", "MonomialQuotient",
    "Presentation", "Shifted", "Truncation", "DirectSum", "free_module", "quotient", "shift",
    "truncate", "graded_piece", "radical_contains", "ideal_radical_membership", "NonMonomialInput",
    "InfiniteDimensional", "lcm", "divides", "check_commutativity",
]
