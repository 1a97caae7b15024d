"""Lattice boxes and regions of Z^k.

A :class:`LatticeRegion` stores exact membership on a box as a boolean array
and, optionally, an exact description valid everywhere: a finite union of
products of intervals (each end may be infinite).  Orthant translates
``tau + Z^k_{>=0}`` and strips like ``Z_{>=2} x Z`` are special cases.
"""

from itertools import product

import numpy as np


class BoxMismatch(ValueError):
    pass


class InsufficientPadding(ValueError):
    pass


class NotStable(ValueError):
    pass


class OutOfBox(KeyError):
    pass


class Box:
    """The lattice points ``lo <= p <= hi`` of Z^k."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo = tuple(int(x) for x in lo)
        hi = tuple(int(x) for x in hi)
        if len(lo) != len(hi):
            raise ValueError("corner dimensions differ")
        if any(a > b for a, b in zip(lo, hi)):
            raise ValueError(f"empty box {lo}..{hi}")
        self.lo, self.hi = lo, hi

    @property
    def k(self):
        return len(self.lo)

    @property
    def shape(self):
        return tuple(b - a + 1 for a, b in zip(self.lo, self.hi))

    @property
    def size(self):
        return int(np.prod(self.shape))

    def __eq__(self, other):
        return isinstance(other, Box) and (self.lo, self.hi) == (other.lo, other.hi)

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"Box({list(self.lo)}, {list(self.hi)})"

    def __contains__(self, p):
        return all(a <= x <= b for a, x, b in zip(self.lo, p, self.hi))

    def __iter__(self):
        return iter(self.points())

    def points(self):
        """All points in lexicographic order."""
        return list(product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi))))

    def grid(self):
        """Array of shape ``shape + (k,)`` with the coordinates of every point."""
        axes = [np.arange(a, b + 1) for a, b in zip(self.lo, self.hi)]
        return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)

    def index(self, p):
        return tuple(x - a for x, a in zip(p, self.lo))

    def pad(self, amount):
        if np.isscalar(amount):
            amount = (amount,) * self.k
        return Box([a - m for a, m in zip(self.lo, amount)], [b + m for b, m in zip(self.hi, amount)])

    def extend(self, lo_by, hi_by):
        return Box([a - m for a, m in zip(self.lo, lo_by)], [b + m for b, m in zip(self.hi, hi_by)])

    def contains_box(self, other):
        return all(a <= c and d <= b for a, b, c, d in zip(self.lo, self.hi, other.lo, other.hi))

    def translate(self, v):
        return Box([a + x for a, x in zip(self.lo, v)], [b + x for b, x in zip(self.hi, v)])


# -- interval products ----------------------------------------------------
# A GBox is a tuple of (lo, hi) pairs, ``None`` meaning unbounded.

def gbox_contains(g, p):
    return all((lo is None or x >= lo) and (hi is None or x <= hi) for (lo, hi), x in zip(g, p))


def gbox_is_empty(g):
    return any(lo is not None and hi is not None and lo > hi for lo, hi in g)


def gbox_intersect(a, b):
    out = []
    for (l1, h1), (l2, h2) in zip(a, b):
        lo = l2 if l1 is None else (l1 if l2 is None else max(l1, l2))
        hi = h2 if h1 is None else (h1 if h2 is None else min(h1, h2))
        if lo is not None and hi is not None and lo > hi:
            return None
        out.append((lo, hi))
    return tuple(out)


def gbox_subset(a, b):
    """``a`` is contained in ``b``."""
    for (l1, h1), (l2, h2) in zip(a, b):
        if l2 is not None and (l1 is None or l1 < l2):
            return False
        if h2 is not None and (h1 is None or h1 > h2):
            return False
    return True


def gbox_translate(g, v):
    return tuple((None if lo is None else lo + x, None if hi is None else hi + x) for (lo, hi), x in zip(g, v))


def orthant(apex, directions=None):
    """``apex + Z^k_{>=0}``; ``directions`` per coordinate: 'up', 'down' or 'free'."""
    directions = directions or ["up"] * len(apex)
    out = []
    for a, d in zip(apex, directions):
        out.append({"up": (a, None), "down": (None, a), "free": (None, None)}[d])
    return tuple(out)


def simplify(gboxes):
    """Drop empty and subsumed pieces; deterministic order."""
    gs = sorted({g for g in gboxes if g is not None and not gbox_is_empty(g)}, key=_gkey)
    out = []
    for g in gs:
        if any(gbox_subset(g, h) for h in gs if h != g and not (gbox_subset(h, g) and _gkey(h) > _gkey(g))):
            continue
        out.append(g)
    return tuple(out)


def _gkey(g):
    big = float("inf")
    return tuple((-big if lo is None else lo, big if hi is None else hi) for lo, hi in g)


def form_union(*forms):
    return simplify([g for f in forms for g in f])


def form_intersect(a, b):
    return simplify([gbox_intersect(x, y) for x in a for y in b])


def _gbox_complement(g):
    """Complement of one interval product as a disjoint union of pieces."""
    k = len(g)
    pieces = []
    prefix = []
    for d, (lo, hi) in enumerate(g):
        full = [(None, None)] * (k - d - 1)
        if lo is not None:
            pieces.append(tuple(prefix + [(None, lo - 1)] + full))
        if hi is not None:
            pieces.append(tuple(prefix + [(hi + 1, None)] + full))
        prefix.append((lo, hi))
    return tuple(pieces)


def form_complement(form, k):
    result = (tuple((None, None) for _ in range(k)),)
    for g in form:
        result = form_intersect(result, _gbox_complement(g))
        if not result:
            break
    return result


def form_translate(form, v):
    return simplify(gbox_translate(g, v) for g in form)


def form_minkowski(form, shifts):
    return simplify(gbox_translate(g, v) for g in form for v in shifts)


def form_down(form):
    """``form - Z^k_{>=0}``."""
    return simplify(tuple((None, hi) for lo, hi in g) for g in form)


def form_up(form):
    """``form + Z^k_{>=0}``."""
    return simplify(tuple((lo, None) for lo, hi in g) for g in form)


def form_stable_part(form, k):
    """Largest subset S of ``form`` with S + Z^k_{>=0} = S."""
    return form_complement(form_down(form_complement(form, k)), k)


def form_mask(form, box):
    grid = box.grid()
    mask = np.zeros(box.shape, dtype=bool)
    for g in form:
        m = np.ones(box.shape, dtype=bool)
        for d, (lo, hi) in enumerate(g):
            if lo is not None:
                m &= grid[..., d] >= lo
            if hi is not None:
                m &= grid[..., d] <= hi
        mask |= m
    return mask


def form_contains(form, points):
    """Vectorised membership for an ``(N, k)`` array of points."""
    points = np.asarray(points)
    out = np.zeros(points.shape[0], dtype=bool)
    for g in form:
        m = np.ones(points.shape[0], dtype=bool)
        for d, (lo, hi) in enumerate(g):
            if lo is not None:
                m &= points[:, d] >= lo
            if hi is not None:
                m &= points[:, d] <= hi
        out |= m
    return out


def format_form(form):
    def iv(lo, hi):
        if lo is None and hi is None:
            return "Z"
        if lo is None:
            return f"Z<={hi}"
        if hi is None:
            return f"Z>={lo}"
        return str(lo) if lo == hi else f"[{lo},{hi}]"

    if not form:
        return "{}"
    return " u ".join("x".join(iv(lo, hi) for lo, hi in g) for g in form)


class LatticeRegion:
    """A subset of Z^k known exactly on ``box`` (and everywhere if ``form`` is set)."""

    def __init__(self, box, mask, form=None):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != box.shape:
            raise ValueError("mask shape does not match box")
        self.box = box
        self.mask = mask
        self.mask.setflags(write=False)
        self.form = None if form is None else simplify(form)
        if self.form is not None and not np.array_equal(form_mask(self.form, box), mask):
            raise ValueError("infinite description disagrees with the bitset")

    # -- constructors ----------------------------------------------------
    @classmethod
    def empty(cls, box):
        return cls(box, np.zeros(box.shape, dtype=bool), form=())

    @classmethod
    def full(cls, box):
        return cls(box, np.ones(box.shape, dtype=bool), form=(tuple((None, None) for _ in range(box.k)),))

    @classmethod
    def from_form(cls, box, form):
        form = simplify(form)
        return cls(box, form_mask(form, box), form)

    @classmethod
    def from_points(cls, box, points):
        mask = np.zeros(box.shape, dtype=bool)
        for p in points:
            if p in box:
                mask[box.index(p)] = True
        return cls(box, mask)

    @classmethod
    def from_predicate(cls, box, pred):
        mask = np.zeros(box.shape, dtype=bool)
        for p in box.points():
            mask[box.index(p)] = bool(pred(p))
        return cls(box, mask)

    # -- queries ---------------------------------------------------------
    def __contains__(self, p):
        p = tuple(p)
        if p in self.box:
            return bool(self.mask[self.box.index(p)])
        if self.form is not None:
            return gbox_any(self.form, p)
        raise OutOfBox(p)

    def contains_many(self, points):
        points = np.asarray(points, dtype=np.int64).reshape(-1, self.box.k)
        if self.form is not None:
            return form_contains(self.form, points)
        lo = np.array(self.box.lo)
        hi = np.array(self.box.hi)
        inside = np.all((points >= lo) & (points <= hi), axis=1)
        if not inside.all():
            raise OutOfBox(tuple(points[~inside][0]))
        idx = tuple((points - lo).T)
        return self.mask[idx]

    def points(self):
        return [p for p in self.box.points() if self.mask[self.box.index(p)]]

    def __len__(self):
        return int(self.mask.sum())

    def __eq__(self, other):
        return isinstance(other, LatticeRegion) and self.box == other.box and np.array_equal(self.mask, other.mask)

    def __repr__(self):
        extra = f", form={format_form(self.form)}" if self.form is not None else ""
        return f"LatticeRegion({self.box!r}, {len(self)} points{extra})"

    def restrict(self, box):
        """The same set on another box (needs the infinite form off the old box)."""
        if self.form is not None:
            return LatticeRegion.from_form(box, self.form)
        if not self.box.contains_box(box):
            raise InsufficientPadding(f"{box} not inside {self.box} and no infinite form")
        sl = tuple(slice(a - c, b - c + 1) for a, b, c in zip(box.lo, box.hi, self.box.lo))
        return LatticeRegion(box, self.mask[sl])

    # -- set algebra -----------------------------------------------------
    def _check(self, other):
        if self.box != other.box:
            raise BoxMismatch(f"{self.box} vs {other.box}")

    def complement(self):
        form = None if self.form is None else form_complement(self.form, self.box.k)
        return LatticeRegion(self.box, ~self.mask, form)

    def union(self, *others):
        mask = self.mask.copy()
        forms = [self.form]
        for o in others:
            self._check(o)
            mask |= o.mask
            forms.append(o.form)
        form = None if any(f is None for f in forms) else form_union(*forms)
        return LatticeRegion(self.box, mask, form)

    def intersect(self, *others):
        mask = self.mask.copy()
        form = self.form
        for o in others:
            self._check(o)
            mask &= o.mask
            form = None if (form is None or o.form is None) else form_intersect(form, o.form)
        return LatticeRegion(self.box, mask, form)

    __or__ = union
    __and__ = intersect

    def __invert__(self):
        return self.complement()

    def difference(self, other):
        return self.intersect(other.complement())

    def issubset(self, other):
        self._check(other)
        return bool(np.all(~self.mask | other.mask))

    def translate(self, v):
        """The translate ``self + v`` on the same box."""
        return minkowski_sum(self, [tuple(v)])


def gbox_any(form, p):
    return any(gbox_contains(g, p) for g in form)


def minkowski_sum(region, shifts, box=None):
    """``region + shifts`` on ``box`` (default: the region's box).

    Without an infinite form the result is only exact on the part of the box
    whose translates by ``-shifts`` stay inside ``region.box``; requesting
    more raises :class:`InsufficientPadding`.
    """
    shifts = [tuple(int(x) for x in s) for s in shifts]
    box = box or region.box
    if region.form is not None:
        return LatticeRegion.from_form(box, form_minkowski(region.form, shifts))
    if not shifts:
        return LatticeRegion.empty(box)
    k = box.k
    need_lo = tuple(box.lo[d] - max(s[d] for s in shifts) for d in range(k))
    need_hi = tuple(box.hi[d] - min(s[d] for s in shifts) for d in range(k))
    if not region.box.contains_box(Box(need_lo, need_hi)):
        raise InsufficientPadding(f"{box} + shifts needs {need_lo}..{need_hi}, have {region.box}")
    mask = np.zeros(box.shape, dtype=bool)
    for s in shifts:
        src = region.restrict(box.translate([-x for x in s]))
        mask |= src.mask
    return LatticeRegion(box, mask)


def inner_box(box, shifts):
    """Largest box on which ``region + shifts`` is exact for a region on ``box``."""
    shifts = list(shifts)
    k = box.k
    lo = [box.lo[d] + max(s[d] for s in shifts) for d in range(k)]
    hi = [box.hi[d] + min(s[d] for s in shifts) for d in range(k)]
    if any(a > b for a, b in zip(lo, hi)):
        raise InsufficientPadding("shifts wider than the box")
    return Box(lo, hi)


# -- monoid stability -------------------------------------------------------

def stable_closure(points, grading, box):
    """``points + C`` on ``box``; exact infinite form for standard gradings."""
    points = [tuple(p) for p in points]
    if grading.is_standard:
        return LatticeRegion.from_form(box, [orthant(p) for p in points])
    mask = np.zeros(box.shape, dtype=bool)
    top = _max_weight(grading, box)
    seen = set()
    stack = list(points)
    while stack:
        p = stack.pop()
        if p in seen or grading.weight(p) > top:
            continue
        seen.add(p)
        if p in box:
            mask[box.index(p)] = True
        for g in grading.distinct_degrees:
            stack.append(tuple(a + b for a, b in zip(p, g)))
    return LatticeRegion(box, mask)


def _max_weight(grading, box):
    return max(grading.weight(p) for p in product(*zip(box.lo, box.hi)))


def is_stable(region, grading):
    """``region + gamma_i`` stays in ``region`` wherever both lie in the box."""
    box = region.box
    for g in grading.distinct_degrees:
        for p in region.points():
            q = tuple(a + b for a, b in zip(p, g))
            if q in box and not region.mask[box.index(q)]:
                return False
    return True


def minimal_generators(region, grading):
    """Minimal points of a C-stable region within its box (lex order).

    Points sitting on the lower boundary of the box are reported as
    generators; :func:`apexes` gives the exact description when the region
    carries an infinite form.
    """
    if not is_stable(region, grading):
        raise NotStable("region is not C-stable inside its box")
    box = region.box
    out = []
    for p in region.points():
        minimal = True
        for g in grading.distinct_degrees:
            q = tuple(a - b for a, b in zip(p, g))
            if q in box and region.mask[box.index(q)]:
                minimal = False
                break
        if minimal:
            out.append(p)
    return out


def apexes(region):
    """Exact generators of an orthant-stable infinite form.

    Each piece ``prod [lo_d, +inf)`` is reported as its apex with ``None`` for
    unbounded coordinates, e.g. ``Z_{>=2} x Z`` gives ``(2, None)``.
    """
    if region.form is None:
        raise ValueError("region has no infinite form")
    out = []
    for g in region.form:
        if any(hi is not None for lo, hi in g):
            raise NotStable("piece is bounded above")
        out.append(tuple(lo for lo, hi in g))
    return sorted(out, key=lambda a: tuple(float("-inf") if x is None else x for x in a))
