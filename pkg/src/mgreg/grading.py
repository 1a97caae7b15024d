"""Gradings of polynomial rings by Z^k, shift sets and monomial enumeration."""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
import math

import numpy as np


class NoPositiveFunctional(ValueError):
    """The variable degrees admit no functional positive on all of them."""


def _simplest_in(lo, hi):
    """Deterministic rational in ``[lo, hi]`` (either end may be None)."""
    if (lo is None or lo <= 1) and (hi is None or hi >= 1):
        return Fraction(1)
    if lo is not None and hi is not None:
        c = math.ceil(lo)
        if c <= hi:
            return Fraction(c)
        return (lo + hi) / 2
    if lo is not None:
        return Fraction(math.ceil(lo))
    return Fraction(math.floor(hi))


def find_positivity_functional(degree_matrix):
    """Rational row vector phi with phi . gamma_i > 0 for every column gamma_i.

    Fourier-Motzkin elimination on the system ``gamma_i . phi >= 1`` followed
    by back-substitution choosing the simplest admissible value per
    coordinate.
    """
    D = np.asarray(degree_matrix, dtype=object)
    k, n = D.shape
    rows = [([Fraction(int(x)) for x in D[:, i]], Fraction(1)) for i in range(n)]
    stages = []
    system = rows
    for var in range(k - 1, -1, -1):
        stages.append(system)
        pos = [r for r in system if r[0][var] > 0]
        neg = [r for r in system if r[0][var] < 0]
        nxt = [r for r in system if r[0][var] == 0]
        for a, b in pos:
            for c, d in neg:
                lam, mu = -c[var], a[var]
                nxt.append(([lam * x + mu * y for x, y in zip(a, c)], lam * b + mu * d))
        # drop duplicates to keep the system small
        seen, system = set(), []
        for a, b in nxt:
            key = (tuple(a), b)
            if key not in seen:
                seen.add(key)
                system.append((a, b))
    for a, b in system:
        if b > 0:
            raise NoPositiveFunctional("grading is not positive")
    phi = [Fraction(0)] * k
    for var, sys_ in zip(range(k), reversed(stages)):
        lo = hi = None
        for a, b in sys_:
            rest = b - sum(a[j] * phi[j] for j in range(var))
            if a[var] > 0:
                v = rest / a[var]
                lo = v if lo is None else max(lo, v)
            elif a[var] < 0:
                v = rest / a[var]
                hi = v if hi is None else min(hi, v)
        phi[var] = _simplest_in(lo, hi)
    return tuple(phi)


class Grading:
    """Degree data of R = k[X_1..X_n] graded by Z^k.

    ``degree_matrix`` is k x n with column i the degree of X_i.
    """

    def __init__(self, degree_matrix, names=None, phi=None):
        D = np.array(degree_matrix, dtype=np.int64)
        if D.ndim != 2:
            raise ValueError("degree matrix must be two-dimensional")
        self.D = D
        self.D.setflags(write=False)
        self.k, self.n = D.shape
        self.names = tuple(names) if names else tuple(f"x{i}" for i in range(self.n))
        if len(self.names) != self.n:
            raise ValueError("one name per variable")
        self.phi = tuple(Fraction(x) for x in phi) if phi else find_positivity_functional(D)
        self.weights = tuple(sum(p * int(g) for p, g in zip(self.phi, D[:, i])) for i in range(self.n))
        if any(w <= 0 for w in self.weights):
            raise NoPositiveFunctional("supplied functional is not positive on every degree")
        self.degrees = tuple(tuple(int(x) for x in D[:, i]) for i in range(self.n))
        self.distinct_degrees = tuple(sorted(set(self.degrees)))

    def __repr__(self):
        return f"Grading({self.D.tolist()})"

    def __eq__(self, other):
        return isinstance(other, Grading) and np.array_equal(self.D, other.D)

    def __hash__(self):
        return hash(self.D.tobytes())

    @classmethod
    def standard(cls, block_sizes, names=None):
        """Standard multigrading: block ``b`` of size ``s_b`` has degree e_b."""
        cols = []
        for b, size in enumerate(block_sizes):
            e = [0] * len(block_sizes)
            e[b] = 1
            cols.extend([e] * size)
        return cls(np.array(cols).T, names=names)

    @property
    def is_standard(self):
        """Every variable degree is a unit vector (monoid C is the orthant)."""
        cols = self.degrees
        units = {tuple(int(i == b) for i in range(self.k)) for b in range(self.k)}
        return all(c in units for c in cols) and len(set(cols)) == self.k

    @property
    def blocks(self):
        """Variable indices per coordinate, for standard gradings."""
        out = [[] for _ in range(self.k)]
        for i, d in enumerate(self.degrees):
            out[d.index(1)].append(i)
        return [tuple(b) for b in out]

    def degree(self, exps):
        return tuple(int(x) for x in self.D @ np.asarray(exps, dtype=np.int64))

    def weight(self, gamma):
        return sum(p * int(g) for p, g in zip(self.phi, gamma))

    def degree_of_distinct(self, p):
        return self.distinct_degrees[p]

    def variables_of_degree(self, mu):
        mu = tuple(mu)
        return tuple(i for i, d in enumerate(self.degrees) if d == mu)

    def monomials(self, gamma):
        """Exponent vectors of degree ``gamma`` as an (N, n) array, lex-descending."""
        return _monomials(self, tuple(int(x) for x in gamma))

    def count_monomials(self, gamma):
        return len(self.monomials(gamma))

    def in_monoid(self, gamma):
        return self.count_monomials(gamma) > 0


@lru_cache(maxsize=None)
def _tails(grading, start, target):
    """All exponent tails (x_start..x_{n-1}) of degree ``target``."""
    n = grading.n
    if start == n:
        return ((),) if all(t == 0 for t in target) else ()
    w = grading.weight(target)
    if w < 0:
        return ()
    g = grading.degrees[start]
    bound = int(w / grading.weights[start])
    out = []
    for e in range(bound, -1, -1):
        rest = tuple(t - e * x for t, x in zip(target, g))
        for tail in _tails(grading, start + 1, rest):
            out.append((e,) + tail)
    return tuple(out)


@lru_cache(maxsize=4096)
def _monomials(grading, gamma):
    tails = _tails(grading, 0, gamma)
    arr = np.array(tails, dtype=np.int64).reshape(len(tails), grading.n)
    arr.setflags(write=False)
    return arr


def monomials_of_degree(grading, gamma):
    """Basis of R_gamma as a list of exponent tuples (lex-descending)."""
    return [tuple(int(x) for x in row) for row in grading.monomials(gamma)]


# -- shift sets ---------------------------------------------------------

def sums_of_subsets(degrees, l, repeat=False):
    """Sums of ``l`` entries of ``degrees`` (distinct indices unless ``repeat``)."""
    degrees = [tuple(d) for d in degrees]
    k = len(degrees[0]) if degrees else 0
    if l == 0:
        return frozenset({(0,) * k}) if degrees else frozenset({()})
    pick = combinations_with_replacement if repeat else combinations
    return frozenset(
        tuple(sum(c) for c in zip(*(degrees[i] for i in idx)))
        for idx in pick(range(len(degrees)), l)
    )


def shift_set(grading, l, kind="E", restrict_to=None):
    """The shift set E_l or F_l of a grading, as a frozenset of points.

    ``restrict_to`` (a collection of distinct degrees) keeps only variables of
    those degrees, giving the restricted sets used with persistence along a
    subset of directions.
    """
    degs = list(grading.degrees)
    if restrict_to is not None:
        allowed = {tuple(m) for m in restrict_to}
        degs = [d for d in degs if d in allowed]
    zero = (0,) * grading.k
    if l == 0:
        return frozenset({zero})
    if l == -1:
        base = shift_set(grading, 1, kind, restrict_to)
        return frozenset(tuple(-x for x in p) for p in base)
    if l < -1:
        return frozenset()
    if kind == "E":
        if l > len(degs):
            return frozenset()
        return sums_of_subsets(degs, l)
    if kind == "F":
        if not degs:
            return frozenset()
        return sums_of_subsets(sorted(set(degs)), l, repeat=True)
    raise ValueError(f"unknown shift kind {kind!r}")


def shift_set_dp(grading, l):
    """E_l by dynamic programming over the columns (independent of ``shift_set``)."""
    zero = (0,) * grading.k
    if l < 0 or l > grading.n:
        return shift_set(grading, l, "E")
    layers = [{zero}] + [set() for _ in range(l)]
    for g in grading.degrees:
        for size in range(l, 0, -1):
            for p in layers[size - 1]:
                layers[size].add(tuple(a + b for a, b in zip(p, g)))
    return frozenset(layers[l])
