"""Hilbert functions, the corrected function F_M, and multigraded Hilbert polynomials.

``F_M(mu) = [M](mu) - sum_i (-1)^i [H^i_B(M)](mu)`` is a numerical polynomial
for standard multigradings with ``B`` the intersection of the block ideals.
Polynomials are stored in the binomial basis ``prod_i binom(a_i + c_i, c_i)``,
which keeps every value an integer and every coefficient an exact rational.
"""

from fractions import Fraction
from itertools import product
from math import factorial

from .linalg import Field
from .local_cohomology import EXACT, STABILIZED


class UncertifiedEntry(ValueError):
    pass


class NotPolynomial(ValueError):
    def __init__(self, point, expected, got):
        super().__init__(f"sample at {point} is {got}, fitted polynomial gives {expected}")
        self.point = point


def gbinom(x, c):
    """``binom(x, c)`` as a polynomial in ``x`` (so negative ``x`` is allowed)."""
    if c < 0:
        return 0
    num = 1
    for t in range(c):
        num *= x - t
    return Fraction(num, factorial(c))


def binom_basis(a, c):
    """``binom(a + c, c)``, the basis function used throughout."""
    return gbinom(a + c, c)


def negative_binomial_identity(r, a):
    """``binom(r + (-a - r - 1), r) == (-1)^r binom(r + a, r)``."""
    return gbinom(r + (-a - r - 1), r) == (-1) ** r * gbinom(r + a, r)


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def _basis_expansion(c):
    """Coefficients (low degree first) of ``binom(a + c, c)`` as a polynomial in a."""
    p = [Fraction(1)]
    for t in range(1, c + 1):
        p = _poly_mul(p, [Fraction(t), Fraction(1)])
    return [x / factorial(c) for x in p]


class NumericalPolynomial:
    def __init__(self, bounds, coeffs):
        self.bounds = tuple(bounds)
        self.coeffs = {tuple(c): Fraction(v) for c, v in coeffs.items() if v != 0}

    @property
    def k(self):
        return len(self.bounds)

    def __call__(self, mu):
        total = Fraction(0)
        for c, v in self.coeffs.items():
            term = v
            for a, ci in zip(mu, c):
                term *= binom_basis(a, ci)
            total += term
        assert total.denominator == 1
        return int(total)

    def __eq__(self, other):
        return isinstance(other, NumericalPolynomial) and self.coeffs == other.coeffs

    def __add__(self, other):
        coeffs = dict(self.coeffs)
        for c, v in other.coeffs.items():
            coeffs[c] = coeffs.get(c, 0) + v
        bounds = tuple(max(a, b) for a, b in zip(self.bounds, other.bounds))
        return NumericalPolynomial(bounds, coeffs)

    def __neg__(self):
        return NumericalPolynomial(self.bounds, {c: -v for c, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def degrees(self):
        """Actual degree in each coordinate."""
        out = [0] * self.k
        for c in self.coeffs:
            out = [max(a, b) for a, b in zip(out, c)]
        return tuple(out)

    def expanded(self):
        """``{exponent tuple: coefficient}`` in the monomial basis."""
        out = {}
        for c, v in self.coeffs.items():
            parts = [_basis_expansion(ci) for ci in c]
            for exps in product(*(range(len(p)) for p in parts)):
                term = v
                for p, e in zip(parts, exps):
                    term *= p[e]
                if term:
                    out[exps] = out.get(exps, 0) + term
        return {e: v for e, v in sorted(out.items(), reverse=True) if v}

    def format(self, names=None, basis="binomial"):
        names = names or [f"a{i + 1}" for i in range(self.k)]
        if basis == "binomial":
            items = sorted(self.coeffs.items(), reverse=True)
            terms = []
            for c, v in items:
                fac = "*".join(f"C({x}+{ci},{ci})" for x, ci in zip(names, c) if ci)
                terms.append(_term(v, fac))
        else:
            terms = []
            for e, v in self.expanded().items():
                fac = "*".join(x if d == 1 else f"{x}^{d}" for x, d in zip(names, e) if d)
                terms.append(_term(v, fac))
        if not terms:
            return "0"
        s = " + ".join(terms)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"NumericalPolynomial({self.format()})"


def _term(v, fac):
    if not fac:
        return str(v)
    if v == 1:
        return fac
    if v == -1:
        return "-" + fac
    return f"{v}*{fac}"


def fit_polynomial(samples, bounds):
    """Interpolate ``samples`` (``{mu: value}``) by a polynomial of multidegree <= bounds.

    The interpolation grid is the product of the ``bounds[i] + 1`` smallest
    sample coordinates; every other sample is a held-out check.
    """
    samples = {tuple(int(x) for x in mu): int(v) for mu, v in samples.items()}
    k = len(bounds)
    coords = [sorted({mu[i] for mu in samples}) for i in range(k)]
    for i in range(k):
        if len(coords[i]) < bounds[i] + 1:
            raise ValueError(f"coordinate {i} needs {bounds[i] + 1} distinct values")
    grid = list(product(*(coords[i][: bounds[i] + 1] for i in range(k))))
    missing = [mu for mu in grid if mu not in samples]
    if missing:
        raise ValueError(f"interpolation grid point {missing[0]} not sampled")
    basis = list(product(*(range(b + 1) for b in bounds)))
    Q = Field.rationals()
    A = Q.zeros(len(grid), len(basis) + 1)
    for r, mu in enumerate(grid):
        for col, c in enumerate(basis):
            val = Fraction(1)
            for a, ci in zip(mu, c):
                val *= binom_basis(a, ci)
            A[r, col] = val
        A[r, -1] = Fraction(samples[mu])
    Rm, piv = Q.rref(A)
    if len(basis) in piv:  # pragma: no cover - tensor grids are unisolvent
        raise NotPolynomial(grid[0], None, samples[grid[0]])
    coeffs = {basis[c]: Rm[r, -1] for r, c in enumerate(piv)}
    P = NumericalPolynomial(bounds, coeffs)
    for mu in sorted(samples):
        if P(mu) != samples[mu]:
            raise NotPolynomial(mu, P(mu), samples[mu])
    return P


# -- corrected function --------------------------------------------------------------------------


def corrected_function(module, table, mu):
    """``F_M(mu)`` from a cohomology table; raises on uncertified entries."""
    mu = tuple(mu)
    total = module.dim(mu)
    for i in range(table.s + 1):
        e = table.entry(i, mu)
        if e.status not in (STABILIZED, EXACT):
            raise UncertifiedEntry((i, mu))
        total -= (-1) ** i * e.dim
    return total


def ring_closed_form(grading, mu):
    """``F_R(mu) = prod_i binom(r_i + a_i, r_i)`` for a standard multigrading."""
    if not grading.is_standard:
        raise ValueError("closed form needs a standard multigrading")
    val = Fraction(1)
    for a, blk in zip(mu, grading.blocks):
        r = len(blk) - 1
        val *= binom_basis(a, r)
    return int(val)


def degree_bounds(grading):
    """Multidegree bound ``(r_1, ..., r_k)``; block sizes minus one."""
    if not grading.is_standard:
        raise ValueError("degree bounds are only known for standard multigradings")
    return tuple(len(b) - 1 for b in grading.blocks)


def _certified(table, mu):
    return all(table.entry(i, mu).status in (STABILIZED, EXACT) for i in range(table.s + 1))


def hilbert_polynomial(module, table, bounds=None):
    """Fit ``P_M`` to ``F_M`` over every certified point of the table box."""
    bounds = bounds or degree_bounds(module.grading)
    samples = {mu: corrected_function(module, table, mu) for mu in table.box.points() if _certified(table, mu)}
    return fit_polynomial(samples, bounds)


def grothendieck_serre_check(module, table, reg=None, bounds=None):
    """Report on ``[M] = P_M + sum (-1)^i [H^i]`` over the table box.

    With ``reg`` (a RegularityRegion or LatticeRegion) also checks
    ``[M](mu) = P_M(mu)`` on the regular points.
    """
    report = {"status": "PASS", "polynomial": None, "checked": 0, "uncertified": 0, "witness": None}
    try:
        P = hilbert_polynomial(module, table, bounds)
    except NotPolynomial as exc:
        report.update(status="FAIL", witness=exc.point)
        return report
    report["polynomial"] = P
    for mu in table.box.points():
        if not _certified(table, mu):
            report["uncertified"] += 1
            continue
        report["checked"] += 1
        if corrected_function(module, table, mu) != P(mu):
            report.update(status="FAIL", witness=mu)
            return report
    if reg is not None:
        region = getattr(reg, "region", reg)
        for mu in region.points():
            if mu in table.box and module.dim(mu) != P(mu):
                report.update(status="FAIL", witness=mu)
                return report
    return report
