from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mgreg.grading import Grading
from mgreg.hilbert import (
    NotPolynomial,
    NumericalPolynomial,
    UncertifiedEntry,
    binom_basis,
    corrected_function,
    fit_polynomial,
    gbinom,
    grothendieck_serre_check,
    hilbert_polynomial,
    negative_binomial_identity,
    ring_closed_form,
)
from mgreg.linalg import Field
from mgreg.local_cohomology import cohomology_table
from mgreg.regions import Box
from mgreg.ring import MonomialIdeal, quotient

G = Grading.standard([2, 2])
K = Field()


@given(st.integers(0, 6), st.integers(-10, 10))
def test_negative_binomial_identity(r, a):
    assert negative_binomial_identity(r, a)
    if a >= 0:
        assert binom_basis(a, r) == comb(a + r, r)


def test_gbinom_polynomial_values():
    assert gbinom(-1, 2) == 1
    assert gbinom(5, 2) == 10
    assert gbinom(3, -1) == 0


def test_ring_closed_form():
    assert ring_closed_form(G, (2, 3)) == 12
    assert ring_closed_form(G, (-1, 5)) == 0
    assert ring_closed_form(G, (-3, -3)) == 4
    z = Grading.standard([3])
    assert ring_closed_form(z, (4,)) == comb(6, 2)
    with pytest.raises(ValueError):
        ring_closed_form(Grading([[1, 2]]), (3,))


def test_fit_and_format():
    samples = {(a, b): (a + 1) * (b + 1) for a in range(-2, 3) for b in range(-2, 3)}
    P = fit_polynomial(samples, (1, 1))
    assert P((7, -9)) == 8 * -8
    assert P.format(["a", "b"], "monomial") == "a*b + a + b + 1"
    assert P.format(["a", "b"]) == "C(a+1,1)*C(b+1,1)"
    bad = dict(samples)
    bad[(2, 2)] += 1
    with pytest.raises(NotPolynomial):
        fit_polynomial(bad, (1, 1))


def test_polynomial_arithmetic():
    P = NumericalPolynomial((1,), {(1,): 1})  # binom(a + 1, 1) = a + 1
    Q = NumericalPolynomial((1,), {(0,): 3})
    assert (P + Q)((2,)) == 6
    assert (P - Q)((2,)) == 0
    assert (-P)((2,)) == -3
    assert all(isinstance(c, Fraction) for c in P.coeffs.values())


def test_ring_function_matches_closed_form(ring, m_xy):
    box = Box((-4, -4), (4, 4))
    t = cohomology_table(m_xy, ring, box)
    for p in box.points():
        assert corrected_function(ring, t, p) == (p[0] + 1) * (p[1] + 1)
    P = hilbert_polynomial(ring, t)
    assert P((10, 10)) == 121


def test_grothendieck_serre_on_random_monomial_quotients(m_xy):
    box = Box((-3, -3), (3, 3))
    for gens in ([(2, 0, 0, 0)], [(1, 0, 1, 0), (0, 1, 0, 2)], [(1, 1, 0, 0), (0, 0, 2, 0), (1, 0, 1, 1)]):
        M = quotient(G, K, [{e: 1} for e in gens])
        t = cohomology_table(m_xy, M, box)
        rep = grothendieck_serre_check(M, t)
        assert rep["status"] == "PASS", (gens, rep)


def test_uncertified_entries_are_refused(ci, m_xy):
    t = cohomology_table(m_xy, ci, Box((-3, 0), (-3, 0)), t_max=2)
    assert t.uncertified()
    with pytest.raises(UncertifiedEntry):
        corrected_function(ci, t, (-3, 0))


def test_example_polynomial(ci, m_xy):
    box = Box((-3, -3), (3, 3))
    t = cohomology_table(m_xy, ci, box)
    rep = grothendieck_serre_check(ci, t)
    P = rep["polynomial"]
    assert P.format(["a", "b"]) == "4"
    assert P((1, 1)) == ci.dim((1, 1)) == 4
