import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mgreg.grading import Grading
from mgreg.linalg import Field
from mgreg.regions import Box, LatticeRegion, NotStable, orthant
from mgreg.ring import (
    MonomialIdeal,
    NonMonomialInput,
    Presentation,
    check_commutativity,
    free_module,
    graded_piece,
    ideal_radical_membership,
    quotient,
    shift,
    truncate,
)

BOX = Box((-2, -2), (4, 4))


def test_example_pieces(ci):
    assert ci.dim((1, 1)) == 4
    assert ci.dim((2, 0)) == 2
    assert ci.dim((-1, 0)) == 0
    assert graded_piece(ci, (2, 0)).dim == 2


def test_shifted_ring(ring):
    twisted = shift(ring, (-1, -1))  # R[-(1,1)]
    assert twisted.dim((1, 1)) == 1
    assert twisted.dim((0, 0)) == 0
    for p in BOX.points():
        assert twisted.dim(p) == ring.dim((p[0] - 1, p[1] - 1))


def test_mult_examples(ring, ci, bigraded):
    m = ring.mult((0, 0), 0)
    assert m.shape == (2, 1) and np.count_nonzero(m) == 1
    # R/(X0X1): multiplication by X0 on degree (1, 0) has rank 1
    m = ci.mult((1, 0), 0)
    assert m.shape == (2, 2)
    assert ci.field.rank(m) == 1

    z = Grading.standard([3])
    M = quotient(z, Field(), [{(1, 0, 0): 1}])
    for d in range(4):
        assert not np.any(M.field.normalize(M.mult((d,), 0)))


def test_truncation_examples(ring):
    full = LatticeRegion.full(BOX.pad(4))
    assert all(truncate(ring, full).dim(p) == ring.dim(p) for p in BOX.points())
    empty = LatticeRegion.empty(BOX.pad(4))
    assert all(truncate(ring, empty).dim(p) == 0 for p in BOX.points())
    S = LatticeRegion.from_form(BOX.pad(4), [orthant((1, 1))])
    N = truncate(ring, S)
    assert N.dim((1, 1)) == 4 and N.dim((1, 0)) == 0
    with pytest.raises(NotStable):
        truncate(ring, LatticeRegion.from_points(BOX, [(0, 0)]))


def test_radical_membership(m_xy):
    assert ideal_radical_membership(m_xy, MonomialIdeal([(1, 0, 0, 0), (0, 1, 0, 0)]))
    assert not ideal_radical_membership(MonomialIdeal([(1, 0, 0, 0)]), MonomialIdeal([(0, 0, 1, 0)]))
    I = MonomialIdeal([(1, 1, 0, 0), (0, 0, 1, 1)])
    B1 = MonomialIdeal.coordinate([0, 1], 4)
    assert ideal_radical_membership(m_xy, B1 + I)
    with pytest.raises(NonMonomialInput):
        ideal_radical_membership([{(1, 0, 0, 0): 1, (0, 1, 0, 0): 1}], I)


def test_monomial_ideal_normalizes():
    I = MonomialIdeal([(2, 0), (1, 0), (1, 1)])
    assert I.gens == ((1, 0),)
    assert MonomialIdeal([(1, 1, 0, 0), (0, 0, 1, 1)]).minimal_primes() == [
        frozenset({0, 2}),
        frozenset({0, 3}),
        frozenset({1, 2}),
        frozenset({1, 3}),
    ]


def test_hypersurface_dims(f2, ring):
    # F is a nonzerodivisor: dim (R/F)_g = dim R_g - dim R_{g-(1,1)}
    for a, b in BOX.points():
        assert f2.dim((a, b)) == ring.dim((a, b)) - ring.dim((a - 1, b - 1))


def test_presentation_with_two_rows(bigraded, field):
    # coker of R[-(1,1)] -> R + R[-(0,1)],  1 -> (X0Y0, X0)
    M = Presentation(
        bigraded, field, [(0, 0), (0, 1)], [(1, 1)], {(0, 0): {(1, 0, 1, 0): 1}, (1, 0): {(1, 0, 0, 0): 1}}
    )
    F0 = free_module(bigraded, field, [(0, 0), (0, 1)])
    assert F0.dim((1, 1)) == 6
    assert M.dim((1, 1)) == 5
    assert M.dim((0, 0)) == 1
    assert M.dim((2, 1)) == F0.dim((2, 1)) - 2


@pytest.mark.parametrize("name", ["ring", "ci", "f1", "f2"])
def test_commutativity(name, request):
    M = request.getfixturevalue(name)
    n = M.grading.n
    for p in Box((-1, -1), (2, 2)).points():
        for i, j in itertools.combinations(range(n), 2):
            assert check_commutativity(M, p, i, j)


@pytest.mark.parametrize("name", ["ci", "f1", "f2"])
def test_prime_field_and_rationals_agree(name, request, bigraded):
    M = request.getfixturevalue(name)
    Q = Field.rationals()
    if isinstance(M, Presentation):
        MQ = Presentation(bigraded, Q, [(0, 0)], [(1, 1)], {(0, 0): {(1, 0, 1, 0): 1, (0, 1, 0, 1): 1}})
    else:
        MQ = type(M)(bigraded, Q, M.ideal)
    for p in BOX.points():
        assert M.dim(p) == MQ.dim(p)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(*[st.integers(0, 2)] * 4).filter(any), min_size=1, max_size=3))
def test_monomial_quotient_matches_presentation(gens):
    g = Grading.standard([2, 2])
    F = Field()
    mono = quotient(g, F, [{e: 1} for e in gens])
    pres = Presentation(g, F, [(0, 0)], [g.degree(e) for e in gens], {(0, c): {e: 1} for c, e in enumerate(gens)})
    for p in Box((0, 0), (3, 3)).points():
        assert mono.dim(p) == pres.dim(p)
        # brute force: monomials of degree p outside the ideal
        I = MonomialIdeal(gens)
        assert mono.dim(p) == sum(1 for e in g.monomials(p) if not I.contains(e))


@settings(max_examples=20, deadline=None)
@given(st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
def test_shift_law(v):
    g = Grading.standard([2, 2])
    F = Field()
    M = Presentation(g, F, [(0, 0)], [(1, 1)], {(0, 0): {(1, 0, 1, 0): 1, (0, 1, 0, 1): 1}})
    S = shift(M, v)
    for p in Box((-1, -1), (2, 2)).points():
        assert S.dim(p) == M.dim((p[0] + v[0], p[1] + v[1]))
