import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mgreg.grading import Grading, shift_set
from mgreg.regions import (
    Box,
    BoxMismatch,
    InsufficientPadding,
    LatticeRegion,
    NotStable,
    apexes,
    form_complement,
    form_mask,
    form_stable_part,
    minimal_generators,
    minkowski_sum,
    orthant,
    stable_closure,
)

G2 = Grading.standard([2, 2])
BOX = Box((-3, -3), (3, 3))


def masks(box):
    return st.lists(st.booleans(), min_size=box.size, max_size=box.size).map(
        lambda bits: LatticeRegion(box, np.array(bits, dtype=bool).reshape(box.shape))
    )


def gboxes(k=2):
    bound = st.one_of(st.none(), st.integers(-4, 4))
    return st.tuples(*[st.tuples(bound, bound) for _ in range(k)])


def brute_sum(points, shifts, box):
    return {tuple(a + b for a, b in zip(p, s)) for p in points for s in shifts} & set(box.points())


def test_box_basics():
    b = Box((0, -1), (2, 1))
    assert b.size == 9 and b.shape == (3, 3)
    assert b.points()[0] == (0, -1) and b.points()[-1] == (2, 1)
    assert (1, 0) in b and (3, 0) not in b
    assert b.pad(1) == Box((-1, -2), (3, 2))
    with pytest.raises(ValueError):
        Box((1,), (0,))


def test_minkowski_examples():
    box = Box((-2, -2), (2, 2))
    pt = LatticeRegion.from_points(box.pad(1), [(0, 0)])
    assert set(minkowski_sum(pt, shift_set(G2, 1), box).points()) == {(1, 0), (0, 1)}

    low = LatticeRegion.from_form(box, [orthant((0, 0), ["down", "down"])])
    moved = minkowski_sum(low, [(1, 1)])
    assert moved.form == (orthant((1, 1), ["down", "down"]),)


def test_minkowski_of_orthant_support():
    # {a <= -2, b <= -2} + F_1, against a brute-force union on [-6,2]^2
    box = Box((-6, -6), (2, 2))
    supp = LatticeRegion.from_form(box, [orthant((-2, -2), ["down", "down"])])
    out = minkowski_sum(supp, shift_set(G2, 1, "F"))
    wide = LatticeRegion.from_form(box.pad(1), supp.form)
    expected = brute_sum(wide.points(), shift_set(G2, 1, "F"), box)
    assert set(out.points()) == expected
    assert expected == {p for p in box.points() if (p[0] <= -1 and p[1] <= -2) or (p[0] <= -2 and p[1] <= -1)}


def test_complement_count():
    pos = LatticeRegion.from_form(BOX, [orthant((0, 0))])
    assert len(pos.complement()) == 33


def test_box_mismatch():
    a = LatticeRegion.empty(BOX)
    b = LatticeRegion.empty(BOX.pad(1))
    with pytest.raises(BoxMismatch):
        a.union(b)


def test_insufficient_padding():
    r = LatticeRegion.from_points(BOX, [(0, 0)])
    with pytest.raises(InsufficientPadding):
        minkowski_sum(r, [(1, 0)], BOX)


def test_form_must_match_mask():
    mask = np.zeros(BOX.shape, dtype=bool)
    with pytest.raises(ValueError):
        LatticeRegion(BOX, mask, form=(orthant((0, 0)),))


def test_stable_closure_round_trip():
    r = stable_closure([(1, 1)], G2, BOX)
    assert minimal_generators(r, G2) == [(1, 1)]
    assert apexes(r) == [(1, 1)]
    assert len(stable_closure([], G2, BOX)) == 0


def test_generators_of_the_plus_region():
    form = [orthant((2, 0), ["up", "free"]), orthant((0, 2), ["free", "up"]), orthant((1, 1))]
    r = LatticeRegion.from_form(Box((-4, -4), (6, 6)), form)
    assert sorted(apexes(r), key=str) == sorted([(2, None), (None, 2), (1, 1)], key=str)
    assert minimal_generators(r, G2) == [(-4, 2), (1, 1), (2, -4)]


def test_not_stable():
    with pytest.raises(NotStable):
        minimal_generators(LatticeRegion.from_points(BOX, [(0, 0)]), G2)


def test_nonstandard_closure():
    g = Grading([[1, 2], [1, 0]])
    box = Box((0, 0), (4, 2))
    r = stable_closure([(0, 0)], g, box)
    assert set(r.points()) == {(0, 0), (1, 1), (2, 0), (2, 2), (3, 1), (4, 0), (4, 2)}


@settings(max_examples=30, deadline=None)
@given(masks(BOX), masks(BOX))
def test_de_morgan(a, b):
    assert a.union(b).complement() == a.complement().intersect(b.complement())
    assert a.intersect(b).complement() == a.complement().union(b.complement())
    assert a.union(a) == a


@settings(max_examples=30, deadline=None)
@given(
    st.sets(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), max_size=6),
    st.sets(st.tuples(st.integers(-1, 1), st.integers(-1, 1)), min_size=1, max_size=3),
    st.sets(st.tuples(st.integers(-1, 1), st.integers(-1, 1)), min_size=1, max_size=3),
)
def test_minkowski_associative_and_distributive(pts, s, t):
    big = Box((-8, -8), (8, 8))
    r = LatticeRegion.from_points(big, pts)
    st_sum = {tuple(a + b for a, b in zip(x, y)) for x in s for y in t}
    mid = Box((-6, -6), (6, 6))
    inner = Box((-4, -4), (4, 4))
    left = minkowski_sum(minkowski_sum(r, s, mid), t, inner)
    right = minkowski_sum(r, st_sum, inner)
    assert left == right
    r2 = LatticeRegion.from_points(big, [(0, 0)])
    lhs = minkowski_sum(r.union(r2), s, inner)
    assert lhs == minkowski_sum(r, s, inner).union(minkowski_sum(r2, s, inner))


@settings(max_examples=40, deadline=None)
@given(st.lists(gboxes(), max_size=4))
def test_form_algebra_matches_bitsets(form):
    box = Box((-6, -6), (6, 6))
    form = tuple(form)
    mask = form_mask(form, box)
    assert np.array_equal(form_mask(form_complement(form, 2), box), ~mask)
    region = LatticeRegion.from_form(box, form)
    assert region.complement().form is not None
    # the stable part is contained in the region and stable
    part = LatticeRegion.from_form(box, form_stable_part(form, 2))
    assert part.issubset(region)
    minimal_generators(part, G2)


@settings(max_examples=30, deadline=None)
@given(st.sets(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), max_size=5), st.integers(0, 3))
def test_closure_round_trip_and_padding(pts, pad):
    box = Box((-3, -3), (3, 3))
    r = stable_closure(pts, G2, box)
    gens = minimal_generators(r, G2)
    assert stable_closure(gens, G2, box) == r
    wide = stable_closure(pts, G2, box.pad(pad))
    assert wide.restrict(box) == r
