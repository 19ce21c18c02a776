import random
from fractions import Fraction

import pytest

from okbody.geometry import (
    DimensionMismatch,
    LinearInequality,
    UnboundedInput,
    bounding_box,
    contains,
    dd_vertices,
    fm_eliminate,
    hpoly,
    lattice_points,
    poly_equal,
    volume,
)
from oracles import TANGENT_P2_BODY, box_scan, enumerate_vertices, in_hull

F = Fraction


def cube(side=1, shift=0):
    rows = []
    for i in range(3):
        e = [0, 0, 0]
        e[i] = 1
        rows.append((tuple(e), -shift))
        e = [0, 0, 0]
        e[i] = -1
        rows.append((tuple(e), side + shift))
    return hpoly(3, rows)


def test_canonical_form():
    r = LinearInequality.of((F(2, 3), F(4, 3)), F(-2, 3))
    assert r.normal == (1, 2) and r.constant == -1
    r = LinearInequality.of((4, -6), 8)
    assert r.normal == (2, -3) and r.constant == 4


def test_fm_interval_shadow():
    p = hpoly(2, [((1, 0), 0), ((-1, 1), 0), ((0, -1), 1)])
    q = fm_eliminate(p, 1)
    assert set(q.inequalities) == {
        LinearInequality.of((1,), 0),
        LinearInequality.of((-1,), 1),
    }


def test_fm_infeasible_certificate():
    p = hpoly(1, [((1,), -1), ((-1,), 0)])
    q = fm_eliminate(p, 0)
    assert q.dim == 0
    assert [(r.normal, r.constant) for r in q.inequalities] == [((), -1)]


def test_fm_body_shadow():
    shadow = fm_eliminate(TANGENT_P2_BODY, 2)
    expected = hpoly(2, [((1, 0), 0), ((0, 1), 0), ((-1, 0), 1), ((-1, -1), 2)])
    assert poly_equal(shadow, expected)
    # cross-check against the projected hull of independently enumerated vertices
    projected = sorted({v[:2] for v in enumerate_vertices(TANGENT_P2_BODY)})
    for v in dd_vertices(shadow).vertices:
        assert in_hull(v, projected)
    for q in projected:
        assert contains(shadow, q)


def test_dd_cube():
    v = dd_vertices(cube())
    assert len(v.vertices) == 8 and v.dim == 3
    assert all(all(x in (0, 1) for x in vert) for vert in v.vertices)


def test_dd_tangent_body_vertices():
    # frozen from the plane-intersection oracle: 7 distinct extreme points
    expected = [
        (0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 2, 0),
        (1, 0, 0), (1, 0, 1), (1, 1, 0),
    ]
    assert enumerate_vertices(TANGENT_P2_BODY) == [
        tuple(F(x) for x in v) for v in expected]
    got = dd_vertices(TANGENT_P2_BODY)
    assert list(got.vertices) == [tuple(F(x) for x in v) for v in expected]
    assert got.dim == 3


def test_dd_empty():
    p = hpoly(1, [((1,), -1), ((-1,), 0)])
    v = dd_vertices(p)
    assert v.dim == -1 and v.vertices == ()


def test_dd_lower_dimensional():
    p = hpoly(3, [((1, 0, 0), 0), ((-1, 0, 0), 1), ((0, 1, 0), 0),
                  ((0, -1, 0), 1)], eqs=[((0, 0, 1), 0)])
    v = dd_vertices(p)
    assert v.dim == 2 and len(v.vertices) == 4


def test_volume_cube_and_simplex():
    assert volume(dd_vertices(cube())) == 1
    simplex = hpoly(3, [((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0),
                        ((-1, -1, -1), 1)])
    assert volume(dd_vertices(simplex)) == F(1, 6)


def test_volume_tangent_body():
    assert volume(dd_vertices(TANGENT_P2_BODY)) == 1


def test_volume_translation_and_scaling():
    base = volume(dd_vertices(cube()))
    assert volume(dd_vertices(cube(shift=5))) == base
    for lam in (2, 3):
        assert volume(dd_vertices(cube(side=lam))) == base * lam**3


def test_volume_lower_dim_is_zero():
    p = hpoly(3, [((1, 0, 0), 0), ((-1, 0, 0), 1), ((0, 1, 0), 0),
                  ((0, -1, 0), 1)], eqs=[((0, 0, 1), 0)])
    assert volume(dd_vertices(p)) == 0


def test_lattice_tangent_body():
    pts = lattice_points(TANGENT_P2_BODY)
    assert len(pts) == 8
    assert pts == box_scan(TANGENT_P2_BODY, [0, 0, 0], [2, 2, 2])


def test_lattice_segment_and_empty():
    seg = hpoly(1, [((1,), 0), ((-1,), 1)])
    assert lattice_points(seg) == [(0,), (1,)]
    empty = hpoly(1, [((1,), -1), ((-1,), 0)])
    assert lattice_points(empty) == []


def test_bounding_box_tangent_body():
    box = bounding_box(TANGENT_P2_BODY)
    assert box.feasible and box.bounded
    assert box.ranges == ((0, 1), (0, 2), (0, 1))


def test_bounding_box_unbounded_line():
    p = hpoly(2, [((1, -1), 0), ((-1, 1), 0)])
    box = bounding_box(p)
    assert box.feasible and not box.bounded
    assert box.ranges == ((None, None), (None, None))


def test_bounding_box_empty():
    p = hpoly(1, [((1,), -1), ((-1,), 0)])
    assert not bounding_box(p).feasible


def test_contains():
    assert contains(cube(), (F(1, 2), F(1, 2), F(1, 2)))
    assert not contains(cube(), (2, 0, 0))
    assert contains(TANGENT_P2_BODY, (0, 1, 0))
    with pytest.raises(DimensionMismatch):
        contains(cube(), (0, 0))


def test_poly_equal_bounded():
    redundant = hpoly(3, [(r.normal, r.constant) for r in cube().inequalities]
                      + [((1, 1, 1), 5)])
    assert poly_equal(cube(), redundant)
    assert not poly_equal(cube(), cube(shift=1))


def test_poly_equal_cones():
    c1 = hpoly(2, [((1, 0), 0), ((0, 1), 0)])
    c2 = hpoly(2, [((2, 0), 0), ((0, 3), 0), ((1, 1), 0)])
    c3 = hpoly(2, [((1, 0), 0), ((1, 1), 0)])
    assert poly_equal(c1, c2)
    assert not poly_equal(c1, c3)


def test_poly_equal_mixed_raises():
    unbounded = hpoly(1, [((1,), 0)])
    point = hpoly(1, [((1,), 0), ((-1,), 0)])
    with pytest.raises(UnboundedInput):
        poly_equal(unbounded, hpoly(1, [((1,), 1)]))
    assert poly_equal(unbounded, hpoly(1, [((3,), 0)]))
    assert not poly_equal(unbounded, point)


def random_bounded(rng, dim=3, extra=4):
    rows = []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        rows.append((tuple(e), 3))
        e = [0] * dim
        e[i] = -1
        rows.append((tuple(e), 3))
    for _ in range(extra):
        normal = tuple(rng.randint(-2, 2) for _ in range(dim))
        rows.append((normal, rng.randint(0, 4)))
    return hpoly(dim, rows)


def test_fm_soundness_random():
    rng = random.Random(20260810)
    for _ in range(40):
        p = random_bounded(rng)
        coord = rng.randrange(3)
        shadow = fm_eliminate(p, coord)
        pv = sorted({v[:coord] + v[coord + 1:] for v in dd_vertices(p).vertices})
        sv = dd_vertices(shadow).vertices
        for q in pv:
            assert contains(shadow, q)
        for v in sv:
            assert in_hull(v, pv)
        for q in pv:
            assert in_hull(q, sv)


def test_dd_contains_duality_random():
    rng = random.Random(4711)
    for _ in range(30):
        p = random_bounded(rng)
        verts = dd_vertices(p).vertices
        for v in verts:
            assert contains(p, v)
        for a, b in zip(verts, verts[1:]):
            mid = tuple((x + y) / 2 for x, y in zip(a, b))
            assert contains(p, mid)


def test_outputs_independent_of_row_order():
    rng = random.Random(99)
    rows = [(r.normal, r.constant) for r in TANGENT_P2_BODY.inequalities]
    for _ in range(5):
        shuffled = rows[:]
        rng.shuffle(shuffled)
        q = hpoly(3, shuffled)
        assert fm_eliminate(q, 2) == fm_eliminate(TANGENT_P2_BODY, 2)
        assert dd_vertices(q) == dd_vertices(TANGENT_P2_BODY)
        assert lattice_points(q) == lattice_points(TANGENT_P2_BODY)
        assert bounding_box(q) == bounding_box(TANGENT_P2_BODY)
