import random

import pytest

from okbody.fan import (
    DivisorClass,
    Fan,
    InvalidCone,
    base_polytope,
    flag_pairings,
    normalize_class,
    select_flag,
    validate_fan,
)
from okbody.geometry import lattice_points
import fans


def test_p2_valid():
    rep = validate_fan(fans.p2())
    assert rep.smooth and rep.complete and rep.ok


def test_smoothness_failure():
    # |det((0,1),(-2,-1))| = 2 on the cone spanned by rays 1 and 2
    f = Fan(2, ((1, 0), (0, 1), (-2, -1)), ((1, 2), (2, 0), (0, 1)))
    rep = validate_fan(f)
    assert not rep.smooth
    assert any("|det| = 2" in msg for msg in rep.failures)


def test_completeness_failure():
    f = Fan(2, ((1, 0), (0, 1), (-1, -1)), ((2, 0), (0, 1)))
    rep = validate_fan(f)
    assert not rep.complete
    assert any("shared by 1" in msg for msg in rep.failures)


def test_overlapping_cones_rejected():
    # rays 0 and 2 both on the same side of the facet spanned by ray 1
    f = Fan(2, ((1, 0), (0, 1), (1, 1), (-1, -1), (0, -1)),
            ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0)))
    rep = validate_fan(f)
    assert not rep.complete


def test_all_fixture_fans_valid():
    for f in (fans.p1(), fans.p2(), fans.p1xp1(), fans.hirzebruch(1),
              fans.hirzebruch(2), fans.p3(), fans.pn(4)):
        rep = validate_fan(f)
        assert rep.ok, rep.failures


def test_projectivity_check():
    for f in (fans.p1(), fans.p2(), fans.p1xp1(), fans.hirzebruch(1), fans.p3()):
        rep = validate_fan(f, check_projective=True)
        assert rep.projective is True, rep.failures


def test_select_flag_p2():
    b = select_flag(fans.p2(), tau=2)
    assert b.ray_order == (0, 1, 2)
    assert b.dual == ((1, 0), (0, 1))
    # default is the lexicographically smallest maximal cone, also (0, 1)
    assert select_flag(fans.p2()) == b


def test_select_flag_reorders():
    b = select_flag(fans.p2(), tau=0)  # cone (1, 2)
    assert b.ray_order == (1, 2, 0)
    pair = flag_pairings(fans.p2(), b)
    assert pair[0] == (1, 0) and pair[1] == (0, 1)


def test_select_flag_p1xp1():
    b = select_flag(fans.p1xp1(), tau=0)
    assert b.dual == ((1, 0), (0, 1))


def test_select_flag_bad_index():
    with pytest.raises(InvalidCone):
        select_flag(fans.p2(), tau=7)


def test_dual_times_rays_is_identity():
    for f in (fans.p2(), fans.p1xp1(), fans.hirzebruch(2), fans.p3()):
        for tau in range(len(f.max_cones)):
            b = select_flag(f, tau)
            pair = flag_pairings(f, b)
            for i in range(f.dim):
                assert pair[i] == tuple(int(i == k) for k in range(f.dim))


def test_normalize_class_trivial_and_shift():
    f = fans.p2()
    b = select_flag(f)
    assert normalize_class(f, b, (0, 0, 5), 1) == DivisorClass((5,), 1)
    # D_1 ~ D_3 on the projective plane
    assert normalize_class(f, b, (1, 0, 0), 0) == DivisorClass((1,), 0)
    assert normalize_class(f, b, (2, 0, 0), 0) == DivisorClass((2,), 0)


def test_normalize_class_equivalence_invariance():
    rng = random.Random(7)
    f = fans.hirzebruch(1)
    b = select_flag(f)
    pair = flag_pairings(f, b)
    for _ in range(50):
        coeffs = [rng.randint(-3, 3) for _ in range(4)]
        base = normalize_class(f, b, coeffs, 2)
        u = tuple(rng.randint(-3, 3) for _ in range(2))
        shifted = [c + sum(a * p for a, p in zip(u, pair[j]))
                   for j, c in enumerate(coeffs)]
        assert normalize_class(f, b, shifted, 2) == base


def test_base_polytope_counts():
    f = fans.p2()
    assert len(lattice_points(base_polytope(f, (0, 0, 1)))) == 3
    assert lattice_points(base_polytope(f, (0, 0, 0))) == [(0, 0)]
    assert len(lattice_points(base_polytope(f, (1, 1, 1)))) == 10


def test_base_polytope_superadditive():
    f = fans.p1xp1()
    rng = random.Random(11)
    for _ in range(20):
        m1 = [rng.randint(0, 2) for _ in range(4)]
        m2 = [rng.randint(0, 2) for _ in range(4)]
        pts1 = lattice_points(base_polytope(f, m1))
        pts2 = lattice_points(base_polytope(f, m2))
        total = set(lattice_points(base_polytope(
            f, [a + b for a, b in zip(m1, m2)])))
        for a in pts1:
            for b in pts2:
                assert tuple(x + y for x, y in zip(a, b)) in total
