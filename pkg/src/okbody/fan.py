"""Smooth complete fans, flag selection and divisor classes.

The fan keeps its rays in input order.  A flag choice reorders them so the
chosen maximal cone comes first; everything downstream (filtration contexts,
cone rows, class coefficients) indexes rays in that flag order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .geometry import (
    HPolyhedron,
    LinearInequality,
    fm_eliminate,
    hpoly,
    kernel_vector,
    mat_det,
    mat_inverse,
)


class InvalidCone(Exception):
    pass


@dataclass(frozen=True)
class Fan:
    """Rays (primitive integer vectors, input order) and maximal cones (index
    sets of size dim) of a complete simplicial fan."""

    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "max_cones",
                           tuple(tuple(sorted(c)) for c in self.max_cones))

    @property
    def n_rays(self) -> int:
        return len(self.rays)


@dataclass(frozen=True)
class FlagBasis:
    """Flag data: the chosen maximal cone, the ray permutation placing its rays
    first, and the integer dual basis of those rays."""

    tau: int
    ray_order: tuple[int, ...]          # flag position -> input index
    dual: tuple[tuple[int, ...], ...]   # row i pairs to 1 with flag ray i


@dataclass(frozen=True)
class DivisorClass:
    """Class of O(twist) twisted by the base divisor with the given
    coefficients on the non-flag rays (flag order, rays n+1..d)."""

    coeffs: tuple[int, ...]
    twist: int


@dataclass(frozen=True)
class FanValidation:
    smooth: bool
    complete: bool
    projective: bool | None
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.smooth and self.complete and self.projective is not False


def _structural_failures(f: Fan) -> list[str]:
    fails = []
    for i, v in enumerate(f.rays):
        if len(v) != f.dim:
            fails.append(f"ray {i} has length {len(v)}, expected {f.dim}")
        elif not any(v):
            fails.append(f"ray {i} is zero")
        elif gcd(*[abs(x) for x in v]) != 1:
            fails.append(f"ray {i} = {v} is not primitive")
    if len(set(f.rays)) != len(f.rays):
        fails.append("rays are not pairwise distinct")
    for ci, cone in enumerate(f.max_cones):
        if len(set(cone)) != f.dim:
            fails.append(f"maximal cone {ci} does not have {f.dim} distinct rays")
        elif not all(0 <= j < f.n_rays for j in cone):
            fails.append(f"maximal cone {ci} has an out-of-range ray index")
    used = {j for cone in f.max_cones for j in cone}
    if used != set(range(f.n_rays)):
        fails.append("some ray belongs to no maximal cone")
    if len(set(f.max_cones)) != len(f.max_cones):
        fails.append("maximal cones are not pairwise distinct")
    return fails


def validate_fan(f: Fan, check_projective: bool = False) -> FanValidation:
    """Check smoothness and completeness; optionally also projectivity.

    Completeness is certified by facet pairing: every facet of a maximal cone
    must be shared by exactly two maximal cones lying on opposite sides of the
    facet hyperplane, and the adjacency graph must be connected.  All indices
    in failure messages are 0-based.
    """
    fails = _structural_failures(f)
    if fails:
        return FanValidation(False, False, None, tuple(fails))

    smooth = True
    for ci, cone in enumerate(f.max_cones):
        det = mat_det([f.rays[j] for j in cone])
        if abs(det) != 1:
            smooth = False
            fails.append(
                f"maximal cone {ci} (rays {cone}) has |det| = {abs(det)}, not 1")

    complete = True
    facet_map: dict[tuple[int, ...], list[int]] = {}
    for ci, cone in enumerate(f.max_cones):
        for facet in itertools.combinations(cone, f.dim - 1):
            facet_map.setdefault(facet, []).append(ci)
    adjacency = {ci: set() for ci in range(len(f.max_cones))}
    for facet, owners in sorted(facet_map.items()):
        if len(owners) != 2:
            complete = False
            fails.append(
                f"facet {facet} is shared by {len(owners)} maximal cones, not 2")
            continue
        normal = kernel_vector([f.rays[j] for j in facet], f.dim)
        if normal is None:
            complete = False
            fails.append(f"facet {facet} does not span a hyperplane")
            continue
        sides = []
        for ci in owners:
            extra = next(j for j in f.max_cones[ci] if j not in facet)
            sides.append(sum(a * b for a, b in zip(normal, f.rays[extra])))
        if sides[0] == 0 or sides[1] == 0 or (sides[0] > 0) == (sides[1] > 0):
            complete = False
            fails.append(
                f"maximal cones {owners} overlap across facet {facet}")
        else:
            adjacency[owners[0]].add(owners[1])
            adjacency[owners[1]].add(owners[0])
    if complete and f.max_cones:
        seen = {0}
        stack = [0]
        while stack:
            for nb in adjacency[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if len(seen) != len(f.max_cones):
            complete = False
            fails.append("maximal-cone adjacency graph is disconnected")

    projective = None
    if check_projective and smooth and complete:
        projective = _strictly_convex_support_exists(f)
        if not projective:
            fails.append("no strictly convex support function exists")
    return FanValidation(smooth, complete, projective, tuple(fails))


def _strictly_convex_support_exists(f: Fan) -> bool:
    """Exact feasibility, via elimination, of a strictly convex piecewise
    linear function on the fan (values y_j on the rays, strictness normalized
    to a gap of 1)."""
    d = f.n_rays
    rows = []
    for cone in f.max_cones:
        dual = mat_inverse([[f.rays[j][i] for j in cone] for i in range(f.dim)])
        for k in range(d):
            if k in cone:
                continue
            coeffs = [Fraction(0)] * d
            coeffs[k] = Fraction(1)
            pair = [sum(dual[t][i] * f.rays[k][i] for i in range(f.dim))
                    for t in range(f.dim)]
            for t, j in enumerate(cone):
                coeffs[j] -= pair[t]
            rows.append((tuple(coeffs), -1))
    p = hpoly(d, rows)
    for _ in range(d):
        p = fm_eliminate(p, p.dim - 1)
    return not any(r.is_trivially_false for r in p.inequalities)


def select_flag(f: Fan, tau: int | None = None) -> FlagBasis:
    """Pick the flag cone (default: lexicographically smallest maximal cone by
    sorted ray indices), move its rays to the front preserving input order,
    and compute the exact integer dual basis."""
    if tau is None:
        tau = min(range(len(f.max_cones)), key=lambda i: f.max_cones[i])
    if not 0 <= tau < len(f.max_cones):
        raise InvalidCone(f"no maximal cone with index {tau}")
    cone = f.max_cones[tau]
    order = tuple(cone) + tuple(j for j in range(f.n_rays) if j not in cone)
    matrix = [[f.rays[j][i] for j in cone] for i in range(f.dim)]
    if abs(mat_det(matrix)) != 1:
        raise InvalidCone(f"maximal cone {tau} is not smooth")
    dual = mat_inverse(matrix)
    dual_int = tuple(tuple(int(x) for x in row) for row in dual)
    return FlagBasis(tau, order, dual_int)


def flag_pairings(f: Fan, b: FlagBasis) -> tuple[tuple[int, ...], ...]:
    """Row j holds the pairings of the dual basis with flag ray j, so a
    character u in dual-basis coordinates pairs with ray j as u . row_j."""
    out = []
    for j in b.ray_order:
        v = f.rays[j]
        out.append(tuple(sum(r * x for r, x in zip(row, v)) for row in b.dual))
    return tuple(out)


def normalize_class(f: Fan, b: FlagBasis, full_coeffs, twist: int) -> DivisorClass:
    """Reduce a full invariant divisor (coefficients in flag order) to the
    basis supported off the flag cone, by subtracting the character that
    matches the first n coefficients.  Linear equivalence is preserved."""
    if len(full_coeffs) != f.n_rays:
        raise ValueError(f"expected {f.n_rays} coefficients")
    pair = flag_pairings(f, b)
    u = tuple(full_coeffs[: f.dim])
    coeffs = tuple(
        full_coeffs[j] - sum(a * b_ for a, b_ in zip(u, pair[j]))
        for j in range(f.dim, f.n_rays))
    return DivisorClass(coeffs, twist)


def class_values(f: Fan, cls: DivisorClass) -> tuple[int, ...]:
    """Per-ray coefficients of the class in flag order (zero on flag rays)."""
    if len(cls.coeffs) != f.n_rays - f.dim:
        raise ValueError(
            f"class has {len(cls.coeffs)} coefficients, expected {f.n_rays - f.dim}")
    return (0,) * f.dim + tuple(cls.coeffs)


def base_polytope(f: Fan, values) -> HPolyhedron:
    """Section polytope {u : <u, v_j> <= m_j} of a base divisor whose per-ray
    values are given in input ray order."""
    if len(values) != f.n_rays:
        raise ValueError(f"expected {f.n_rays} values")
    rows = [
        (tuple(-x for x in v), m) for v, m in zip(f.rays, values)
    ]
    return HPolyhedron(f.dim, tuple(LinearInequality.of(c, k) for c, k in rows))
