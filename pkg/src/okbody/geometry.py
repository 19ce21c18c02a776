"""Exact rational polyhedral kernel.

Fourier-Motzkin projection, double-description vertex enumeration, volume by
triangulation, lattice-point scans and membership tests, all over arbitrary
precision rationals.  Vectors are plain tuples of ``Fraction``/``int``; no
floating point enters at any step.  Every value is immutable and every
operation is pure, so concurrent use is safe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd, lcm


class GeometryError(Exception):
    pass


class UnboundedInput(GeometryError):
    pass


class DimensionMismatch(GeometryError):
    pass


Vec = tuple[Fraction, ...]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def canonical_row(coeffs, constant):
    """Scale (coeffs, constant) to integers with content 1, keeping orientation.

    The halfspace ``coeffs.x + constant >= 0`` is unchanged because the scale
    factor is positive.
    """
    row = [Fraction(c) for c in coeffs] + [Fraction(constant)]
    mult = 1
    for f in row:
        mult = lcm(mult, f.denominator)
    ints = [int(f * mult) for f in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints[:-1]), ints[-1]


@dataclass(frozen=True, order=True)
class LinearInequality:
    """``normal . x + constant >= 0`` in canonical integer form."""

    normal: tuple[int, ...]
    constant: int

    @classmethod
    def of(cls, coeffs, constant):
        n, c = canonical_row(coeffs, constant)
        return cls(n, c)

    def eval(self, x) -> Fraction:
        if len(x) != len(self.normal):
            raise DimensionMismatch(
                f"point has {len(x)} coordinates, inequality expects {len(self.normal)}")
        return Fraction(_dot(self.normal, x) + self.constant)

    @property
    def is_trivially_true(self) -> bool:
        return not any(self.normal) and self.constant >= 0

    @property
    def is_trivially_false(self) -> bool:
        return not any(self.normal) and self.constant < 0


@dataclass(frozen=True)
class HPolyhedron:
    """Intersection of halfspaces ``normal.x + c >= 0`` and hyperplanes ``= 0``.

    No bounds are implied beyond the listed constraints.  Rows are kept in the
    order given; use :func:`fm_eliminate` and friends for canonically sorted
    derived output.
    """

    dim: int
    inequalities: tuple[LinearInequality, ...]
    equations: tuple[LinearInequality, ...] = ()

    def __post_init__(self):
        for row in self.inequalities + self.equations:
            if len(row.normal) != self.dim:
                raise DimensionMismatch(
                    f"row of length {len(row.normal)} in dimension {self.dim}")

    @property
    def is_homogeneous(self) -> bool:
        return all(r.constant == 0 for r in self.inequalities + self.equations)


def hpoly(dim, ineqs, eqs=()) -> HPolyhedron:
    """Build an HPolyhedron from raw (coeffs, constant) rows."""
    return HPolyhedron(
        dim,
        tuple(LinearInequality.of(c, k) for c, k in ineqs),
        tuple(LinearInequality.of(c, k) for c, k in eqs),
    )


@dataclass(frozen=True)
class VPolytope:
    """Extreme points of a bounded polyhedron; ``dim`` is the affine dimension,
    -1 for the empty set."""

    vertices: tuple[Vec, ...]
    dim: int


@dataclass(frozen=True)
class Box:
    """Per-coordinate exact extrema. ``ranges[i]`` is (lo, hi) with None for an
    unbounded side; ``feasible`` is False when the polyhedron is empty."""

    feasible: bool
    ranges: tuple[tuple[Fraction | None, Fraction | None], ...]

    @property
    def bounded(self) -> bool:
        return self.feasible and all(
            lo is not None and hi is not None for lo, hi in self.ranges)


# ---------------------------------------------------------------------------
# exact linear algebra helpers

def mat_rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def mat_det(rows) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return det


def mat_inverse(rows):
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            raise GeometryError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return [r[n:] for r in m]


def solve_linear(rows, rhs):
    """Solve a square nonsingular system exactly."""
    inv = mat_inverse(rows)
    return tuple(_dot(r, rhs) for r in inv)


def affine_dim(points) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [[Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in points[1:]]
    if not diffs:
        return 0
    return mat_rank(diffs)


def primitive(vec):
    """Divide an integer vector by the gcd of its entries (sign kept)."""
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g > 1:
        return tuple(v // g for v in vec)
    return tuple(vec)


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination

def _drop_coord(row: LinearInequality, coord: int) -> LinearInequality:
    return LinearInequality.of(row.normal[:coord] + row.normal[coord + 1:], row.constant)


def _eliminate_with_equation(row, eq, coord):
    # row - (row[coord]/eq[coord]) * eq, then drop the zeroed coordinate
    f = Fraction(row.normal[coord], eq.normal[coord])
    coeffs = [Fraction(a) - f * b for a, b in zip(row.normal, eq.normal)]
    const = Fraction(row.constant) - f * eq.constant
    del coeffs[coord]
    return LinearInequality.of(coeffs, const)


def fm_eliminate(p: HPolyhedron, coord: int) -> HPolyhedron:
    """Project ``p`` onto the coordinates other than ``coord``.

    Equations with a nonzero coefficient on ``coord`` are used for exact
    substitution; otherwise positive/negative inequality pairs are combined.
    Duplicate rows are removed by canonical comparison (full redundancy removal
    is not attempted).  An infeasible input keeps an explicit ``-1 >= 0``
    certificate row.
    """
    if not 0 <= coord < p.dim:
        raise DimensionMismatch(f"coordinate {coord} out of range for dim {p.dim}")
    pivot = next((e for e in p.equations if e.normal[coord] != 0), None)
    new_eqs: list[LinearInequality] = []
    new_ineqs: list[LinearInequality] = []
    if pivot is not None:
        for e in p.equations:
            if e is pivot:
                continue
            new_eqs.append(_eliminate_with_equation(e, pivot, coord))
        for r in p.inequalities:
            new_ineqs.append(_eliminate_with_equation(r, pivot, coord))
    else:
        new_eqs = [_drop_coord(e, coord) for e in p.equations]
        pos = [r for r in p.inequalities if r.normal[coord] > 0]
        neg = [r for r in p.inequalities if r.normal[coord] < 0]
        zero = [r for r in p.inequalities if r.normal[coord] == 0]
        new_ineqs = [_drop_coord(r, coord) for r in zero]
        for rp in pos:
            for rn in neg:
                a, b = rp.normal[coord], -rn.normal[coord]
                coeffs = [b * x + a * y for x, y in zip(rp.normal, rn.normal)]
                const = b * rp.constant + a * rn.constant
                del coeffs[coord]
                new_ineqs.append(LinearInequality.of(coeffs, const))
    # an impossible equation becomes an explicit infeasibility certificate
    eqs_out = []
    for e in new_eqs:
        if not any(e.normal) and e.constant != 0:
            new_ineqs.append(LinearInequality.of((0,) * (p.dim - 1), -1))
        elif any(e.normal) or e.constant != 0:
            eqs_out.append(e)
    ineqs_out = sorted({r for r in new_ineqs if not r.is_trivially_true})
    return HPolyhedron(p.dim - 1, tuple(ineqs_out), tuple(sorted(set(eqs_out))))


# ---------------------------------------------------------------------------
# bounding box, membership, lattice points

def _interval_of_line(p: HPolyhedron):
    """Exact (lo, hi) of a 1-dimensional H-system; (None, None, False) if empty."""
    lo, hi = None, None
    feasible = True

    def tighten(c, k, equality=False):
        nonlocal lo, hi, feasible
        if c == 0:
            if k < 0 or (equality and k != 0):
                feasible = False
            return
        bound = Fraction(-k, c)
        if c > 0 or equality:
            if lo is None or bound > lo:
                lo = bound
        if c < 0 or equality:
            if hi is None or bound < hi:
                hi = bound

    for r in p.inequalities:
        tighten(r.normal[0], r.constant)
    for e in p.equations:
        tighten(e.normal[0], e.constant, equality=True)
    if lo is not None and hi is not None and lo > hi:
        feasible = False
    return lo, hi, feasible


def bounding_box(p: HPolyhedron) -> Box:
    """Per-coordinate extrema obtained by eliminating all other coordinates."""
    ranges = []
    feasible = True
    for i in range(p.dim):
        q = p
        pos = i
        for j in range(p.dim - 1, -1, -1):
            if j == i:
                continue
            q = fm_eliminate(q, j)
            if j < pos:
                pos -= 1
        lo, hi, ok = _interval_of_line(q)
        if not ok:
            feasible = False
        ranges.append((lo, hi))
    if p.dim == 0:
        # only constant rows can rule out the origin of R^0
        feasible = not any(r.is_trivially_false for r in p.inequalities) and all(
            e.constant == 0 for e in p.equations)
    return Box(feasible, tuple(ranges))


def contains(p: HPolyhedron, x) -> bool:
    if len(x) != p.dim:
        raise DimensionMismatch(f"point of length {len(x)} vs dim {p.dim}")
    return all(r.eval(x) >= 0 for r in p.inequalities) and all(
        e.eval(x) == 0 for e in p.equations)


def _ceil_frac(f: Fraction) -> int:
    return -((-f.numerator) // f.denominator)


def _floor_frac(f: Fraction) -> int:
    return f.numerator // f.denominator


def lattice_points(p: HPolyhedron) -> list[tuple[int, ...]]:
    """All integer points of a bounded polyhedron, in lexicographic order.

    Box scan plus membership filter; fine at the scale this package targets
    (box sides up to a few thousand points per axis).
    """
    box = bounding_box(p)
    if not box.feasible:
        return []
    if not box.bounded:
        raise UnboundedInput("lattice_points needs a bounded polyhedron")
    axes = []
    for lo, hi in box.ranges:
        first, last = _ceil_frac(lo), _floor_frac(hi)
        if first > last:
            return []
        axes.append(range(first, last + 1))
    return [x for x in itertools.product(*axes) if contains(p, x)]


# ---------------------------------------------------------------------------
# vertex enumeration (double description over the homogenization)

def _homogeneous_rows(p: HPolyhedron):
    """Constraint rows of p, homogenized to (normal..., constant), equations
    expanded into opposite inequality pairs; canonically sorted."""
    rows = set()
    for r in p.inequalities:
        if r.is_trivially_true:
            continue
        rows.add(r.normal + (r.constant,))
    for e in p.equations:
        rows.add(e.normal + (e.constant,))
        neg, c = canonical_row([-v for v in e.normal], -e.constant)
        rows.add(neg + (c,))
    return sorted(rows)


def _dd_cone_rays(start_rays, rows):
    """Extreme rays of ``cone(start_rays) ∩ {row.y >= 0 for rows}``.

    Incremental double description with the combinatorial adjacency test;
    requires the starting cone to be pointed with exactly its extreme rays
    given.  Active sets are bitmasks over inserted rows.
    """
    rays = [primitive(r) for r in start_rays]
    acts = [0 for _ in rays]
    for k, row in enumerate(rows):
        bit = 1 << k
        vals = [_dot(row, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            for i in zero:
                acts[i] |= bit
            continue
        fresh = []
        for ip in pos:
            for im in neg:
                common = acts[ip] & acts[im]
                dominated = any(
                    t != ip and t != im and common & ~acts[t] == 0
                    for t in range(len(rays)))
                if dominated:
                    continue
                a, b = vals[ip], -vals[im]
                fresh.append(primitive(
                    tuple(a * y + b * x for x, y in zip(rays[ip], rays[im]))))
        keep = pos + zero
        rays = [rays[i] for i in keep] + fresh
        acts = [acts[i] | (bit if i in zero else 0) for i in keep]
        for r in fresh:
            mask = 0
            for kk in range(k + 1):
                if _dot(rows[kk], r) == 0:
                    mask |= 1 << kk
            acts.append(mask)
        # dedupe (repeated rows can regenerate an existing ray)
        seen = {}
        for r, m in zip(rays, acts):
            seen.setdefault(r, m)
        rays = sorted(seen)
        acts = [seen[r] for r in rays]
    return rays


def dd_vertices(p: HPolyhedron) -> VPolytope:
    """Exact vertex set of a bounded polyhedron.

    The polyhedron is homogenized over an inflated bounding box (whose corner
    rays are a pointed full-dimensional start for the double description run);
    constraints are inserted in canonical lexicographic order, so the result
    does not depend on input row order.
    """
    box = bounding_box(p)
    if not box.feasible:
        return VPolytope((), -1)
    if not box.bounded:
        raise UnboundedInput("dd_vertices needs a bounded polyhedron")
    lows = [_floor_frac(lo) - 1 for lo, _ in box.ranges]
    highs = [_ceil_frac(hi) + 1 for _, hi in box.ranges]
    corners = [tuple(c) + (1,) for c in itertools.product(
        *[(l, h) for l, h in zip(lows, highs)])]
    rows = []
    for i in range(p.dim):
        e = [0] * (p.dim + 1)
        e[i], e[p.dim] = 1, -lows[i]
        rows.append(tuple(e))
        e = [0] * (p.dim + 1)
        e[i], e[p.dim] = -1, highs[i]
        rows.append(tuple(e))
    rows += _homogeneous_rows(p)
    rays = _dd_cone_rays(sorted(corners), rows)
    verts = sorted(
        tuple(Fraction(v, r[-1]) for v in r[:-1]) for r in rays if r[-1] > 0)
    # bounded input: the homogenization has no rays at height 0
    return VPolytope(tuple(verts), affine_dim(verts))


# ---------------------------------------------------------------------------
# volume by triangulation

def _supporting_hyperplanes(points):
    """Facet hyperplanes of the full-dimensional hull of ``points`` in R^k.

    Brute force over k-subsets; returns a list of sorted vertex-index tuples,
    one per facet.
    """
    k = len(points[0])
    npts = len(points)
    seen = set()
    facets = []
    for combo in itertools.combinations(range(npts), k):
        pts = [points[c] for c in combo]
        base = pts[0]
        diffs = [[a - b for a, b in zip(q, base)] for q in pts[1:]]
        # normal spans the kernel of the (k-1) x k difference matrix
        normal = kernel_vector(diffs, k)
        if normal is None:
            continue
        offset = -_dot(normal, base)
        nc, cc = canonical_row(normal, offset)
        if (nc, cc) in seen:
            continue
        seen.add((nc, cc))
        vals = [_dot(nc, q) + cc for q in points]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            facets.append(tuple(i for i, v in enumerate(vals) if v == 0))
    return sorted(set(facets))


def kernel_vector(rows, k):
    """A nonzero vector in R^k orthogonal to the given rows when their rank is
    exactly k-1, else None."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    row = 0
    for col in range(k):
        piv = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        m[row] = [v * inv for v in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
    if row != k - 1:
        return None
    free = next(c for c in range(k) if c not in pivots)
    vec = [Fraction(0)] * k
    vec[free] = Fraction(1)
    for r, col in zip(range(row), pivots):
        vec[col] = -m[r][free]
    return vec


def _triangulate(points):
    """Triangulate the full-dimensional hull of extreme ``points`` in R^k.

    Fan triangulation: cone the lexicographically smallest vertex over a
    recursive triangulation of the facets not containing it. Returns vertex
    index tuples.
    """
    k = len(points[0])
    n = len(points)
    if n == k + 1:
        return [tuple(range(n))]
    apex = min(range(n), key=lambda i: points[i])
    tris = []
    for facet in _supporting_hyperplanes(points):
        if apex in facet:
            continue
        sub = [points[i] for i in facet]
        drop = next(
            c for c in range(k)
            if affine_dim([q[:c] + q[c + 1:] for q in sub]) == k - 1)
        proj = [q[:drop] + q[drop + 1:] for q in sub]
        if k - 1 == 0 or len(proj) == k:
            sub_tris = [tuple(range(len(proj)))]
        else:
            sub_tris = _triangulate(proj)
        for st in sub_tris:
            tris.append((apex,) + tuple(facet[i] for i in st))
    return tris


def volume(v: VPolytope) -> Fraction:
    """Exact Lebesgue volume in the ambient dimension; 0 below full dimension.

    Vertices must be extreme points (as produced by :func:`dd_vertices`)."""
    if v.dim < 0 or not v.vertices:
        return Fraction(0)
    ambient = len(v.vertices[0])
    if v.dim < ambient:
        return Fraction(0)
    if ambient == 0:
        return Fraction(0)
    pts = [tuple(Fraction(x) for x in q) for q in v.vertices]
    total = Fraction(0)
    for tri in _triangulate(pts):
        base = pts[tri[0]]
        rows = [[a - b for a, b in zip(pts[i], base)] for i in tri[1:]]
        total += abs(mat_det(rows))
    return total / factorial(ambient)


# ---------------------------------------------------------------------------
# set equality

def _truncate_unit_box(p: HPolyhedron) -> HPolyhedron:
    rows = list(p.inequalities)
    for i in range(p.dim):
        e = [0] * p.dim
        e[i] = 1
        rows.append(LinearInequality.of(e, 1))
        e = [0] * p.dim
        e[i] = -1
        rows.append(LinearInequality.of(e, 1))
    return HPolyhedron(p.dim, tuple(rows), p.equations)


def poly_equal(p: HPolyhedron, q: HPolyhedron) -> bool:
    """Set equality by double inclusion of vertex/generator sets.

    Both arguments must be bounded, or both homogeneous cones (which are
    compared through their unit-box truncations).
    """
    if p.dim != q.dim:
        raise DimensionMismatch("ambient dimensions differ")
    bp, bq = bounding_box(p), bounding_box(q)
    if bp.feasible != bq.feasible:
        return False
    if not bp.feasible:
        return True
    if bp.bounded and bq.bounded:
        vp, vq = dd_vertices(p), dd_vertices(q)
        return all(contains(q, x) for x in vp.vertices) and all(
            contains(p, x) for x in vq.vertices)
    if p.is_homogeneous and q.is_homogeneous:
        return poly_equal(_truncate_unit_box(p), _truncate_unit_box(q))
    raise UnboundedInput("poly_equal needs bounded sets or homogeneous cones")
