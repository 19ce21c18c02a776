"""Global Okounkov cone of the projectivized bundle and its class fibers.

The cone lives in R^(d+2) with coordinates (x_1..x_{n+1}, w_{n+1}..w_d, w): the
first n+1 are vanishing orders along the flag, the rest are the class
coordinates (base coefficients and the twist).  One inequality per admissible
ray set, plus the two bounds w >= x_{n+1} >= 0.  Fibers over integral classes
are bodies in R^{n+1}; an independent section oracle pins them down exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm

from .fan import DivisorClass, Fan, FlagBasis, flag_pairings
from .filtration import FlagContext
from .geometry import (
    HPolyhedron,
    LinearInequality,
    VPolytope,
    dd_vertices,
    lattice_points,
    volume,
)


class CapExceeded(Exception):
    pass


@dataclass(frozen=True)
class AdmissibleSet:
    """A ray set contributing one inequality: an A- or B-singleton, or a choice
    of at most one ray from each class C_h."""

    kind: str  # "A", "B" or "C"
    rays: tuple[int, ...]

    def label(self) -> str:
        return f"{self.kind}:{{{','.join(str(j) for j in self.rays)}}}"


@dataclass(frozen=True)
class GlobalCone:
    ctx: FlagContext
    cone: HPolyhedron
    provenance: tuple[str, ...]


@dataclass(frozen=True)
class OkounkovBody:
    cls: DivisorClass
    body: HPolyhedron
    verts: VPolytope | None = None
    vol: Fraction | None = None


def admissible_sets(ctx: FlagContext, cap: int = 100_000) -> list[AdmissibleSet]:
    """All admissible sets: A-singletons and B-singletons by ray index, then
    the choose-or-skip products over the C classes, least-significant class
    first.  Raises CapExceeded when the C product would exceed ``cap``."""
    out = [AdmissibleSet("A", (j,)) for j in ctx.A]
    out += [AdmissibleSet("B", (j,)) for j in ctx.B]
    total = 1
    for c in ctx.Cs:
        total *= len(c) + 1
    if total - 1 > cap:
        raise CapExceeded(
            f"{total - 1} admissible C-sets exceed the cap of {cap}")
    sizes = [len(c) for c in ctx.Cs]
    for mask in range(1, total):
        digits = []
        rest = mask
        for s in sizes:
            digits.append(rest % (s + 1))
            rest //= s + 1
        rays = tuple(ctx.Cs[h][dig - 1] for h, dig in enumerate(digits) if dig)
        out.append(AdmissibleSet("C", tuple(sorted(rays))))
    return out


def gamma_coeffs(ctx: FlagContext, j: int):
    """Numerator row (over the d+2 cone coordinates) and positive denominator
    of the ray-j level functional pulled back through the class
    parametrization."""
    n, d = ctx.n, ctx.d
    row = [0] * (d + 2)
    pair = ctx.pairings[j]
    for i in range(n):
        row[i] = -pair[i]
    row[n] = ctx.pairing(ctx.u1, j) - ctx.pairing(ctx.u2, j)
    if j >= n:
        row[j + 1] = -1
    row[d + 1] = ctx.pairing(ctx.u2, j) - ctx.a[j]
    return tuple(row), ctx.b[j] - ctx.a[j]


def global_cone(ctx: FlagContext, cap: int = 100_000) -> GlobalCone:
    """Integer H-representation of the global cone, with one row per
    admissible set plus the two bound rows; the row order and count are fixed
    (no redundancy removal)."""
    n, d = ctx.n, ctx.d
    rows = []
    tags = []
    bound = [0] * (d + 2)
    bound[n], bound[d + 1] = -1, 1
    rows.append(LinearInequality.of(bound, 0))
    tags.append(f"w>=x{n + 1}")
    bound = [0] * (d + 2)
    bound[n] = 1
    rows.append(LinearInequality.of(bound, 0))
    tags.append(f"x{n + 1}>=0")
    for s in admissible_sets(ctx, cap):
        if s.kind in ("A", "B"):
            num, den = gamma_coeffs(ctx, s.rays[0])
            row = [-v for v in num]
            if s.kind == "B":
                row[n] += den
        else:
            den_all = lcm(*[ctx.b[j] - ctx.a[j] for j in s.rays])
            row = [0] * (d + 2)
            for j in s.rays:
                num, den = gamma_coeffs(ctx, j)
                f = den_all // den
                for i, v in enumerate(num):
                    row[i] -= f * v
            row[n] -= den_all
            row[d + 1] += den_all
        rows.append(LinearInequality.of(row, 0))
        tags.append(s.label())
    return GlobalCone(ctx, HPolyhedron(d + 2, tuple(rows)), tuple(tags))


def fiber_body(gc: GlobalCone, cls: DivisorClass,
               with_vertices: bool = False,
               with_volume: bool = False) -> OkounkovBody:
    """Slice of the global cone at the class coordinates, as a body in
    R^{n+1}.  Empty and lower-dimensional slices are ordinary results."""
    n, d = gc.ctx.n, gc.ctx.d
    if len(cls.coeffs) != d - n:
        raise ValueError(f"class needs {d - n} coefficients")
    values = tuple(cls.coeffs) + (cls.twist,)
    rows = []
    for r in gc.cone.inequalities:
        head = r.normal[: n + 1]
        const = sum(a * b for a, b in zip(r.normal[n + 1:], values))
        rows.append(LinearInequality.of(head, const))
    body = HPolyhedron(n + 1, tuple(rows))
    verts = dd_vertices(body) if (with_vertices or with_volume) else None
    vol = volume(verts) if with_volume else None
    return OkounkovBody(cls, body, verts, vol)


def vol_of_class(gc: GlobalCone, cls: DivisorClass) -> Fraction:
    """Algebraic volume of the class: (n+1)! times the body's Euclidean
    volume."""
    ob = fiber_body(gc, cls, with_volume=True)
    return factorial(gc.ctx.n + 1) * ob.vol


def is_big(gc: GlobalCone, cls: DivisorClass) -> bool:
    return dd_vertices(fiber_body(gc, cls).body).dim == gc.ctx.n + 1


@dataclass(frozen=True)
class CheckReport:
    """Cross-check of a fiber against the section oracle: valuation vectors
    must lie in the body, their number must equal h0, and on the level-c
    sublattice (full lattice when c = 1, applicable when c divides the class)
    they must exhaust the body's lattice points."""

    containment: bool
    cardinality: bool
    level_c: bool | None
    h0: int
    valuation_count: int
    lattice_count: int
    outside: tuple[tuple[int, ...], ...]
    missing: tuple[tuple[int, ...], ...]

    @property
    def ok(self) -> bool:
        return self.containment and self.cardinality and self.level_c is not False


def check_against_oracle(gc: GlobalCone, cls: DivisorClass, valuations,
                         h0_value: int) -> CheckReport:
    from .geometry import contains

    body = fiber_body(gc, cls).body
    outside = tuple(v for v in valuations if not contains(body, v))
    pts = lattice_points(body)
    c = gc.ctx.c
    level_c = None
    missing: tuple = ()
    if all(v % c == 0 for v in cls.coeffs) and cls.twist % c == 0:
        val_sub = {v for v in valuations if all(x % c == 0 for x in v)}
        pts_sub = {p for p in pts if all(x % c == 0 for x in p)}
        missing = tuple(sorted(pts_sub - val_sub)) + tuple(sorted(val_sub - pts_sub))
        level_c = not missing
    return CheckReport(
        containment=not outside,
        cardinality=len(valuations) == h0_value,
        level_c=level_c,
        h0=h0_value,
        valuation_count=len(valuations),
        lattice_count=len(pts),
        outside=outside,
        missing=missing,
    )


def split_model_body(f: Fan, basis: FlagBasis, h1_values, h2_values,
                     cls: DivisorClass) -> HPolyhedron:
    """Toric-geometry polytope of the projectivization of a split bundle.

    ``h1_values``/``h2_values`` are the support-function values of the two
    line-bundle summands on the rays, in the fan's input order (so the summand
    with coefficients c_j has values -c_j).  Used purely as a cross-check
    against :func:`fiber_body`; the two descriptions must agree.
    """
    n, d = f.dim, f.n_rays
    hv1 = [h1_values[i] for i in basis.ray_order]
    hv2 = [h2_values[i] for i in basis.ray_order]
    u1 = tuple(-v for v in hv1[:n])
    u2 = tuple(-v for v in hv2[:n])
    if u2 > u1:
        hv1, hv2, u1, u2 = hv2, hv1, u2, u1
    pair = flag_pairings(f, basis)
    m = cls.twist
    values = (0,) * n + tuple(cls.coeffs)
    rows = []
    e = [0] * (n + 1)
    e[n] = 1
    rows.append(LinearInequality.of(e, 0))
    e = [0] * (n + 1)
    e[n] = -1
    rows.append(LinearInequality.of(e, m))
    for j in range(d):
        du = sum((a - b) * p for a, b, p in zip(u2, u1, pair[j]))
        p2 = sum(a * p for a, p in zip(u2, pair[j]))
        row = list(pair[j]) + [hv2[j] - hv1[j] + du]
        const = -m * hv2[j] - m * p2 + values[j]
        rows.append(LinearInequality.of(row, const))
    return HPolyhedron(n + 1, tuple(rows))


def prune_cone(gc: GlobalCone, probe: DivisorClass) -> GlobalCone:
    """Optional greedy redundancy pass: drop any admissible row whose removal
    leaves the fiber at the probe class unchanged.  The fixed row count of
    :func:`global_cone` no longer applies to the result."""
    from .geometry import UnboundedInput, poly_equal

    keep_rows = list(gc.cone.inequalities)
    keep_tags = list(gc.provenance)
    reference = fiber_body(gc, probe).body
    i = 2  # never drop the two bound rows
    while i < len(keep_rows):
        trial = GlobalCone(
            gc.ctx,
            HPolyhedron(gc.cone.dim, tuple(keep_rows[:i] + keep_rows[i + 1:])),
            tuple(keep_tags[:i] + keep_tags[i + 1:]))
        try:
            same = poly_equal(fiber_body(trial, probe).body, reference)
        except UnboundedInput:
            same = False  # dropping the row unbounded the slice
        if same:
            keep_rows.pop(i)
            keep_tags.pop(i)
        else:
            i += 1
    return GlobalCone(gc.ctx, HPolyhedron(gc.cone.dim, tuple(keep_rows)),
                      tuple(keep_tags))
