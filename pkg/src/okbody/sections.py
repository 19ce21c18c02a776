"""Brute-force section oracle.

Global sections of O(m) twisted by a base divisor decompose into character
summands; each summand's dimension follows from the forced multiplicities of
the distinguished lines in the twisted symmetric-power filtrations, and each
summand of dimension delta contributes delta distinct vanishing-order vectors.
This module enumerates all of that directly, with no use of the cone
construction, so its output can cross-check the polyhedral route.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fan import DivisorClass
from .filtration import FlagContext, sym_twist_requirement
from .geometry import HPolyhedron, LinearInequality, bounding_box, lattice_points


class UnboundedSupport(Exception):
    pass


@dataclass(frozen=True)
class IsotypicalSummand:
    """Character u with the forced multiplicity profile (alpha0 on the
    distinguished line, alphas on the remaining jump lines) and the resulting
    dimension max(0, m + 1 - alpha0 - sum(alphas)), zero on any failure."""

    u: tuple[int, ...]
    alpha0: int
    alphas: tuple[int, ...]
    dim: int


def _ray_values(ctx: FlagContext, cls: DivisorClass) -> tuple[int, ...]:
    if len(cls.coeffs) != ctx.d - ctx.n:
        raise ValueError(
            f"class has {len(cls.coeffs)} coefficients, expected {ctx.d - ctx.n}")
    return (0,) * ctx.n + tuple(cls.coeffs)


def support_polytope(ctx: FlagContext, cls: DivisorClass) -> HPolyhedron:
    """Characters u with <u, v_j> <= b_j*m + m_j on every ray, in dual-basis
    coordinates.  Finite for complete fans; everything outside is killed by
    the per-ray requirements anyway."""
    m = cls.twist
    vals = _ray_values(ctx, cls)
    rows = [
        LinearInequality.of(tuple(-x for x in ctx.pairings[j]),
                            ctx.b[j] * m + vals[j])
        for j in range(ctx.d)
    ]
    return HPolyhedron(ctx.n, tuple(rows))


def isotypical_support(ctx: FlagContext, cls: DivisorClass) -> list[tuple[int, ...]]:
    p = support_polytope(ctx, cls)
    box = bounding_box(p)
    if not box.feasible:
        return []
    if not box.bounded:
        raise UnboundedSupport("ray pairings do not bound the character support")
    return lattice_points(p)


def isotypical_dim(ctx: FlagContext, cls: DivisorClass, u) -> IsotypicalSummand:
    m = cls.twist
    vals = _ray_values(ctx, cls)
    alpha0 = 0
    alphas = [0] * len(ctx.Cs)
    ok = True
    for j in range(ctx.d):
        req = sym_twist_requirement(ctx, j, m, vals[j], ctx.pairing(u, j))
        if not req.ok:
            ok = False
        h = ctx.ray_class[j]
        if h == 0:
            alpha0 = max(alpha0, req.mult)
        elif h > 0:
            alphas[h - 1] = max(alphas[h - 1], req.mult)
    dim = max(0, m + 1 - alpha0 - sum(alphas)) if ok else 0
    return IsotypicalSummand(tuple(u), alpha0, tuple(alphas), dim)


def summands(ctx: FlagContext, cls: DivisorClass) -> list[IsotypicalSummand]:
    """All isotypical summands of positive dimension."""
    if cls.twist < 0:
        return []
    out = []
    for u in isotypical_support(ctx, cls):
        s = isotypical_dim(ctx, cls, u)
        if s.dim > 0:
            out.append(s)
    return out


def h0(ctx: FlagContext, cls: DivisorClass) -> int:
    return sum(s.dim for s in summands(ctx, cls))


def valuation_set(ctx: FlagContext, cls: DivisorClass) -> tuple[tuple[int, ...], ...]:
    """All vanishing-order vectors of nonzero sections, sorted.

    A summand at u of dimension delta yields the vectors with last coordinate
    alpha0 + t for t < delta and the first n coordinates paired from
    x_last*u1 + (m - x_last)*u2 - u.  Their number always equals h0.
    """
    m = cls.twist
    out = set()
    for s in summands(ctx, cls):
        for t in range(s.dim):
            x_last = s.alpha0 + t
            head = tuple(
                x_last * a + (m - x_last) * b - uu
                for a, b, uu in zip(ctx.u1, ctx.u2, s.u))
            out.add(head + (x_last,))
    return tuple(sorted(out))
