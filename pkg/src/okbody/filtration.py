"""Rank-two per-ray filtration data and the derived flag context.

Each ray of the fan carries a decreasing two-step filtration of the plane
fiber: full up to level ``a``, then (optionally) a one-dimensional jump line up
to level ``b > a``, then zero.  A maximal cone is compatible when its rays see
at most two distinct jump lines, which is exactly the condition for the data to
come from an equivariant bundle.  From compatible data and a flag choice we
derive the pair of trivializing characters u1 >= u2 (lexicographically over the
flag pairings), the distinguished line E1, the ray classification A / B / C_h,
and the level lcm c.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from .fan import Fan, FlagBasis, flag_pairings


class IncompatibleData(Exception):
    pass


def ceildiv(a: int, b: int) -> int:
    """ceil(a/b) for b > 0, exact for negative numerators."""
    return -((-a) // b)


@dataclass(frozen=True, order=True)
class ProjLine:
    """A line in the plane fiber: primitive, first nonzero entry positive."""

    rep: tuple[int, int]

    @classmethod
    def of(cls, x: int, y: int) -> ProjLine:
        if x == 0 and y == 0:
            raise ValueError("zero vector does not span a line")
        g = gcd(abs(x), abs(y))
        x, y = x // g, y // g
        if x < 0 or (x == 0 and y < 0):
            x, y = -x, -y
        return cls((x, y))

    def transform(self, g) -> ProjLine:
        """Image under an invertible integer 2x2 matrix (rows of g)."""
        x, y = self.rep
        return ProjLine.of(g[0][0] * x + g[0][1] * y, g[1][0] * x + g[1][1] * y)


@dataclass(frozen=True)
class Jump:
    b: int
    line: ProjLine


@dataclass(frozen=True)
class RayFiltration:
    """Full fiber up to level ``a``; ``jump.line`` between a and jump.b; zero
    beyond.  No jump means the filtration drops straight to zero."""

    a: int
    jump: Jump | None = None

    def __post_init__(self):
        if self.jump is not None and self.jump.b < self.a + 1:
            raise ValueError(f"jump level {self.jump.b} must exceed a = {self.a}")


@dataclass(frozen=True)
class Bundle2:
    """One RayFiltration per fan ray, in the fan's input order."""

    filtrations: tuple[RayFiltration, ...]


def filtration_dim(e: Bundle2, ray: int, level: int) -> int:
    fr = e.filtrations[ray]
    if level <= fr.a:
        return 2
    if fr.jump is not None and level <= fr.jump.b:
        return 1
    return 0


def filtration_line(e: Bundle2, ray: int, level: int) -> ProjLine | None:
    fr = e.filtrations[ray]
    if fr.jump is not None and fr.a < level <= fr.jump.b:
        return fr.jump.line
    return None


@dataclass(frozen=True)
class CompatibilityReport:
    ok: bool
    failures: tuple[str, ...]


def check_compatibility(f: Fan, e: Bundle2) -> CompatibilityReport:
    """A maximal cone passes iff its rays carry at most two distinct jump
    lines; the smooth cone basis then realizes the data by an equivariant
    splitting.  Failures name the offending cones (0-based)."""
    fails = []
    if len(e.filtrations) != f.n_rays:
        return CompatibilityReport(
            False, (f"{len(e.filtrations)} filtrations for {f.n_rays} rays",))
    for ci, cone in enumerate(f.max_cones):
        lines = []
        for j in cone:
            fr = e.filtrations[j]
            if fr.jump is not None and fr.jump.line not in lines:
                lines.append(fr.jump.line)
        if len(lines) > 2:
            fails.append(
                f"maximal cone {ci} (rays {cone}) sees {len(lines)} distinct "
                f"jump lines {[l.rep for l in lines]}")
    return CompatibilityReport(not fails, tuple(fails))


@dataclass(frozen=True)
class FlagContext:
    """Everything the cone construction and the section oracle need, with rays
    indexed in flag order (0-based)."""

    n: int
    d: int
    basis: FlagBasis
    pairings: tuple[tuple[int, ...], ...]
    u1: tuple[int, ...]
    u2: tuple[int, ...]
    e1: ProjLine
    lines: tuple[ProjLine, ...]
    a: tuple[int, ...]
    b: tuple[int, ...]
    jumps: tuple[ProjLine | None, ...]
    A: tuple[int, ...]
    B: tuple[int, ...]
    Cs: tuple[tuple[int, ...], ...]
    ray_class: tuple[int, ...]  # -1 for A, 0 for B, h >= 1 for C_h
    c: int

    def pairing(self, u, j: int) -> int:
        """<u, v_j> for u in dual-basis coordinates and flag ray j."""
        return sum(x * y for x, y in zip(u, self.pairings[j]))


def derive_context(f: Fan, basis: FlagBasis, e: Bundle2,
                   e1_fallback: ProjLine = ProjLine.of(1, 0)) -> FlagContext:
    """Derive the flag context from compatible filtration data.

    Over the flag cone the two trivializing characters pair to b on the rays
    whose jump line they carry and to a elsewhere; u1 is the lexicographically
    larger one and E1 its line.  When no flag ray jumps, u1 = u2 and E1 falls
    back to the fixed convention line (the classification then absorbs it into
    B if some other ray happens to jump along it).
    """
    compat = check_compatibility(f, e)
    if not compat.ok:
        raise IncompatibleData("; ".join(compat.failures))
    n, d = f.dim, f.n_rays
    filt = [e.filtrations[i] for i in basis.ray_order]
    a = tuple(fr.a for fr in filt)
    b = tuple(fr.jump.b if fr.jump is not None else fr.a + 1 for fr in filt)
    jumps = tuple(fr.jump.line if fr.jump is not None else None for fr in filt)

    tau_lines: list[ProjLine] = []
    for j in range(n):
        if jumps[j] is not None and jumps[j] not in tau_lines:
            tau_lines.append(jumps[j])

    def char_for(line):
        return tuple(b[j] if jumps[j] == line else a[j] for j in range(n))

    if not tau_lines:
        u1 = u2 = tuple(a[:n])
        e1 = e1_fallback
    elif len(tau_lines) == 1:
        u1, u2, e1 = char_for(tau_lines[0]), tuple(a[:n]), tau_lines[0]
    else:
        cand = [(char_for(line), line) for line in tau_lines]
        cand.sort(key=lambda t: t[0], reverse=True)
        (u1, e1), (u2, _) = cand[0], cand[1]

    others: list[ProjLine] = []
    for j in range(d):
        if jumps[j] is not None and jumps[j] != e1 and jumps[j] not in others:
            others.append(jumps[j])
    A = tuple(j for j in range(d) if jumps[j] is None)
    B = tuple(j for j in range(d) if jumps[j] == e1)
    Cs = tuple(tuple(j for j in range(d) if jumps[j] == line) for line in others)
    ray_class = []
    for j in range(d):
        if jumps[j] is None:
            ray_class.append(-1)
        elif jumps[j] == e1:
            ray_class.append(0)
        else:
            ray_class.append(1 + others.index(jumps[j]))
    c = 1
    for j in range(d):
        c = lcm(c, b[j] - a[j])
    return FlagContext(n, d, basis, flag_pairings(f, basis), u1, u2, e1,
                       tuple(others), a, b, jumps, A, B, Cs,
                       tuple(ray_class), c)


@dataclass(frozen=True)
class Requirement:
    """Outcome of pushing a character through one ray's symmetric-power
    filtration: ok means the filtration is nonzero there, mult is the forced
    multiplicity of the ray's jump line."""

    ok: bool
    mult: int


def sym_twist_requirement(ctx: FlagContext, j: int, m: int, m_j: int,
                          pairing: int) -> Requirement:
    """Per-ray condition for the twisted symmetric power at a character whose
    pairing with flag ray j is given.  T <= 0 always passes; a jump ray demands
    multiplicity ceil(T / (b_j - a_j)) of its line, failing past level b_j."""
    t = pairing - ctx.a[j] * m - m_j
    if ctx.ray_class[j] == -1:
        return Requirement(t <= 0, 0)
    r = max(0, ceildiv(t, ctx.b[j] - ctx.a[j]))
    return Requirement(r <= m, r)
