"""Problem-file parsing and deterministic result-file assembly.

Rationals are serialized as "p/q" strings (plain "p" for integers) so output
files carry no precision ambiguity.  Ray indices in files are 0-based and
refer to flag order; payloads echo the ray permutation so nothing can be
misattributed.  Re-running on the same input yields byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .cone import GlobalCone, check_against_oracle, fiber_body
from .fan import DivisorClass, Fan
from .filtration import Bundle2, FlagContext, Jump, ProjLine, RayFiltration
from .geometry import lattice_points
from .sections import h0, valuation_set


class ProblemFormatError(Exception):
    pass


@dataclass
class Problem:
    fan: Fan
    bundle: Bundle2
    tau: int | None
    classes: list[DivisorClass]
    warnings: list[str]


def _require(cond, msg):
    if not cond:
        raise ProblemFormatError(msg)


def problem_from_dict(data) -> Problem:
    _require(isinstance(data, dict), "top level must be an object")
    _require("fan" in data, "missing 'fan'")
    _require("bundle" in data, "missing 'bundle'")
    fd = data["fan"]
    for key in ("dim", "rays", "max_cones"):
        _require(key in fd, f"fan is missing '{key}'")
    dim = fd["dim"]
    _require(isinstance(dim, int) and dim >= 1, "fan.dim must be a positive integer")
    rays = fd["rays"]
    _require(isinstance(rays, list) and rays, "fan.rays must be a nonempty array")
    for i, v in enumerate(rays):
        _require(isinstance(v, list) and len(v) == dim
                 and all(isinstance(x, int) for x in v),
                 f"fan.rays[{i}] must be {dim} integers")
    cones = fd["max_cones"]
    _require(isinstance(cones, list) and cones, "fan.max_cones must be a nonempty array")
    for i, c in enumerate(cones):
        _require(isinstance(c, list) and len(c) == dim
                 and all(isinstance(j, int) and 0 <= j < len(rays) for j in c),
                 f"fan.max_cones[{i}] must be {dim} valid 0-based ray indices")
    fan = Fan(dim, tuple(tuple(v) for v in rays), tuple(tuple(c) for c in cones))

    filts = data["bundle"].get("filtrations")
    _require(isinstance(filts, list) and len(filts) == len(rays),
             f"bundle.filtrations must list {len(rays)} entries, one per ray")
    warnings = []
    rows = []
    for i, fr in enumerate(filts):
        _require(isinstance(fr, dict) and isinstance(fr.get("a"), int),
                 f"filtrations[{i}].a must be an integer")
        jump = None
        if fr.get("jump") is not None:
            j = fr["jump"]
            _require(isinstance(j, dict) and isinstance(j.get("b"), int),
                     f"filtrations[{i}].jump.b must be an integer")
            _require(j["b"] > fr["a"],
                     f"filtrations[{i}].jump.b must exceed a")
            line = j.get("line")
            _require(isinstance(line, list) and len(line) == 2
                     and all(isinstance(x, int) for x in line)
                     and any(line),
                     f"filtrations[{i}].jump.line must be two integers, not both zero")
            x, y = line
            norm = ProjLine.of(x, y)
            if norm.rep != (x, y):
                warnings.append(
                    f"filtrations[{i}].jump.line {line} normalized to {list(norm.rep)}")
            jump = Jump(j["b"], norm)
        rows.append(RayFiltration(fr["a"], jump))
    bundle = Bundle2(tuple(rows))

    tau = None
    if data.get("flag") is not None:
        _require(isinstance(data["flag"], dict), "'flag' must be an object")
        tau = data["flag"].get("tau")
        _require(tau is None or (isinstance(tau, int) and 0 <= tau < len(cones)),
                 "flag.tau must be a valid 0-based maximal-cone index")

    classes = []
    for i, c in enumerate(data.get("classes") or []):
        _require(isinstance(c, dict) and isinstance(c.get("twist"), int),
                 f"classes[{i}].twist must be an integer")
        coeffs = c.get("coeffs")
        _require(isinstance(coeffs, list) and len(coeffs) == len(rays) - dim
                 and all(isinstance(x, int) for x in coeffs),
                 f"classes[{i}].coeffs must be {len(rays) - dim} integers "
                 "(rays after the flag cone, in flag order)")
        classes.append(DivisorClass(tuple(coeffs), c["twist"]))
    return Problem(fan, bundle, tau, classes, warnings)


def load_problem(path) -> Problem:
    with open(path) as fh:
        data = json.load(fh)
    return problem_from_dict(data)


def parse_class_spec(text: str, ncoeffs: int) -> DivisorClass:
    """Parse the command-line class syntax "m_{n+1},...,m_d;w"."""
    parts = text.split(";")
    if len(parts) != 2:
        raise ProblemFormatError(f"class spec {text!r} needs exactly one ';'")
    head = parts[0].strip()
    try:
        coeffs = tuple(int(t) for t in head.split(",")) if head else ()
        twist = int(parts[1])
    except ValueError as exc:
        raise ProblemFormatError(f"class spec {text!r}: {exc}") from None
    if len(coeffs) != ncoeffs:
        raise ProblemFormatError(
            f"class spec {text!r} has {len(coeffs)} coefficients, expected {ncoeffs}")
    return DivisorClass(coeffs, twist)


def rat_str(x) -> str:
    return str(Fraction(x))


def class_payload(cls: DivisorClass) -> dict:
    return {"coeffs": list(cls.coeffs), "twist": cls.twist}


def context_payload(ctx: FlagContext) -> dict:
    return {
        "tau": ctx.basis.tau,
        "ray_order": list(ctx.basis.ray_order),
        "dual": [list(r) for r in ctx.basis.dual],
        "u1": list(ctx.u1),
        "u2": list(ctx.u2),
        "E1": list(ctx.e1.rep),
        "Ls": [list(line.rep) for line in ctx.lines],
        "A": list(ctx.A),
        "B": list(ctx.B),
        "C": [list(c) for c in ctx.Cs],
        "a": list(ctx.a),
        "b": list(ctx.b),
        "c": ctx.c,
    }


def coord_names(n: int, d: int) -> list[str]:
    return ([f"x{i + 1}" for i in range(n + 1)]
            + [f"w{j + 1}" for j in range(n, d)] + ["w"])


def cone_payload(gc: GlobalCone) -> dict:
    return {
        "coords": coord_names(gc.ctx.n, gc.ctx.d),
        "inequalities": [list(r.normal) for r in gc.cone.inequalities],
        "provenance": list(gc.provenance),
    }


def body_payload(gc: GlobalCone, ctx: FlagContext, cls: DivisorClass,
                 with_vertices=False, with_volume=False, with_lattice=False,
                 with_check=False, with_sections=False) -> dict:
    ob = fiber_body(gc, cls, with_vertices=with_vertices or with_volume,
                    with_volume=with_volume)
    out = {
        "class": class_payload(cls),
        "inequalities": [list(r.normal) + [r.constant]
                         for r in ob.body.inequalities],
    }
    if with_vertices or with_volume:
        out["vertices"] = [[rat_str(x) for x in v] for v in ob.verts.vertices]
        out["dim"] = ob.verts.dim
        out["is_big"] = ob.verts.dim == ctx.n + 1
    if with_volume:
        nfac = 1
        for k in range(2, ctx.n + 2):
            nfac *= k
        out["volume"] = rat_str(ob.vol)
        out["vol_class"] = rat_str(nfac * ob.vol)
    if with_lattice:
        out["lattice_points"] = [list(p) for p in lattice_points(ob.body)]
    if with_sections or with_check:
        vs = valuation_set(ctx, cls) if cls.twist >= 0 else ()
        out["h0"] = h0(ctx, cls) if cls.twist >= 0 else 0
        out["valuations"] = [list(v) for v in vs]
    if with_check:
        rep = check_against_oracle(gc, cls, vs, out["h0"])
        out["checks"] = {
            "containment": rep.containment,
            "cardinality": rep.cardinality,
            "level_c_equality": rep.level_c,
            "ok": rep.ok,
        }
        if rep.outside:
            out["checks"]["outside_witnesses"] = [list(v) for v in rep.outside]
        if rep.missing:
            out["checks"]["mismatch_witnesses"] = [list(v) for v in rep.missing]
    return out


def dumps(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def off_text(verts) -> str | None:
    """OFF export of a 3-dimensional body for external viewers (approximate
    decimal coordinates; the exact data lives in the JSON payload)."""
    from .geometry import affine_dim
    from .report import facet_polygons

    pts = [tuple(Fraction(x) for x in v) for v in verts]
    if not pts or len(pts[0]) != 3 or affine_dim(pts) != 3:
        return None
    faces = facet_polygons(pts)
    lines = ["OFF", f"{len(pts)} {len(faces)} 0"]
    for p in pts:
        lines.append(" ".join(f"{float(x):.12g}" for x in p))
    for face in faces:
        lines.append(f"{len(face)} " + " ".join(str(i) for i in face))
    return "\n".join(lines) + "\n"
