"""Figure and CSV rendering for computed bodies.

Bodies of affine dimension up to 3 are drawn with matplotlib and saved to
files; coordinates are converted to floats only at the drawing boundary, the
exact data stays in the JSON/CSV outputs.
"""

from __future__ import annotations

import csv
from fractions import Fraction
from functools import cmp_to_key

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .geometry import _supporting_hyperplanes, affine_dim  # noqa: E402


def _cyclic_order(coords):
    """Indices of coplanar 2-d coordinates ordered counterclockwise around
    their centroid, by exact sign comparisons."""
    k = len(coords)
    cx = sum(p[0] for p in coords) / k
    cy = sum(p[1] for p in coords) / k
    rel = [(p[0] - cx, p[1] - cy) for p in coords]

    def half(p):
        return 0 if p[1] > 0 or (p[1] == 0 and p[0] > 0) else 1

    def cmp(i, j):
        a, b = rel[i], rel[j]
        if half(a) != half(b):
            return -1 if half(a) < half(b) else 1
        cross = a[0] * b[1] - a[1] * b[0]
        return 0 if cross == 0 else (-1 if cross > 0 else 1)

    return sorted(range(k), key=cmp_to_key(cmp))


def _cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def facet_polygons(points):
    """Faces of a full-dimensional 3-polytope as cyclically ordered vertex
    index lists (input: the exact extreme points)."""
    faces = []
    for facet in _supporting_hyperplanes(points):
        pts = [points[i] for i in facet]
        base = pts[0]
        normal = None
        for p in pts[1:]:
            for q in pts[1:]:
                cand = _cross3(tuple(a - b for a, b in zip(p, base)),
                               tuple(a - b for a, b in zip(q, base)))
                if any(cand):
                    normal = cand
                    break
            if normal:
                break
        axis = max(range(3), key=lambda i: abs(normal[i]))
        flat = [tuple(x for i, x in enumerate(p) if i != axis) for p in pts]
        order = _cyclic_order(flat)
        faces.append([facet[i] for i in order])
    return faces


def render_body(vertices, path, title=""):
    """Draw a body from its exact vertices and save the figure; returns False
    when there is nothing drawable (empty or ambient dimension above 3)."""
    pts = [tuple(Fraction(x) for x in v) for v in vertices]
    if not pts or len(pts[0]) > 3:
        return False
    dim = len(pts[0])
    fig = plt.figure(figsize=(5, 5))
    if dim == 3 and affine_dim(pts) == 3:
        from mpl_toolkits.mplot3d.art3d import Poly3DCollection

        ax = fig.add_subplot(projection="3d")
        polys = [[tuple(float(x) for x in pts[i]) for i in face]
                 for face in facet_polygons(pts)]
        ax.add_collection3d(Poly3DCollection(
            polys, alpha=0.35, facecolor="tab:blue", edgecolor="k"))
        xs, ys, zs = zip(*[tuple(float(x) for x in p) for p in pts])
        ax.scatter(xs, ys, zs, color="k", s=12)
        ax.set_xlabel("x1")
        ax.set_ylabel("x2")
        ax.set_zlabel("x3")
    else:
        ax = fig.add_subplot()
        flat = pts
        if dim == 3:  # degenerate body: drop a constant coordinate
            for axis in range(3):
                if len({p[axis] for p in pts}) == 1:
                    flat = [tuple(x for i, x in enumerate(p) if i != axis)
                            for p in pts]
                    break
            else:
                flat = [p[:2] for p in pts]
        if len(flat[0]) == 1:
            flat = [(p[0], Fraction(0)) for p in flat]
        fpts = [(float(a), float(b)) for a, b in flat]
        if len(fpts) >= 3:
            order = _cyclic_order(flat)
            poly = [fpts[i] for i in order]
            ax.fill(*zip(*poly), alpha=0.35, facecolor="tab:blue",
                    edgecolor="k")
        elif len(fpts) == 2:
            ax.plot(*zip(*fpts), "k-", lw=2)
        ax.plot(*zip(*fpts), "ko", ms=4)
        ax.set_xlabel("x1")
        ax.set_ylabel("x2")
        ax.set_aspect("equal")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return True


SUMMARY_FIELDS = ("index", "coeffs", "twist", "h0", "valuations", "volume",
                  "vol_class", "is_big", "checks_ok", "figure")


def write_summary_csv(path, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=SUMMARY_FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
