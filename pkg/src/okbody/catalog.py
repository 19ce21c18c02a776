"""Built-in example data sets, emitted in the problem-file JSON schema."""

from __future__ import annotations


def _split_filtrations(values1, values2):
    """Filtration rows of a direct sum of two line bundles with the given
    per-ray divisor coefficients; the first summand's fiber is the line
    (1, 0), the second's (0, 1)."""
    rows = []
    for c1, c2 in zip(values1, values2):
        if c1 == c2:
            rows.append({"a": c1})
        elif c1 > c2:
            rows.append({"a": c2, "jump": {"b": c1, "line": [1, 0]}})
        else:
            rows.append({"a": c1, "jump": {"b": c2, "line": [0, 1]}})
    return rows


def tangent_p2() -> dict:
    """Tangent bundle of the projective plane: every ray jumps at level 1
    along its own span."""
    return {
        "fan": {
            "dim": 2,
            "rays": [[1, 0], [0, 1], [-1, -1]],
            "max_cones": [[1, 2], [2, 0], [0, 1]],
        },
        "bundle": {
            "filtrations": [
                {"a": 0, "jump": {"b": 1, "line": [1, 0]}},
                {"a": 0, "jump": {"b": 1, "line": [0, 1]}},
                {"a": 0, "jump": {"b": 1, "line": [1, 1]}},
            ],
        },
        "classes": [{"coeffs": [0], "twist": 1}],
    }


def split_p1(a: int, b: int) -> dict:
    """O(a) + O(b) on the projective line, both supported on the second ray."""
    return {
        "fan": {"dim": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]]},
        "bundle": {"filtrations": _split_filtrations([0, a], [0, b])},
        "classes": [{"coeffs": [1], "twist": 1}],
    }


def hirzebruch(e: int) -> dict:
    """O + O(-e points) on the projective line; its projectivization is the
    degree-e Hirzebruch surface."""
    data = split_p1(0, -e)
    data["classes"] = [{"coeffs": [e], "twist": 1}]
    return data


def pn_sum(n: int) -> dict:
    """O + O(1) on n-dimensional projective space: a single jump on the last
    ray."""
    if n < 1:
        raise ValueError("dimension must be positive")
    rays = [[int(i == j) for i in range(n)] for j in range(n)]
    rays.append([-1] * n)
    cones = []
    for skip in range(n + 1):
        cones.append([j for j in range(n + 1) if j != skip])
    filts = [{"a": 0} for _ in range(n)]
    filts.append({"a": 0, "jump": {"b": 1, "line": [0, 1]}})
    return {
        "fan": {"dim": n, "rays": rays, "max_cones": cones},
        "bundle": {"filtrations": filts},
        "classes": [{"coeffs": [0], "twist": 1}],
    }


NAMES = ("tangent-p2", "split-p1", "hirzebruch", "pn-sum")


def build(name: str, args: list[int]) -> dict:
    if name == "tangent-p2":
        if args:
            raise ValueError("tangent-p2 takes no arguments")
        return tangent_p2()
    if name == "split-p1":
        if len(args) != 2:
            raise ValueError("split-p1 takes two integers: a b")
        return split_p1(*args)
    if name == "hirzebruch":
        if len(args) != 1:
            raise ValueError("hirzebruch takes one integer: e")
        return hirzebruch(*args)
    if name == "pn-sum":
        if len(args) != 1:
            raise ValueError("pn-sum takes one integer: n")
        return pn_sum(*args)
    raise KeyError(name)
