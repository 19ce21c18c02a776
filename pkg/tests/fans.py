"""Shared fan fixtures: small smooth complete fans used across the suite."""

from okbody.fan import Fan


def p1():
    return Fan(1, ((1,), (-1,)), ((0,), (1,)))


def p2():
    return Fan(2, ((1, 0), (0, 1), (-1, -1)), ((1, 2), (2, 0), (0, 1)))


def p1xp1():
    return Fan(2, ((1, 0), (0, 1), (-1, 0), (0, -1)),
               ((0, 1), (1, 2), (2, 3), (3, 0)))


def hirzebruch(e):
    # rays: e1, e2, -e1 + e*e2, -e2
    return Fan(2, ((1, 0), (0, 1), (-1, e), (0, -1)),
               ((0, 1), (1, 2), (2, 3), (3, 0)))


def hexagon():
    # del Pezzo degree 6: the smooth complete fan on the hexagon of rays
    return Fan(2, ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)),
               ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)))


def p3():
    return Fan(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)),
               ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)))


def pn(n):
    rays = tuple(tuple(int(i == j) for i in range(n)) for j in range(n))
    rays += (tuple(-1 for _ in range(n)),)
    cones = tuple(tuple(c) for c in
                  __import__("itertools").combinations(range(n + 1), n))
    return Fan(n, rays, cones)
