"""Independent reference computations used only by the tests."""
from __future__ import annotations

from collections import deque
from fractions import Fraction
from math import prod

import sympy

from gencluster import coxeter as cx
from gencluster.poly import BiPoly

# (Coxeter number, exponents) straight from the classification tables
_TABLE = {
    "E6": (12, (1, 4, 5, 7, 8, 11)),
    "E7": (18, (1, 5, 7, 9, 11, 13, 17)),
    "E8": (30, (1, 7, 11, 13, 17, 19, 23, 29)),
    "F4": (12, (1, 5, 7, 11)),
    "G2": (6, (1, 5)),
}


def invariants(family: str, n: int) -> tuple[int, tuple[int, ...]]:
    if family == "A":
        return n + 1, tuple(range(1, n + 1))
    if family in "BC":
        return 2 * n, tuple(range(1, 2 * n, 2))
    if family == "D":
        return 2 * n - 2, tuple(sorted(list(range(1, 2 * n - 2, 2)) + [n - 1]))
    return _TABLE[f"{family}{n}"]


def fuss_catalan(components: list[tuple[str, int]], m: int) -> int:
    total = Fraction(1)
    for family, n in components:
        h, exps = invariants(family, n)
        total *= Fraction(prod(e + m * h + 1 for e in exps), prod(e + 1 for e in exps))
    assert total.denominator == 1
    return int(total)


def bfs_lengths(rs) -> dict:
    """Reflection length of every group element by BFS on the Cayley graph."""
    gens = cx.reflections(rs)
    start = cx.identity(rs)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for t in gens:
            v = u * t
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def nc_by_brute_force(rs) -> set:
    """Elements below gamma, from BFS lengths over the whole group."""
    dist = bfs_lengths(rs)
    gamma = cx.coxeter_element(rs)
    return {w for w, l in dist.items() if l + dist[w.inverse() * gamma] == dist[gamma]}


X, Y = sympy.symbols("x y")


def to_sympy(p: BiPoly):
    return sum((c * X ** i * Y ** j for (i, j), c in p.coeffs.items()), sympy.Integer(0))


def from_sympy(expr) -> BiPoly:
    poly = sympy.Poly(sympy.expand(expr), X, Y)
    return BiPoly({monom: int(c) for monom, c in poly.terms()})


def lhs_by_sympy(F: BiPoly, n: int) -> BiPoly:
    """(1-y)^n F((x+y)/(1-y), y/(1-y)) via rational-function simplification."""
    expr = (1 - Y) ** n * to_sympy(F).subs({X: (X + Y) / (1 - Y), Y: Y / (1 - Y)}, simultaneous=True)
    return from_sympy(sympy.cancel(sympy.together(expr)))


def rhs_by_sympy(M: BiPoly) -> BiPoly:
    """M(-x, -y/x) for the stored M-triangle, simplified symbolically."""
    expr = to_sympy(M).subs({X: -X, Y: -Y / X}, simultaneous=True)
    return from_sympy(sympy.cancel(sympy.together(expr)))
