"""F-triangle, M-triangle and the identity relating them.

The M-triangle is stored as ``M(x, y) = sum mu(a, b) x^rk(b) y^rk(a)``; its
substitution ``M(-x, -y/x)`` then equals
``sum mu(a, b) (-x)^(rk b - rk a) y^(rk a)``, a polynomial.  The variant
with exponent ``x^(rk b - rk a)`` is exported as :func:`m_triangle_relative`.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cluster import ComplexSummary, cluster_complex, enumerate_faces, link_h_polynomial
from .noncrossing import GradedPoset, build_ncm
from .poly import BiPoly
from .roots import RootSystem, catalan_number, check_m


class DegreeOverflowError(ValueError):
    pass


def f_triangle(summary: ComplexSummary) -> BiPoly:
    return BiPoly({(k, l): c for (k, l), c in summary.f.items()})


def _pairs(poset: GradedPoset):
    for a in range(len(poset)):
        for b, mu in poset.mobius_row(a).items():
            yield a, b, mu


def m_triangle(poset: GradedPoset) -> BiPoly:
    out: dict = {}
    for a, b, mu in _pairs(poset):
        key = (poset.rank[b], poset.rank[a])
        out[key] = out.get(key, 0) + mu
    return BiPoly(out)


def m_triangle_relative(poset: GradedPoset) -> BiPoly:
    """sum mu(a, b) x^(rk b - rk a) y^(rk a)."""
    out: dict = {}
    for a, b, mu in _pairs(poset):
        key = (poset.rank[b] - poset.rank[a], poset.rank[a])
        out[key] = out.get(key, 0) + mu
    return BiPoly(out)


def lhs_transform(F: BiPoly, n: int) -> BiPoly:
    """(1 - y)^n F((x + y)/(1 - y), y/(1 - y)) = sum f_kl (x + y)^k y^l (1 - y)^(n - k - l)."""
    x, y = BiPoly.x(), BiPoly.y()
    out = BiPoly()
    for (k, l), c in F.coeffs.items():
        if k + l > n:
            raise DegreeOverflowError(f"f[{k},{l}] = {c} is nonzero but k + l > {n}")
        out = out + c * (x + y) ** k * y ** l * (1 - y) ** (n - k - l)
    return out


def rhs_transform(poset: GradedPoset) -> BiPoly:
    """M(-x, -y/x) = sum mu(a, b) (-1)^(rk b - rk a) x^(rk b - rk a) y^(rk a)."""
    out: dict = {}
    for a, b, mu in _pairs(poset):
        d = poset.rank[b] - poset.rank[a]
        key = (d, poset.rank[a])
        out[key] = out.get(key, 0) + (-1) ** d * mu
    return BiPoly(out)


def substitute_m_triangle(M: BiPoly) -> BiPoly:
    """Evaluate a stored M-triangle at (-x, -y/x); requires xdeg >= ydeg in every term."""
    out: dict = {}
    for (i, j), c in M.coeffs.items():
        if i < j:
            raise ValueError("substitution leaves a negative power of x")
        out[(i - j, j)] = out.get((i - j, j), 0) + (-1) ** (i + j) * c
    return BiPoly(out)


def h_polynomial(summary: ComplexSummary, n: int | None = None) -> BiPoly:
    n = summary.n if n is None else n
    y = BiPoly.y()
    out = BiPoly()
    for i, fi in enumerate(summary.f_vector()):
        out = out + fi * y ** i * (1 - y) ** (n - i)
    return out


def rank_generating_polynomial(poset: GradedPoset) -> BiPoly:
    return BiPoly.from_univariate_y(poset.rank_counts())


def positive_face_link_sum(rs: RootSystem, m: int) -> BiPoly:
    """sum over positive faces sigma of x^|sigma| h(lk sigma, y)."""
    x = BiPoly.x()
    out = BiPoly()
    for face in cluster_complex(rs, m).faces(positive_only=True):
        out = out + x ** len(face) * link_h_polynomial(rs, m, face)
    return out


@dataclass
class FMReport:
    system: str
    m: int
    holds: bool
    F: BiPoly
    M: BiPoly
    lhs: BiPoly
    rhs: BiPoly

    def to_json(self) -> dict:
        return {
            "system": self.system, "m": self.m, "holds": self.holds,
            "F": self.F.to_json(), "M": self.M.to_json(),
            "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json(),
        }


def verify_fm(rs: RootSystem, m: int) -> FMReport:
    check_m(m)
    F = f_triangle(enumerate_faces(rs, m))
    poset = build_ncm(rs, m)
    lhs = lhs_transform(F, rs.n)
    rhs = rhs_transform(poset)
    return FMReport(rs.name, m, lhs == rhs, F, m_triangle(poset), lhs, rhs)


__all__ = [
    "DegreeOverflowError", "FMReport", "catalan_number", "positive_face_link_sum", "f_triangle",
    "h_polynomial", "lhs_transform", "m_triangle", "m_triangle_relative",
    "rank_generating_polynomial", "rhs_transform", "substitute_m_triangle", "verify_fm",
]
