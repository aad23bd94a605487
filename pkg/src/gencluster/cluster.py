"""Compatibility, the generalized cluster complex and its face criterion.

Faces are frozensets of :class:`~gencluster.roots.ColoredRoot`.  The
pairwise m-compatibility graph is computed once per (system, m); faces are
its cliques.  The noncrossing criterion tests a face through a single
m-tuple of group elements instead.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import coxeter as cx
from .coxeter import GroupElement
from .noncrossing import build_ncm, is_ncm_member
from .poly import BiPoly
from .roots import ColoredRoot, RootSystem, check_m

Face = frozenset  # frozenset[ColoredRoot]


class EqualRootsError(ValueError):
    pass


class MixedPartError(ValueError):
    pass


class NotAFaceError(ValueError):
    pass


class FaceParseError(ValueError):
    pass


# --- noncolored compatibility ------------------------------------------------

def _ordered(rs: RootSystem, a: int, b: int) -> tuple[int, int]:
    return (a, b) if rs.position(a) < rs.position(b) else (b, a)


def compatible(rs: RootSystem, a: int, b: int) -> bool:
    """Compatibility of almost positive roots: for a < b, R(b) R(a) <= gamma."""
    if a == b:
        raise EqualRootsError("compatibility is defined for distinct roots")
    rs.position(a), rs.position(b)
    if rs.root_component[a] != rs.root_component[b]:
        return True
    if a == rs.neg(b):
        return False
    cache = rs._cache.setdefault("compat", {})
    key = (a, b) if a < b else (b, a)
    if key not in cache:
        lo, hi = _ordered(rs, a, b)
        gamma = cx.coxeter_element(rs)
        cache[key] = cx.absolute_leq(cx.reflection(rs, hi) * cx.reflection(rs, lo), gamma)
    return cache[key]


def compatible_by_mu(rs: RootSystem, a: int, b: int) -> bool:
    """Same relation through the inner product test mu(later) . earlier == 0."""
    if a == b:
        raise EqualRootsError("compatibility is defined for distinct roots")
    if rs.root_component[a] != rs.root_component[b]:
        return True
    if a == rs.neg(b):
        return False
    lo, hi = _ordered(rs, a, b)
    return rs.mu_pairing(rs.roots[hi], rs.roots[lo]) == 0


def compatible_by_rotation(rs: RootSystem, a: int, b: int) -> bool:
    """Same relation via R-invariance and the negative-simple base case."""
    if a == b:
        raise EqualRootsError("compatibility is defined for distinct roots")
    if rs.root_component[a] != rs.root_component[b]:
        return True
    while not (rs.is_negative_simple(a) or rs.is_negative_simple(b)):
        a, b = rs.rotate(a), rs.rotate(b)
    if rs.is_negative_simple(a) and rs.is_negative_simple(b):
        return True
    neg, other = (a, b) if rs.is_negative_simple(a) else (b, a)
    return not (rs.support(neg) & rs.support(other))


# --- m-compatibility ---------------------------------------------------------

def m_compatible(rs: RootSystem, a: ColoredRoot, b: ColoredRoot, m: int) -> bool:
    """m-compatibility by the five-case rule on colors and degrees."""
    if a == b:
        raise EqualRootsError("m-compatibility is defined for distinct colored roots")
    alpha, k, beta, l = a.root, a.color, b.root, b.color
    if k == l:
        return compatible(rs, alpha, beta)
    da, db = rs.degree(alpha), rs.degree(beta)
    if k > l:
        return compatible(rs, rs.rotate(alpha), beta) if da <= db else compatible(rs, alpha, beta)
    return compatible(rs, alpha, rs.rotate(beta)) if da >= db else compatible(rs, alpha, beta)


def m_compatible_by_rotation(rs: RootSystem, a: ColoredRoot, b: ColoredRoot, m: int) -> bool:
    """m-compatibility via R_m-invariance and the negative-simple base case."""
    if a == b:
        raise EqualRootsError("m-compatibility is defined for distinct colored roots")
    if rs.root_component[a.root] != rs.root_component[b.root]:
        return True
    while not (rs.is_negative_simple(a.root) or rs.is_negative_simple(b.root)):
        a, b = rs.rotate_colored(a, m), rs.rotate_colored(b, m)
    if rs.is_negative_simple(a.root) and rs.is_negative_simple(b.root):
        return True
    neg, other = (a, b) if rs.is_negative_simple(a.root) else (b, a)
    return not (rs.support(neg.root) & rs.support(other.root))


# --- the complex -------------------------------------------------------------

@dataclass
class ComplexSummary:
    """Face counts f[(k, l)]: k colored positive roots, l negative simples."""
    n: int
    f: dict
    facets: list | None = None

    def f_vector(self) -> list[int]:
        out = [0] * (self.n + 1)
        for (k, l), c in self.f.items():
            out[k + l] += c
        return out

    @property
    def num_facets(self) -> int:
        return self.f_vector()[self.n]

    @property
    def num_positive_facets(self) -> int:
        return self.f.get((self.n, 0), 0)


class ClusterComplex:
    """Delta^m(Phi) as the clique complex of the m-compatibility graph."""

    def __init__(self, rs: RootSystem, m: int):
        check_m(m)
        self.rs, self.m = rs, m
        self.vertices = rs.colored_roots(m)
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        nv = len(self.vertices)
        adj = [0] * nv
        for i in range(nv):
            for j in range(i + 1, nv):
                if m_compatible(rs, self.vertices[i], self.vertices[j], m):
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        self.adj = adj

    def is_face(self, face: Iterable[ColoredRoot]) -> bool:
        ids = [self.vindex[v] for v in face]
        return all((self.adj[i] >> j) & 1 for a, i in enumerate(ids) for j in ids[a + 1:])

    def _cliques(self, candidates: int, start: tuple[int, ...], limit: int) -> Iterator[tuple[int, ...]]:
        """Cliques extending ``start`` using vertices in ``candidates``, in increasing order."""
        yield start
        if len(start) == limit:
            return
        low = start[-1] + 1 if start else 0
        cand = candidates >> low << low
        while cand:
            bit = cand & -cand
            v = bit.bit_length() - 1
            cand ^= bit
            yield from self._cliques(candidates & self.adj[v], start + (v,), limit)

    def faces(self, up_to_size: int | None = None, positive_only: bool = False) -> Iterator[Face]:
        limit = self.rs.n if up_to_size is None else up_to_size
        pool = (1 << len(self.vertices)) - 1
        if positive_only:
            pool = sum(1 << i for i, v in enumerate(self.vertices) if self.rs.is_positive(v.root))
        for c in self._cliques(pool, (), limit):
            yield frozenset(self.vertices[i] for i in c)

    def summary(self, up_to_size: int | None = None, keep_facets: bool = False) -> ComplexSummary:
        n = self.rs.n
        f: dict = {}
        facets = [] if keep_facets else None
        for face in self.faces(up_to_size):
            k = sum(1 for v in face if self.rs.is_positive(v.root))
            f[(k, len(face) - k)] = f.get((k, len(face) - k), 0) + 1
            if keep_facets and len(face) == n:
                facets.append(face)
        return ComplexSummary(n, f, facets)

    def is_pure(self) -> bool:
        """Every maximal clique has n vertices."""
        n = self.rs.n
        for face in self.faces(n):
            if len(face) < n and not self._extendable(face):
                return False
        return True

    def _extendable(self, face) -> bool:
        common = (1 << len(self.vertices)) - 1
        for v in face:
            i = self.vindex[v]
            common &= self.adj[i] & ~(1 << i)
        return common != 0

    def link(self, face: Iterable[ColoredRoot]) -> list[Face]:
        face = frozenset(face)
        if not self.is_face(face):
            raise NotAFaceError(f"{sorted(face)} is not a face")
        common = (1 << len(self.vertices)) - 1
        for v in face:
            i = self.vindex[v]
            common &= self.adj[i] & ~(1 << i)
        return [frozenset(self.vertices[i] for i in c)
                for c in self._cliques(common, (), self.rs.n - len(face))]


def cluster_complex(rs: RootSystem, m: int) -> ClusterComplex:
    key = ("complex", m)
    if key not in rs._cache:
        rs._cache[key] = ClusterComplex(rs, m)
    return rs._cache[key]


def enumerate_faces(rs: RootSystem, m: int, up_to_size: int | None = None,
                    keep_facets: bool = False) -> ComplexSummary:
    return cluster_complex(rs, m).summary(up_to_size, keep_facets)


# --- the noncrossing face criterion ------------------------------------------

def w_of_part(rs: RootSystem, part: Iterable[int]) -> GroupElement:
    """Product of R(alpha) over ``part`` with factors in decreasing total order."""
    part = list(part)
    kinds = {rs.is_positive(r) for r in part}
    if len(kinds) > 1 or (False in kinds and not all(rs.is_negative_simple(r) for r in part)):
        raise MixedPartError("part must be all positive roots or all negative simple roots")
    ordered = sorted(part, key=rs.position, reverse=True)
    return cx.product(rs, (cx.reflection(rs, r) for r in ordered))


def _validate(rs: RootSystem, face: Iterable[ColoredRoot], m: int) -> None:
    for v in face:
        if not rs.is_almost_positive(v.root):
            raise NotAFaceError(f"{v} is not an almost positive root")
        if rs.is_positive(v.root) and not 1 <= v.color <= m:
            raise NotAFaceError(f"{v} has color outside 1..{m}")
        if not rs.is_positive(v.root) and v.color != 1:
            raise NotAFaceError(f"negative simple {v} must have color 1")


def criterion_tuple(rs: RootSystem, face: Iterable[ColoredRoot], m: int) -> tuple[GroupElement, ...]:
    """(w_{s+} w_{s^m}, w_{s^{m-1}}, ..., w_{s^2}, w_{s^1} w_{s-}) for a set of colored roots."""
    face = list(face)
    _validate(rs, face, m)
    plus = [v.root for v in face if not rs.is_positive(v.root) and rs.in_pi_plus(rs.neg(v.root))]
    minus = [v.root for v in face if not rs.is_positive(v.root) and rs.in_pi_minus(rs.neg(v.root))]
    by_color = {c: [v.root for v in face if rs.is_positive(v.root) and v.color == c] for c in range(1, m + 1)}
    slots = [w_of_part(rs, by_color[m - j]) for j in range(m)]
    slots[0] = w_of_part(rs, plus) * slots[0]
    slots[-1] = slots[-1] * w_of_part(rs, minus)
    return tuple(slots)


def face_by_ncm_criterion(rs: RootSystem, face: Iterable[ColoredRoot], m: int, ncm=None) -> bool:
    """Face test: the criterion tuple lies in NC_(m)(gamma) with rank |face|."""
    face = list(face)
    if len(set(face)) != len(face):
        return False
    tup = criterion_tuple(rs, face, m)
    gamma = cx.coxeter_element(rs)
    ok = is_ncm_member(gamma, tup) and sum(cx.absolute_length(w) for w in tup) == len(face)
    if ncm is not None and ok:
        assert ncm.find(tup) is not None, "criterion tuple missing from the poset"
    return ok


def face_element(rs: RootSystem, face: Iterable[ColoredRoot], m: int) -> GroupElement:
    """w_sigma: the product of the criterion tuple."""
    return cx.product(rs, criterion_tuple(rs, face, m))


# --- positive subcomplexes ---------------------------------------------------

def positive_subcomplex_faces(rs: RootSystem, m: int, w: Sequence[GroupElement]) -> list[Face]:
    """All faces of Delta^m_+(w), tested with the noncrossing criterion.

    Vertices are colored positive roots alpha^c with R(alpha) <= w_{m-c+1}.
    """
    check_m(m)
    if len(w) != m:
        raise ValueError(f"expected an {m}-tuple")
    verts = [ColoredRoot(rid, c) for rid in range(rs.N) for c in range(1, m + 1)
             if cx.absolute_leq(cx.reflection(rs, rid), w[m - c])]
    verts.sort(key=lambda v: (rs.position(v.root), v.color))
    out = []

    def grow(start: int, current: list):
        out.append(frozenset(current))
        for i in range(start, len(verts)):
            current.append(verts[i])
            if face_by_ncm_criterion(rs, current, m):
                grow(i + 1, current)
            current.pop()

    grow(0, [])
    return out


def positive_subcomplex_facets(rs: RootSystem, m: int, w: Sequence[GroupElement]) -> list[Face]:
    faces = positive_subcomplex_faces(rs, m, w)
    faceset = set(faces)
    verts = {v for f in faces for v in f}
    return [f for f in faces if not any(f | {v} in faceset for v in verts - f)]


# --- links and h-polynomials ------------------------------------------------

def h_from_face_sizes(sizes: Iterable[int], dim_plus_one: int) -> BiPoly:
    """h(y) = sum_i f_i y^i (1 - y)^(d - i) for a complex with faces of the given sizes."""
    y = BiPoly.y()
    counts: dict = {}
    for s in sizes:
        counts[s] = counts.get(s, 0) + 1
    out = BiPoly()
    for i, c in counts.items():
        if i > dim_plus_one:
            raise ValueError("face larger than the stated dimension")
        out = out + c * y ** i * (1 - y) ** (dim_plus_one - i)
    return out


def link_h_polynomial(rs: RootSystem, m: int, face: Iterable[ColoredRoot]) -> BiPoly:
    """h-polynomial of the link of ``face`` by direct enumeration."""
    face = frozenset(face)
    lk = cluster_complex(rs, m).link(face)
    return h_from_face_sizes((len(t) for t in lk), rs.n - len(face))


def link_h_via_noncrossing(rs: RootSystem, m: int, face: Iterable[ColoredRoot]) -> BiPoly:
    """Rank generating polynomial of NC_(m)(gamma w_sigma^{-1})."""
    face = list(face)
    c = cx.coxeter_element(rs) * cx.inverse(face_element(rs, face, m))
    poset = build_ncm(rs, m, c)
    return BiPoly.from_univariate_y(poset.rank_counts())


# --- text format -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:\+(\d+)@(\d+)|-(\d+))\s*")


def parse_face(rs: RootSystem, text: str, m: int) -> Face:
    """Parse ``"+2@1,+3@2,-1"``: ``+i@c`` is rho_i with color c, ``-j`` is -sigma_j."""
    if not text.strip():
        return frozenset()
    out = []
    for tok in text.split(","):
        mo = _TOKEN.fullmatch(tok)
        if not mo:
            raise FaceParseError(f"malformed face token {tok!r}")
        if mo.group(1):
            i, c = int(mo.group(1)), int(mo.group(2))
            if not 1 <= i <= rs.N or not 1 <= c <= m:
                raise FaceParseError(f"token {tok!r} out of range")
            out.append(ColoredRoot(i - 1, c))
        else:
            j = int(mo.group(3))
            if not 1 <= j <= rs.n:
                raise FaceParseError(f"token {tok!r} out of range")
            out.append(ColoredRoot(rs.neg(rs.simple_ids[j - 1]), 1))
    if len(set(out)) != len(out):
        raise FaceParseError(f"repeated vertex in {text!r}")
    return frozenset(out)


def format_vertex(rs: RootSystem, v: ColoredRoot) -> str:
    if rs.is_positive(v.root):
        return f"+{v.root + 1}@{v.color}"
    return f"-{rs.simple_of_root[rs.neg(v.root)] + 1}"


def format_face(rs: RootSystem, face: Iterable[ColoredRoot]) -> str:
    ordered = sorted(face, key=lambda v: (rs.position(v.root), v.color))
    return ",".join(format_vertex(rs, v) for v in ordered)
