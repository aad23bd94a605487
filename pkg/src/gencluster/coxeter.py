"""Elements of the reflection group as permutations of the root set.

Absolute length is computed as the codimension of the fixed space,
``rank(w - I)``; the test suite checks it against a breadth-first search of
the Cayley graph generated by all reflections.
"""
from __future__ import annotations

from itertools import product as _cartesian
from typing import Iterable, Sequence

from . import exact
from .roots import RootSystem


class MixedRootSystemsError(ValueError):
    pass


class NotARootError(ValueError):
    pass


class GroupElement:
    """An element of W, stored as the permutation it induces on root ids."""

    __slots__ = ("rs", "perm", "_hash")

    def __init__(self, rs: RootSystem, perm: Sequence[int]):
        self.rs = rs
        self.perm = tuple(perm)
        self._hash = hash(self.perm)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.rs is other.rs and self.perm == other.perm

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.perm < other.perm

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def __repr__(self):
        return f"GroupElement({self.rs.name}, l_T={absolute_length(self)})"

    def __call__(self, rid: int) -> int:
        return self.perm[rid]

    def inverse(self) -> "GroupElement":
        return inverse(self)

    @property
    def matrix(self) -> exact.Matrix:
        """Matrix in simple-root coordinates; column j is the image of sigma_j."""
        rs = self.rs
        cols = [rs.roots[self.perm[s]] for s in rs.simple_ids]
        return exact.matrix([[cols[j][i] for j in range(rs.n)] for i in range(rs.n)])


def identity(rs: RootSystem) -> GroupElement:
    return GroupElement(rs, range(len(rs.roots)))


def compose(a: GroupElement, b: GroupElement) -> GroupElement:
    """The product ``a b``: apply ``b`` first."""
    if a.rs is not b.rs:
        raise MixedRootSystemsError("elements belong to different root systems")
    pa = a.perm
    return GroupElement(a.rs, [pa[i] for i in b.perm])


def inverse(a: GroupElement) -> GroupElement:
    inv = [0] * len(a.perm)
    for i, j in enumerate(a.perm):
        inv[j] = i
    return GroupElement(a.rs, inv)


def product(rs: RootSystem, elements: Iterable[GroupElement]) -> GroupElement:
    out = identity(rs)
    for e in elements:
        out = compose(out, e)
    return out


def from_matrix(rs: RootSystem, mat: exact.Matrix) -> GroupElement:
    return GroupElement(rs, [rs.index[rs.apply(mat, v)] for v in rs.roots])


def reflection(rs: RootSystem, rid: int) -> GroupElement:
    """R(alpha) for the root with id ``rid`` (either sign)."""
    if not 0 <= rid < len(rs.roots):
        raise NotARootError(f"no root with id {rid}")
    key = ("refl", rid % rs.N)
    if key not in rs._cache:
        rs._cache[key] = from_matrix(rs, rs.reflection_matrix(rid % rs.N))
    return rs._cache[key]


def reflections(rs: RootSystem) -> list[GroupElement]:
    """All reflections, indexed by positive root id."""
    return [reflection(rs, i) for i in range(rs.N)]


def reflection_root(t: GroupElement) -> int | None:
    """Positive root id of a reflection, or None if ``t`` is not a reflection."""
    rs = t.rs
    key = ("reflroot",)
    if key not in rs._cache:
        rs._cache[key] = {reflection(rs, i): i for i in range(rs.N)}
    return rs._cache[key].get(t)


def simple_reflection(rs: RootSystem, j: int) -> GroupElement:
    return reflection(rs, rs.simple_ids[j])


def coxeter_element(rs: RootSystem) -> GroupElement:
    """The bipartite Coxeter element R(sigma_1) ... R(sigma_n)."""
    return product(rs, (simple_reflection(rs, j) for j in range(rs.n)))


def order(w: GroupElement) -> int:
    e, cur, k = identity(w.rs), w, 1
    while cur != e:
        cur = cur * w
        k += 1
    return k


def absolute_length(w: GroupElement) -> int:
    cache = w.rs._cache.setdefault("length", {})
    val = cache.get(w.perm)
    if val is None:
        val = exact.matrix_rank(exact.sub(w.matrix, exact.identity(w.rs.n)))
        cache[w.perm] = val
    return val


def absolute_leq(u: GroupElement, v: GroupElement) -> bool:
    """u <= v in absolute order: l(u) + l(u^{-1} v) == l(v)."""
    if u.rs is not v.rs:
        raise MixedRootSystemsError("elements belong to different root systems")
    return absolute_length(u) + absolute_length(inverse(u) * v) == absolute_length(v)


def is_minimal_factorization(factors: Sequence[GroupElement], w: GroupElement) -> bool:
    if not factors:
        return w == identity(w.rs)
    return (product(w.rs, factors) == w
            and sum(absolute_length(f) for f in factors) == absolute_length(w))


def below_interval(w: GroupElement) -> list[GroupElement]:
    """All u <= w, grown from the identity by length-increasing reflection steps."""
    rs = w.rs
    memo = rs._cache.setdefault("below", {})
    if w.perm in memo:
        return memo[w.perm]
    lw = absolute_length(w)
    refl = reflections(rs)
    layer = {identity(rs)}
    found = list(layer)
    for k in range(lw):
        nxt = set()
        for u in layer:
            for t in refl:
                v = u * t
                if v not in nxt and absolute_length(v) == k + 1 and absolute_leq(v, w):
                    nxt.add(v)
        layer = nxt
        found += sorted(layer)
    memo[w.perm] = found
    return found


def minimal_factorizations(w: GroupElement, parts: int) -> list[tuple[GroupElement, ...]]:
    """All ordered minimal factorizations of ``w`` into ``parts`` factors."""
    if parts == 1:
        return [(w,)]
    out = []
    for u in below_interval(w):
        rest = inverse(u) * w
        for tail in minimal_factorizations(rest, parts - 1):
            out.append((u,) + tail)
    return out


def group_elements(rs: RootSystem) -> list[GroupElement]:
    """The whole group, by closure under simple reflections."""
    gens = [simple_reflection(rs, j) for j in range(rs.n)]
    e = identity(rs)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for u, s in _cartesian(frontier, gens):
            v = u * s
            if v not in seen:
                seen.add(v)
                nxt.append(v)
        frontier = nxt
    return sorted(seen)
