"""Noncrossing partition posets NC(c) and NC_(m)(c).

Both posets are graded by absolute length and carry the natural edge
labeling: a cover ``u -> u t`` is labeled by the positive root of ``t``, and
in NC_(m) additionally by the slot that changed.  Labels are compared by
slot descending, then by the total order on almost positive roots.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterator, Sequence

from . import coxeter as cx
from .coxeter import GroupElement
from .roots import ColoredRoot, RootSystem, check_m


class NotComparableError(ValueError):
    pass


class NotFallingError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class EdgeLabel:
    slot: int   # 1..m
    root: int   # positive root id


def label_key(rs: RootSystem, label: EdgeLabel) -> tuple[int, int]:
    """Sort key realizing the label order: higher slots are smaller."""
    return (-label.slot, rs.position(label.root))


def compare_labels(rs: RootSystem, a: EdgeLabel, b: EdgeLabel) -> int:
    ka, kb = label_key(rs, a), label_key(rs, b)
    return (ka > kb) - (ka < kb)


class GradedPoset:
    """A finite graded poset with labeled covers and a unique minimum at id 0.

    Subclasses fill ``elements``, ``rank`` and ``up`` (lists of
    ``(upper id, label)`` per element) and call :meth:`_seal`.
    """

    rs: RootSystem
    elements: list
    rank: list[int]
    up: list[list[tuple[int, EdgeLabel]]]

    def _seal(self) -> None:
        n = len(self.elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.down = [1 << i for i in range(n)]
        for i in sorted(range(n), key=lambda k: self.rank[k]):
            for j, _ in self.up[i]:
                self.down[j] |= self.down[i]
        self._labels = {(i, j): lab for i in range(n) for j, lab in self.up[i]}
        self._mobius: dict[int, dict[int, int]] = {}
        self._key_cache: dict = {}

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def bottom(self) -> int:
        return 0

    def leq(self, a: int, b: int) -> bool:
        return bool((self.down[b] >> a) & 1)

    def covers(self) -> list[tuple[int, int, EdgeLabel]]:
        return [(i, j, lab) for i in range(len(self)) for j, lab in self.up[i]]

    def label(self, a: int, b: int) -> EdgeLabel:
        return self._labels[(a, b)]

    def key(self, label: EdgeLabel):
        k = self._key_cache.get(label)
        if k is None:
            k = self._key_cache[label] = label_key(self.rs, label)
        return k

    def interval(self, a: int, b: int) -> list[int]:
        if not self.leq(a, b):
            raise NotComparableError(f"{a} is not below {b}")
        return [z for z in range(len(self)) if self.leq(a, z) and self.leq(z, b)]

    def upset(self, a: int) -> list[int]:
        return [z for z in range(len(self)) if self.leq(a, z)]

    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if not self.up[i]]

    def rank_counts(self) -> list[int]:
        top = max(self.rank) if self.rank else 0
        out = [0] * (top + 1)
        for r in self.rank:
            out[r] += 1
        return out

    # Moebius function

    def mobius_row(self, a: int) -> dict[int, int]:
        """mu(a, b) for every b >= a."""
        row = self._mobius.get(a)
        if row is not None:
            return row
        ups = sorted(self.upset(a), key=lambda z: (self.rank[z], z))
        row = {}
        for b in ups:
            if b == a:
                row[b] = 1
                continue
            db = self.down[b]
            row[b] = -sum(v for z, v in row.items() if (db >> z) & 1)
        self._mobius[a] = row
        return row

    def mobius(self, a: int, b: int) -> int:
        if not self.leq(a, b):
            raise NotComparableError(f"{a} is not below {b}")
        return self.mobius_row(a)[b]

    # chains

    def _chains(self, a: int, b: int, accept: Callable) -> Iterator[tuple[int, ...]]:
        """Maximal chains of [a, b] whose consecutive label keys satisfy ``accept``."""
        if not self.leq(a, b):
            raise NotComparableError(f"{a} is not below {b}")
        db = self.down[b]

        def walk(x, path, last):
            if x == b:
                yield tuple(path)
                return
            for y, lab in sorted(self.up[x], key=lambda e: self.key(e[1])):
                if not (db >> y) & 1:
                    continue
                k = self.key(lab)
                if last is None or accept(last, k):
                    path.append(y)
                    yield from walk(y, path, k)
                    path.pop()

        yield from walk(a, [a], None)

    def maximal_chains(self, a: int, b: int) -> list[tuple[int, ...]]:
        return list(self._chains(a, b, lambda p, q: True))

    def falling_chains(self, a: int, b: int) -> list[tuple[int, ...]]:
        """Maximal chains of [a, b] with weakly decreasing labels."""
        return list(self._chains(a, b, lambda p, q: q <= p))

    def rising_chains(self, a: int, b: int) -> list[tuple[int, ...]]:
        return list(self._chains(a, b, lambda p, q: q > p))

    def chain_labels(self, chain: Sequence[int]) -> list[EdgeLabel]:
        return [self.label(x, y) for x, y in zip(chain, chain[1:])]

    def all_falling_chains(self) -> list[tuple[int, ...]]:
        """Falling maximal chains of [0, w] over all maximal-rank w."""
        top = max(self.rank)
        out = []
        for w in range(len(self)):
            if self.rank[w] == top:
                out += self.falling_chains(self.bottom, w)
        return out


def is_el_labeling(poset: GradedPoset, key: Callable | None = None) -> bool:
    """Check every nontrivial interval for a unique rising chain that is lexicographically first.

    ``key`` overrides the label order (used to test that a scrambled order fails).
    """
    keyf = key or poset.key
    n = len(poset)
    sorted_up = [sorted(poset.up[x], key=lambda e: keyf(e[1])) for x in range(n)]
    for x in range(n):
        for y in poset.upset(x):
            if y == x:
                continue
            dy = poset.down[y]
            # greedy walk gives the lexicographically first chain (labels out of a node are distinct)
            cur, last, rising = x, None, True
            while cur != y:
                nxt, lab = next((z, l) for z, l in sorted_up[cur] if (dy >> z) & 1)
                k = keyf(lab)
                if last is not None and not k > last:
                    rising = False
                cur, last = nxt, k
            if not rising:
                return False
            count = 0
            stack = [(x, None)]
            while stack:
                cur, last = stack.pop()
                if cur == y:
                    count += 1
                    if count > 1:
                        return False
                    continue
                for z, lab in sorted_up[cur]:
                    k = keyf(lab)
                    if (dy >> z) & 1 and (last is None or k > last):
                        stack.append((z, k))
            if count != 1:
                return False
    return True


# --- NC(c) ---------------------------------------------------------------------

class NCLattice(GradedPoset):
    """The interval [1, c] in absolute order."""

    def __init__(self, rs: RootSystem, c: GroupElement):
        self.rs = rs
        self.c = c
        elems = sorted(cx.below_interval(c), key=lambda u: (cx.absolute_length(u), u.perm))
        self.elements = elems
        self.rank = [cx.absolute_length(u) for u in elems]
        index = {u: i for i, u in enumerate(elems)}
        refl = cx.reflections(rs)
        self.up = []
        for i, u in enumerate(elems):
            row = []
            for rid, t in enumerate(refl):
                j = index.get(u * t)
                if j is not None and self.rank[j] == self.rank[i] + 1:
                    row.append((j, EdgeLabel(1, rid)))
            self.up.append(row)
        self._seal()

    def key(self, label: EdgeLabel):
        return self.rs.position(label.root)

    def to_json(self) -> dict:
        return {
            "system": self.rs.name,
            "elements": [list(u.perm) for u in self.elements],
            "ranks": self.rank,
            "covers": [[a, b, {"slot": 1, "rootIndex": lab.root + 1}] for a, b, lab in self.covers()],
        }


def build_nc(rs: RootSystem, c: GroupElement | None = None) -> NCLattice:
    return NCLattice(rs, c if c is not None else cx.coxeter_element(rs))


# --- NC_(m)(c) -----------------------------------------------------------------

class NCmPoset(GradedPoset):
    """m-divisible noncrossing partitions: minimal factorizations of elements below c."""

    def __init__(self, rs: RootSystem, c: GroupElement, m: int, nc: NCLattice | None = None):
        check_m(m)
        self.rs, self.c, self.m = rs, c, m
        self.nc = nc if nc is not None else NCLattice(rs, c)
        nci = self.nc.index
        tuples = set()
        for w in self.nc.elements:
            for f in cx.minimal_factorizations(w, m):
                tuples.add(tuple(nci[x] for x in f))
        ranked = sorted(tuples, key=lambda t: (sum(self.nc.rank[i] for i in t), t))
        self.ids = ranked
        self.elements = [tuple(self.nc.elements[i] for i in t) for t in ranked]
        self.rank = [sum(self.nc.rank[i] for i in t) for t in ranked]
        where = {t: k for k, t in enumerate(ranked)}
        self.up = []
        for t in ranked:
            row = []
            for slot in range(m):
                for j, lab in self.nc.up[t[slot]]:
                    u = t[:slot] + (j,) + t[slot + 1:]
                    k = where.get(u)
                    if k is not None:
                        row.append((k, EdgeLabel(slot + 1, lab.root)))
            self.up.append(row)
        self._seal()

    def find(self, elems: Sequence[GroupElement]) -> int | None:
        return self.index.get(tuple(elems))

    def to_json(self) -> dict:
        return {
            "system": self.rs.name,
            "m": self.m,
            "nc_elements": [list(u.perm) for u in self.nc.elements],
            "elements": [list(t) for t in self.ids],
            "ranks": self.rank,
            "covers": [[a, b, {"slot": lab.slot, "rootIndex": lab.root + 1}] for a, b, lab in self.covers()],
        }


def build_ncm(rs: RootSystem, m: int, c: GroupElement | None = None) -> NCmPoset:
    check_m(m)
    c = c if c is not None else cx.coxeter_element(rs)
    key = ("ncm", c.perm, m)
    if key not in rs._cache:
        rs._cache[key] = NCmPoset(rs, c, m)
    return rs._cache[key]


def ncm_leq(poset: NCmPoset, a: int, b: int) -> bool:
    return poset.leq(a, b)


def ncm_rank(poset: NCmPoset, a: int) -> int:
    return poset.rank[a]


def is_ncm_member(c: GroupElement, elems: Sequence[GroupElement]) -> bool:
    """Membership in NC_(m)(c) straight from the definition."""
    rs = c.rs
    if not all(cx.absolute_leq(w, c) for w in elems):
        return False
    w = cx.product(rs, elems)
    return cx.absolute_leq(w, c) and cx.absolute_length(w) == sum(cx.absolute_length(x) for x in elems)


def chain_to_facet(poset: NCmPoset, chain: Sequence[int]) -> frozenset[ColoredRoot]:
    """Send a falling chain to its positive face: roots labeled in slot i get color m - i + 1."""
    labels = poset.chain_labels(chain)
    keys = [poset.key(l) for l in labels]
    if any(b > a for a, b in zip(keys, keys[1:])):
        raise NotFallingError("chain labels are not weakly decreasing")
    return frozenset(ColoredRoot(l.root, poset.m - l.slot + 1) for l in labels)


def positive_facet_count_via_mobius(poset: GradedPoset, w: int) -> int:
    return (-1) ** poset.rank[w] * poset.mobius(poset.bottom, w)
