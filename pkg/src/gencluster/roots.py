"""Crystallographic root systems with a fixed bipartite Coxeter element.

Roots are stored in simple-root coordinates (integer tuples) together with
the Gram matrix of the simple roots, taken from the Bourbaki realizations.
Simple roots are renumbered so that the first ``r`` of them form the class
``Pi_+`` of a 2-coloring of the Coxeter diagram and the rest form ``Pi_-``.

Root ids follow a fixed layout: ids ``0..N-1`` are the positive roots in
rho-order (so a root's rho-index is its id plus one) and ``N + i`` is the
negative of root ``i``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm, prod

from . import exact

FAMILIES = "ABCDEFG"


class InvalidRankError(ValueError):
    pass


class SpecParseError(ValueError):
    pass


class NotAlmostPositiveError(ValueError):
    pass


class ColorOutOfRangeError(ValueError):
    pass


class InvalidMError(ValueError):
    pass


def check_m(m: int) -> None:
    if not isinstance(m, int) or m < 1:
        raise InvalidMError(f"m must be a positive integer, got {m!r}")


# --- Bourbaki data -----------------------------------------------------------

def _e(dim: int, *terms) -> tuple:
    v = [Fraction(0)] * dim
    for coeff, i in terms:
        v[i - 1] += Fraction(coeff)
    return tuple(v)


def _bourbaki_simple_roots(family: str, n: int) -> list[tuple]:
    """Simple roots in Bourbaki's ambient orthonormal coordinates (1-based e_i)."""
    if family == "A":
        return [_e(n + 1, (1, i), (-1, i + 1)) for i in range(1, n + 1)]
    if family == "B":
        return [_e(n, (1, i), (-1, i + 1)) for i in range(1, n)] + [_e(n, (1, n))]
    if family == "C":
        return [_e(n, (1, i), (-1, i + 1)) for i in range(1, n)] + [_e(n, (2, n))]
    if family == "D":
        return [_e(n, (1, i), (-1, i + 1)) for i in range(1, n)] + [_e(n, (1, n - 1), (1, n))]
    if family == "G":
        return [_e(3, (1, 1), (-1, 2)), _e(3, (-2, 1), (1, 2), (1, 3))]
    if family == "F":
        h = Fraction(1, 2)
        return [_e(4, (1, 2), (-1, 3)), _e(4, (1, 3), (-1, 4)), _e(4, (1, 4)),
                _e(4, (h, 1), (-h, 2), (-h, 3), (-h, 4))]
    if family == "E":
        h = Fraction(1, 2)
        e8 = [
            _e(8, (h, 1), (h, 8), *((-h, i) for i in range(2, 8))),
            _e(8, (1, 1), (1, 2)),
        ] + [_e(8, (1, i - 1), (-1, i - 2)) for i in range(3, 9)]
        return e8[:n]
    raise SpecParseError(f"unknown family {family!r}")


def _check_rank(family: str, n: int) -> None:
    ok = {
        "A": n >= 1, "B": n >= 2, "C": n >= 2, "D": n >= 2,
        "E": n in (6, 7, 8), "F": n == 4, "G": n == 2,
    }.get(family)
    if not ok:
        raise InvalidRankError(f"no root system of type {family}{n}")


def parse_spec(text: str) -> list[tuple[str, int]]:
    """Parse strings like ``"A2"`` or ``"a1xB3"`` into (family, rank) pairs.

    >>> parse_spec("a1xB3")
    [('A', 1), ('B', 3)]
    """
    parts = text.strip().upper().split("X")
    out = []
    for part in parts:
        mo = re.fullmatch(r"([A-G])(\d+)", part.strip())
        if not mo:
            raise SpecParseError(f"cannot parse root system component {part!r} in {text!r}")
        family, n = mo.group(1), int(mo.group(2))
        _check_rank(family, n)
        out.append((family, n))
    return out


def gram_for(components: list[tuple[str, int]]) -> tuple[exact.Matrix, list[str]]:
    """Block-diagonal Gram matrix of the Bourbaki simple roots, plus labels."""
    blocks, labels = [], []
    for k, (family, n) in enumerate(components):
        simples = _bourbaki_simple_roots(family, n)
        blocks.append([[exact.dot(a, b) for b in simples] for a in simples])
        tag = f"{family}{n}" if len(components) == 1 else f"{family}{n}.{k + 1}"
        labels += [f"{tag}:a{i + 1}" for i in range(n)]
    size = sum(len(b) for b in blocks)
    gram = [[Fraction(0)] * size for _ in range(size)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                gram[off + i][off + j] = x
        off += len(b)
    return tuple(tuple(r) for r in gram), labels


# --- the root system ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Component:
    """One irreducible component, in terms of global simple indices."""
    simples: tuple[int, ...]       # global sigma indices, Pi_+ first
    r: int                         # size of Pi_+ within the component
    coxeter_number: int
    exponents: tuple[int, ...]
    positive: tuple[int, ...]      # root ids in rho-order
    rho: tuple[tuple, ...]         # rho_1 .. rho_{2N} as coordinate tuples

    @property
    def rank(self) -> int:
        return len(self.simples)

    @property
    def num_positive(self) -> int:
        return len(self.positive)

    def rho_at(self, i: int) -> tuple:
        """rho_i with the cyclic convention rho_{-i} = rho_{2N-i}."""
        return self.rho[(i - 1) % len(self.rho)]


@dataclass(eq=False)
class RootSystem:
    """Root data of a (possibly reducible) crystallographic root system.

    ``roots[i]`` are simple-root coordinates w.r.t. ``sigma_1..sigma_n``.
    """
    name: str
    n: int
    gram: exact.Matrix
    cartan: tuple[tuple[int, ...], ...]
    simple_labels: tuple[str, ...]
    r: int
    roots: tuple[tuple[int, ...], ...]
    components: tuple[Component, ...]
    root_component: tuple[int, ...]
    _cache: dict = field(default_factory=dict, repr=False)

    # sizes and simple roots

    @property
    def N(self) -> int:
        return len(self.roots) // 2

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.roots)}

    @cached_property
    def simple_ids(self) -> tuple[int, ...]:
        """Root id of sigma_j for j = 0..n-1."""
        return tuple(self.index[tuple(int(i == j) for i in range(self.n))] for j in range(self.n))

    @cached_property
    def simple_of_root(self) -> dict:
        return {rid: j for j, rid in enumerate(self.simple_ids)}

    @property
    def is_irreducible(self) -> bool:
        return len(self.components) == 1

    @property
    def coxeter_number(self) -> int:
        """h for irreducible systems; the order of the Coxeter element in general."""
        return lcm(*(c.coxeter_number for c in self.components))

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for c in self.components for e in c.exponents)

    def neg(self, rid: int) -> int:
        return rid + self.N if rid < self.N else rid - self.N

    def is_positive(self, rid: int) -> bool:
        return rid < self.N

    def is_negative_simple(self, rid: int) -> bool:
        return rid >= self.N and (rid - self.N) in self.simple_of_root

    def in_pi_plus(self, rid: int) -> bool:
        j = self.simple_of_root.get(rid)
        return j is not None and j < self.r

    def in_pi_minus(self, rid: int) -> bool:
        j = self.simple_of_root.get(rid)
        return j is not None and j >= self.r

    def almost_positive(self) -> list[int]:
        return list(range(self.N)) + [self.neg(s) for s in self.simple_ids]

    def is_almost_positive(self, rid: int) -> bool:
        return 0 <= rid < self.N or self.is_negative_simple(rid)

    def rho_index(self, rid: int) -> int:
        return rid + 1

    def root_vector(self, rid: int) -> exact.Vector:
        return exact.vector(self.roots[rid])

    def inner(self, u, v) -> Fraction:
        return exact.dot(u, v, self.gram)

    # linear maps

    def reflection_matrix(self, rid: int) -> exact.Matrix:
        return exact.reflection_matrix(self.roots[rid], self.gram)

    def apply(self, mat: exact.Matrix, coords) -> tuple[int, ...]:
        out = exact.matvec(mat, coords)
        assert all(x.denominator == 1 for x in out)
        return tuple(int(x) for x in out)

    @cached_property
    def coxeter_matrix(self) -> exact.Matrix:
        """gamma = R(sigma_1) ... R(sigma_n) = gamma_+ gamma_-."""
        g = exact.identity(self.n)
        for sid in self.simple_ids:
            g = exact.matmul(g, self.reflection_matrix(sid))
        return g

    @cached_property
    def coxeter_inverse_matrix(self) -> exact.Matrix:
        return exact.matrix_inverse(self.coxeter_matrix)

    @cached_property
    def mu_matrix(self) -> exact.Matrix:
        """mu = 2 (I - gamma)^{-1}."""
        return exact.scale(2, exact.matrix_inverse(exact.sub(exact.identity(self.n), self.coxeter_matrix)))

    def mu(self, coords) -> exact.Vector:
        return exact.matvec(self.mu_matrix, coords)

    def mu_pairing(self, a, b) -> Fraction:
        """mu(a) . b for coordinate tuples a, b."""
        return self.inner(self.mu(a), b)

    # total order on almost positive roots

    @cached_property
    def total_order(self) -> tuple[int, ...]:
        """Almost positive root ids, smallest first: -Pi_-, Phi^+ by rho, -Pi_+."""
        minus, plus = [], []
        for comp in self.components:
            nc, rc, Nc = comp.rank, comp.r, comp.num_positive
            for i in range(-nc + rc + 1, 1):
                minus.append(self.index[comp.rho_at(i)])
            for i in range(Nc + 1, Nc + rc + 1):
                plus.append(self.index[comp.rho_at(i)])
        return tuple(minus + list(range(self.N)) + plus)

    @cached_property
    def _positions(self) -> dict:
        return {rid: p for p, rid in enumerate(self.total_order)}

    def position(self, rid: int) -> int:
        try:
            return self._positions[rid]
        except KeyError:
            raise NotAlmostPositiveError(f"root {self.roots[rid]} is not almost positive") from None

    # rotations and degree

    def rotate(self, rid: int) -> int:
        """The map R: -alpha on Pi_+ and -Pi_-, gamma^{-1}(alpha) elsewhere."""
        if not self.is_almost_positive(rid):
            raise NotAlmostPositiveError(f"root {self.roots[rid]} is not almost positive")
        if self.in_pi_plus(rid) or (rid >= self.N and self.in_pi_minus(self.neg(rid))):
            return self.neg(rid)
        return self.index[self.apply(self.coxeter_inverse_matrix, self.roots[rid])]

    def degree(self, rid: int) -> int:
        key = ("degree", rid)
        if key not in self._cache:
            d, cur = 0, rid
            while not self.is_negative_simple(cur):
                cur = self.rotate(cur)
                d += 1
                if d > 4 * len(self.roots):
                    raise RuntimeError("rotation orbit never reached a negative simple root")
            self._cache[key] = d
        return self._cache[key]

    def rotate_colored(self, cr: "ColoredRoot", m: int) -> "ColoredRoot":
        check_m(m)
        if not 1 <= cr.color <= m or (not self.is_positive(cr.root) and cr.color != 1):
            raise ColorOutOfRangeError(f"{cr} is not a valid colored root for m={m}")
        if self.is_positive(cr.root) and cr.color < m:
            return ColoredRoot(cr.root, cr.color + 1)
        return ColoredRoot(self.rotate(cr.root), 1)

    def colored_roots(self, m: int) -> list["ColoredRoot"]:
        """Phi^m_{>=-1}, ordered by (position in the total order, color)."""
        check_m(m)
        out = []
        for rid in self.total_order:
            colors = range(1, m + 1) if self.is_positive(rid) else (1,)
            out += [ColoredRoot(rid, c) for c in colors]
        return out

    # misc

    def support(self, rid: int) -> frozenset[int]:
        return frozenset(j for j, x in enumerate(self.roots[rid]) if x != 0)

    def describe_root(self, rid: int) -> str:
        terms = []
        for j, x in enumerate(self.roots[rid]):
            if x:
                coeff = "" if abs(x) == 1 else str(abs(x))
                terms.append(("-" if x < 0 else "+") + coeff + f"s{j + 1}")
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s


@dataclass(frozen=True, order=True)
class ColoredRoot:
    """A vertex of the generalized cluster complex: root id and color.

    Negative simple roots always carry color 1.
    """
    root: int
    color: int = 1


# --- construction ------------------------------------------------------------

def _bipartition(cartan_b: list[list[int]]) -> tuple[list[list[int]], dict]:
    """Connected components of the diagram and a 2-coloring (True = Pi_+).

    Each component is traversed breadth-first from its lowest-indexed node,
    which is put in Pi_+.
    """
    n = len(cartan_b)
    color, comps = {}, []
    for start in range(n):
        if start in color:
            continue
        color[start] = True
        comp, queue = [start], deque([start])
        while queue:
            u = queue.popleft()
            for v in range(n):
                if v != u and cartan_b[u][v] != 0 and v not in color:
                    color[v] = not color[u]
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps, color


def _close_roots(cartan: list[list[int]]) -> list[tuple[int, ...]]:
    n = len(cartan)
    simples = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    seen = set(simples) | {tuple(-x for x in s) for s in simples}
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for i in range(n):
            pairing = sum(v[j] * cartan[j][i] for j in range(n))  # <v, sigma_i^vee>
            if pairing:
                w = list(v)
                w[i] -= pairing
                w = tuple(w)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return sorted(seen)


_EXPONENTS = {
    "E6": (1, 4, 5, 7, 8, 11), "E7": (1, 5, 7, 9, 11, 13, 17),
    "E8": (1, 7, 11, 13, 17, 19, 23, 29), "F4": (1, 5, 7, 11), "G2": (1, 5),
}


def _component_invariants(family: str, n: int) -> tuple[int, tuple[int, ...]]:
    """Coxeter number and exponents of an irreducible type."""
    if family == "A":
        return n + 1, tuple(range(1, n + 1))
    if family in "BC":
        return 2 * n, tuple(range(1, 2 * n, 2))
    if family == "D":
        return 2 * n - 2, tuple(sorted(list(range(1, 2 * n - 2, 2)) + [n - 1]))
    ex = _EXPONENTS[f"{family}{n}"]
    return ex[-1] + 1, ex


def _classify(gram_block: list[list[Fraction]]) -> tuple[str, int]:
    """Cartan type of a connected diagram, used for h and the exponents."""
    n = len(gram_block)
    lengths = {gram_block[i][i] for i in range(n)}
    degrees = [sum(1 for j in range(n) if j != i and gram_block[i][j] != 0) for i in range(n)]
    if n == 1:
        return "A", 1
    if len(lengths) == 1:
        if max(degrees) <= 2:
            return "A", n
        # one branch node; D or E by arm lengths
        b = degrees.index(3)
        arms = []
        for start in (j for j in range(n) if j != b and gram_block[b][j] != 0):
            length, prev, cur = 1, b, start
            while True:
                nxt = [j for j in range(n) if j not in (cur, prev) and gram_block[cur][j] != 0]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[:2] == [1, 1]:
            return "D", n
        return "E", n
    if n == 2:
        ratio = max(lengths) / min(lengths)
        return ("B", 2) if ratio == 2 else ("G", 2)
    if n == 4 and degrees.count(1) == 2:
        # F4 has two long and two short roots; B4/C4 three and one
        counts = sorted(sum(1 for i in range(n) if gram_block[i][i] == L) for L in lengths)
        if counts == [2, 2]:
            return "F", 4
    return "B", n  # B and C share h and exponents


def build_from_gram(gram, labels=None, plus: set[int] | None = None, name: str = "") -> RootSystem:
    """Build a root system from the Gram matrix of its simple roots.

    ``plus`` optionally fixes which input simple roots form ``Pi_+``; it must
    be an independent set of the diagram.  By default each component is
    2-colored starting from its lowest-indexed simple root.
    """
    n0 = len(gram)
    labels = list(labels) if labels is not None else [f"a{i + 1}" for i in range(n0)]
    g0 = [[Fraction(x) for x in row] for row in gram]
    comps, color = _bipartition(g0)
    if plus is not None:
        for i in range(n0):
            for j in range(n0):
                if i != j and g0[i][j] != 0 and i in plus and j in plus:
                    raise ValueError("Pi_+ must consist of pairwise orthogonal simple roots")
        for comp in comps:
            # each diagram component is bipartite; fix its coloring by the given set
            anchor = comp[0]
            flip = (anchor in plus) != color[anchor]
            for v in comp:
                color[v] = color[v] != flip
    order = [i for i in range(n0) if color[i]] + [i for i in range(n0) if not color[i]]
    r = sum(1 for i in range(n0) if color[i])
    gram_s = tuple(tuple(g0[a][b] for b in order) for a in order)
    cartan = tuple(
        tuple(int(2 * gram_s[j][i] / gram_s[j][j]) for i in range(n0)) for j in range(n0)
    )
    # cartan[j][i] = <sigma_i, sigma_j^vee>; closure wants [j][i] with pairing over j
    cartan_pairing = [[cartan[i][j] for i in range(n0)] for j in range(n0)]
    all_roots = _close_roots(cartan_pairing)
    newpos = {old: new for new, old in enumerate(order)}
    comp_new = [sorted(newpos[i] for i in comp) for comp in comps]

    def reflect(v, j):
        pairing = sum(v[k] * cartan[j][k] for k in range(n0))
        w = list(v)
        w[j] -= pairing
        return tuple(w)

    components_info = []
    positive_order = []
    for simples in comp_new:
        rc = sum(1 for j in simples if j < r)
        block = [[gram_s[a][b] for b in simples] for a in simples]
        family, rank = _classify(block)
        h, exps = _component_invariants(family, rank)
        nc = len(simples)
        npos = nc * h // 2
        rho = []
        for i in range(1, 2 * npos + 1):
            v = tuple(int(k == simples[(i - 1) % nc]) for k in range(n0))
            for k in range(i - 2, -1, -1):
                v = reflect(v, simples[k % nc])
            rho.append(v)
        positive_order += rho[:npos]
        components_info.append((simples, rc, h, exps, rho, npos))

    positives = positive_order
    if sorted(positives) != sorted(v for v in all_roots if any(x > 0 for x in v)):
        raise RuntimeError("rho-sequence does not enumerate the positive roots")
    roots = tuple(positives) + tuple(tuple(-x for x in v) for v in positives)
    components = []
    root_component = [0] * len(roots)
    off = 0
    for k, (simples, rc, h, exps, rho, npos) in enumerate(components_info):
        ids = tuple(range(off, off + npos))
        for i in ids:
            root_component[i] = k
            root_component[i + len(positives)] = k
        components.append(Component(tuple(simples), rc, h, tuple(exps), ids, tuple(rho)))
        off += npos
    return RootSystem(
        name=name or "x".join(labels),
        n=n0,
        gram=gram_s,
        cartan=cartan,
        simple_labels=tuple(labels[i] for i in order),
        r=r,
        roots=roots,
        components=tuple(components),
        root_component=tuple(root_component),
    )


def build_root_system(spec) -> RootSystem:
    """Build from a spec string (``"A2"``, ``"A1xB3"``) or a list of (family, rank)."""
    comps = parse_spec(spec) if isinstance(spec, str) else list(spec)
    for family, n in comps:
        _check_rank(family, n)
    gram, labels = gram_for(comps)
    name = "x".join(f"{f}{n}" for f, n in comps)
    return build_from_gram(gram, labels, name=name)


def parabolic_subsystem(rs: RootSystem, simple_index: int) -> tuple[RootSystem, dict]:
    """Standard parabolic subsystem on the simple roots other than ``sigma_{simple_index}``.

    ``simple_index`` is 0-based.  The bipartition is inherited from ``rs``.
    Returns the subsystem and a map from its root ids to root ids of ``rs``.
    """
    if not 0 <= simple_index < rs.n:
        raise IndexError(f"simple index {simple_index} out of range")
    keep = [j for j in range(rs.n) if j != simple_index]
    gram = [[rs.gram[a][b] for b in keep] for a in keep]
    plus = {k for k, j in enumerate(keep) if j < rs.r}
    sub = build_from_gram(gram, [rs.simple_labels[j] for j in keep], plus=plus,
                          name=f"{rs.name}/s{simple_index + 1}")
    # sub keeps the relative order of keep (Pi_+ before Pi_- is preserved)
    embed = {}
    for sid, v in enumerate(sub.roots):
        full = [0] * rs.n
        for k, j in enumerate(keep):
            full[j] = v[k]
        embed[sid] = rs.index[tuple(full)]
    return sub, embed


def catalan_number(rs: RootSystem, m: int = 1) -> int:
    """Fuss-Catalan number prod (e_i + m h + 1)/(e_i + 1), multiplied over components."""
    check_m(m)
    total = 1
    for comp in rs.components:
        num = prod(e + m * comp.coxeter_number + 1 for e in comp.exponents)
        den = prod(e + 1 for e in comp.exponents)
        if num % den:
            raise ArithmeticError(f"non-integral Catalan number {num}/{den}")
        total *= num // den
    return total
