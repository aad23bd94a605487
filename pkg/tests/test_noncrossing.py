from __future__ import annotations

import itertools
import random

import pytest

from gencluster import coxeter as cx
from gencluster.cluster import positive_subcomplex_facets
from gencluster.noncrossing import (
    EdgeLabel, NCmPoset, NotComparableError, NotFallingError, build_nc, build_ncm, chain_to_facet,
    compare_labels, is_el_labeling, is_ncm_member, ncm_leq, ncm_rank, positive_facet_count_via_mobius,
)
from gencluster.roots import ColoredRoot, InvalidMError, catalan_number


def componentwise_leq(a, b) -> bool:
    return all(cx.absolute_leq(x, y) for x, y in zip(a, b))


def test_nc_sizes(systems):
    a1 = build_nc(systems("A1"))
    assert len(a1) == 2 and len(a1.covers()) == 1
    a2 = build_nc(systems("A2"))
    assert len(a2) == 5 and a2.rank_counts() == [1, 3, 1]
    assert len(build_nc(systems("A3"))) == 14


def test_ncm_sizes(systems):
    a2 = systems("A2")
    p = build_ncm(a2, 2)
    assert len(p) == 12 and p.rank_counts() == [1, 6, 5]
    for m in range(1, 5):
        assert len(build_ncm(systems("A1"), m)) == m + 1
    with pytest.raises(InvalidMError):
        build_ncm(a2, 0)


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "A3", "G2"])
def test_single_slot_poset_is_nc(systems, name):
    rs = systems(name)
    nc, p = build_nc(rs), build_ncm(rs, 1)
    assert [e[0] for e in p.elements] == nc.elements
    assert sorted((a, b, l) for a, b, l in p.covers()) == sorted(nc.covers())


@pytest.mark.parametrize("name, m", [("A2", 2), ("B2", 2), ("A2", 3)])
def test_order_is_componentwise(systems, name, m):
    p = build_ncm(systems(name), m)
    for a, b in itertools.product(range(len(p)), repeat=2):
        assert ncm_leq(p, a, b) == componentwise_leq(p.elements[a], p.elements[b])
    assert ncm_rank(p, 0) == 0
    assert all(ncm_leq(p, a, a) for a in range(len(p)))


def test_mobius_examples(systems):
    nc = build_nc(systems("A2"))
    top = nc.index[nc.c]
    assert nc.mobius(0, 0) == 1
    assert nc.mobius(0, top) == 2
    assert all(nc.mobius(0, t) == -1 for t in range(1, 4))
    with pytest.raises(NotComparableError):
        nc.mobius(top, 0)


@pytest.mark.parametrize("name, m", [("A2", 2), ("B2", 2), ("A3", 1)])
def test_mobius_defining_recursion(systems, name, m):
    p = build_ncm(systems(name), m)
    for a in range(len(p)):
        for b in p.upset(a):
            total = sum(p.mobius(a, z) for z in p.interval(a, b))
            assert total == (1 if a == b else 0)


def test_label_order(systems):
    rs = systems("A2")
    s1, alpha, s2 = 0, 1, 2
    assert compare_labels(rs, EdgeLabel(2, alpha), EdgeLabel(1, s2)) < 0
    assert compare_labels(rs, EdgeLabel(1, s1), EdgeLabel(1, alpha)) < 0
    assert compare_labels(rs, EdgeLabel(1, alpha), EdgeLabel(1, s2)) < 0
    assert compare_labels(rs, EdgeLabel(1, alpha), EdgeLabel(1, alpha)) == 0
    nc = build_nc(rs)
    assert sorted(range(3), key=lambda r: nc.key(EdgeLabel(1, r))) == [s1, alpha, s2]


@pytest.mark.parametrize("name", ["A2", "B2", "A3"])
@pytest.mark.parametrize("m", [1, 2])
def test_el_labeling(systems, name, m):
    rs = systems(name)
    assert is_el_labeling(build_nc(rs))
    assert is_el_labeling(build_ncm(rs, m))


@pytest.mark.parametrize("name", ["A2", "B2", "A3"])
def test_scrambled_label_order_is_not_el(systems, name):
    rs = systems(name)
    p = build_ncm(rs, 2)
    assert not is_el_labeling(p, key=lambda lab: tuple(-x for x in p.key(lab)))
    rng = random.Random(7)
    perm = list(range(rs.N))
    failures = 0
    for _ in range(5):
        rng.shuffle(perm)
        failures += not is_el_labeling(build_nc(rs), key=lambda lab: perm[lab.root])
    assert failures > 0


def test_falling_chain_examples(systems):
    a1 = build_nc(systems("A1"))
    assert len(a1.falling_chains(0, 1)) == 1
    a2 = systems("A2")
    nc = build_nc(a2)
    assert len(nc.falling_chains(0, nc.index[nc.c])) == 2
    assert len(build_ncm(a2, 2).all_falling_chains()) == 7
    with pytest.raises(NotComparableError):
        nc.falling_chains(4, 0)


def _chain_with_labels(p, labels):
    cur, chain = 0, [0]
    for lab in labels:
        cur = next(j for j, l in p.up[cur] if l == lab)
        chain.append(cur)
    return chain


def test_chain_to_facet_examples(systems):
    rs = systems("A2")
    p = build_ncm(rs, 2)
    s1, alpha, s2 = 0, 1, 2
    ch = _chain_with_labels(p, [EdgeLabel(2, s2), EdgeLabel(2, alpha)])
    assert chain_to_facet(p, ch) == {ColoredRoot(s2, 1), ColoredRoot(alpha, 1)}
    ch = _chain_with_labels(p, [EdgeLabel(1, s2), EdgeLabel(2, alpha)])
    assert chain_to_facet(p, ch) == {ColoredRoot(s2, 2), ColoredRoot(alpha, 1)}
    assert chain_to_facet(p, [0]) == frozenset()
    with pytest.raises(NotFallingError):
        chain_to_facet(p, _chain_with_labels(p, [EdgeLabel(2, s1), EdgeLabel(2, s2)]))


def test_mobius_facet_count_examples(systems):
    rs = systems("A2")
    p = build_ncm(rs, 2)
    assert positive_facet_count_via_mobius(p, 0) == 1
    top = max(p.rank)
    assert sum(positive_facet_count_via_mobius(p, w) for w in range(len(p)) if p.rank[w] == top) == 7
    nc = build_ncm(rs, 1)
    assert positive_facet_count_via_mobius(nc, len(nc) - 1) == 2


@pytest.mark.parametrize("name, m", [("A2", 1), ("A2", 2), ("A2", 3), ("B2", 1), ("B2", 2), ("B2", 3)])
def test_order_ideal(systems, name, m):
    rs = systems(name)
    p = build_ncm(rs, m)
    members = set(p.elements)
    for b in p.elements:
        for a in itertools.product(*(cx.below_interval(x) for x in b)):
            assert a in members


@pytest.mark.parametrize("name, m", [("A2", 2), ("B2", 3), ("A3", 2), ("G2", 2)])
def test_maximal_elements_are_factorizations_of_gamma(systems, name, m):
    rs = systems(name)
    p = build_ncm(rs, m)
    gamma = cx.coxeter_element(rs)
    maximal = {p.elements[i] for i in p.maximal()}
    assert maximal == set(cx.minimal_factorizations(gamma, m))
    assert all(p.rank[i] == rs.n for i in p.maximal())


@pytest.mark.parametrize("name, m", [("A2", 1), ("A2", 2), ("B2", 2), ("A3", 1), ("A3", 2)])
def test_meet_semilattice(systems, name, m):
    p = build_ncm(systems(name), m)
    n = len(p)
    for a in range(n):
        for b in range(a, n):
            common = p.down[a] & p.down[b]
            lower = [z for z in range(n) if (common >> z) & 1]
            tops = [z for z in lower if not any(z != y and p.leq(z, y) for y in lower)]
            assert len(tops) == 1


@pytest.mark.parametrize("name, m", [("A2", 2), ("B2", 2), ("A3", 2)])
def test_interval_transport(systems, name, m):
    p = build_ncm(systems(name), m)
    for a in range(len(p)):
        for b in p.upset(a):
            diff = tuple(x.inverse() * y for x, y in zip(p.elements[a], p.elements[b]))
            d = p.find(diff)
            assert d is not None
            upper, lower = p.interval(a, b), p.interval(0, d)
            assert len(upper) == len(lower)
            assert p.mobius(a, b) == p.mobius(0, d)
            cov = lambda s: sum(1 for x in s for y, _ in p.up[x] if y in s)
            assert cov(set(upper)) == cov(set(lower))


@pytest.mark.parametrize("name, m", [("A2", 2), ("B2", 2), ("A3", 2)])
def test_conjugation_bijection(systems, name, m):
    rs = systems(name)
    p = build_ncm(rs, m)
    gamma = cx.coxeter_element(rs)
    members = set(p.elements)
    for w in p.elements:
        shifted = []
        for a in p.elements:
            aw = tuple(x * y for x, y in zip(a, w))
            if aw in members and componentwise_leq(a, aw):
                prefix, image = cx.identity(rs), []
                for ai, wi in zip(a, w):
                    image.append(prefix * ai * prefix.inverse())
                    prefix = prefix * wi
                shifted.append((tuple(image), sum(cx.absolute_length(x) for x in a)))
        target = NCmPoset(rs, gamma * cx.product(rs, w).inverse(), m)
        assert {t for t, _ in shifted} == set(target.elements)
        assert len(shifted) == len(target)
        for t, r in shifted:
            assert target.rank[target.index[t]] == r


@pytest.mark.parametrize("name, m", [("A2", 2), ("B2", 2), ("A3", 2), ("G2", 1)])
def test_falling_chains_match_mobius_and_facets(systems, name, m):
    rs = systems(name)
    p = build_ncm(rs, m)
    for w in range(len(p)):
        falling = p.falling_chains(0, w)
        count = positive_facet_count_via_mobius(p, w)
        assert len(falling) == count
        facets = {chain_to_facet(p, ch) for ch in falling}
        assert facets == set(positive_subcomplex_facets(rs, m, p.elements[w]))


@pytest.mark.parametrize("name", ["A2", "B2", "A3", "G2", "B3"])
@pytest.mark.parametrize("m", [1, 2])
def test_membership_and_catalan(systems, name, m):
    rs = systems(name)
    p = build_ncm(rs, m)
    assert len(p) == catalan_number(rs, m)
    gamma = cx.coxeter_element(rs)
    assert all(is_ncm_member(gamma, e) for e in p.elements)
