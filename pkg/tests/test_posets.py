"""Tests for generic finite posets: Moebius calculus, Euler characteristics,
weightings and the contractor predicate."""

import random
from math import factorial

import pytest

from equipart.errors import DomainError
from equipart.groups import PermGroup
from equipart.posets import FinitePoset, is_contractor


def chain(n):
    return FinitePoset.build(range(n), lambda x, y: x <= y)


def antichain(n):
    return FinitePoset.build(range(n), lambda x, y: x == y)


def divisor_poset(n):
    divs = [d for d in range(1, n + 1) if n % d == 0]
    return FinitePoset.build(divs, lambda x, y: y % x == 0)


def random_poset(rng, n):
    """Random poset from a random DAG by reachability closure."""
    edges = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.4:
                edges[i][j] = True
    # transitive closure
    for k in range(n):
        for i in range(n):
            if edges[i][k]:
                for j in range(n):
                    if edges[k][j]:
                        edges[i][j] = True
    return FinitePoset.build(range(n),
                             lambda x, y: x == y or edges[x][y])


def brute_reduced_euler(poset):
    """Independent oracle: -1 + (alternating sum over every explicit chain)."""
    n = len(poset.elements)
    order = [poset.elements[i] for i in poset.linear_extension]
    total = -1

    def walk(last, start, size):
        nonlocal total
        for k in range(start, n):
            x = order[k]
            if last is None or (poset.leq(last, x) and last != x):
                total += 1 if size % 2 == 0 else -1
                walk(x, k + 1, size + 1)

    walk(None, 0, 0)
    return total


def test_build_validates():
    assert len(chain(3)) == 3
    with pytest.raises(DomainError):
        FinitePoset.build("ab", lambda x, y: True)  # a<=b and b<=a
    empty = FinitePoset.build([], lambda x, y: True)
    assert empty.reduced_euler == -1


def test_transitivity_violation_reported():
    rel = {(0, 1), (1, 2)}
    with pytest.raises(DomainError):
        FinitePoset.build(range(3), lambda x, y: x == y or (x, y) in rel)


def test_moebius_on_chain_and_lattice():
    c = chain(2)
    assert c.moebius(0, 1) == -1
    assert c.moebius(0, 0) == 1
    d = divisor_poset(12)
    assert d.moebius(1, 12) == 0
    assert d.moebius(1, 6) == 1
    with pytest.raises(DomainError):
        d.moebius(4, 3)


def test_moebius_of_subgroup_lattice_s3():
    from equipart.groups import subgroup_lattice_poset
    s3 = PermGroup.symmetric(3)
    lattice = subgroup_lattice_poset(s3)
    bottom = min(lattice.elements, key=lambda g: g.order)
    top = max(lattice.elements, key=lambda g: g.order)
    assert lattice.moebius(bottom, top) == 3


def test_zeta_moebius_inverse():
    rng = random.Random(11)
    for _ in range(20):
        p = random_poset(rng, rng.randrange(1, 8))
        assert p.zeta_times_moebius_is_identity()


def test_reduced_euler_known_values():
    assert antichain(3).reduced_euler == 2
    assert chain(5).reduced_euler == 0  # has a maximum, cone
    assert FinitePoset.build([], lambda x, y: True).reduced_euler == -1


def test_reduced_euler_against_chain_enumeration():
    rng = random.Random(23)
    for _ in range(200):
        p = random_poset(rng, rng.randrange(0, 9))
        assert p.reduced_euler == brute_reduced_euler(p)


def test_weighting_sums():
    rng = random.Random(5)
    for _ in range(60):
        p = random_poset(rng, rng.randrange(1, 9))
        k_up, k_low = p.weighting()
        assert sum(k_up.values()) == p.euler == sum(k_low.values())


def test_weighting_singleton():
    p = antichain(1)
    k_up, k_low = p.weighting()
    assert k_up[0] == 1 and k_low[0] == 1


def test_contractor_frattini_interval():
    # the open interval between the trivial group and a cyclic group of
    # order four is a single point, which is trivially a contractor
    c4 = PermGroup.cyclic(4)
    from equipart.groups import all_subgroups, tables
    t = tables(c4)
    subs = [t.to_group(s) for s in all_subgroups(c4)]
    interval = [h for h in subs if 1 < h.order < 4]
    assert len(interval) == 1
    c2 = interval[0]

    def meet(a, b):
        return a.subgroup(a.element_set() & b.element_set())

    def join(a, b):
        return PermGroup.generate(4, list(a.element_set() | b.element_set()))

    assert is_contractor(interval, c2, meet, join)


def test_contractor_maximum():
    # the maximum of a meet-closed subposet is always a contractor
    elements = [frozenset({0}), frozenset({1}), frozenset({0, 1})]
    assert is_contractor(elements, frozenset({0, 1}),
                         lambda a, b: a & b, lambda a, b: a | b)


def test_contractor_implies_zero_euler():
    # contractor shadow on the divisor poset's proper part
    d = divisor_poset(36)
    proper = [x for x in d.elements if x not in (1, 36)]
    sub = d.subposet(proper)
    from math import gcd
    meet, join = gcd, lambda a, b: a * b // gcd(a, b)
    contractors = [c for c in proper
                   if is_contractor(proper, c, meet, join)]
    assert contractors and sub.reduced_euler == 0
