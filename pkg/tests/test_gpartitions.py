"""Tests for set partitions, G-set actions and G-partition posets."""

import random
from math import factorial

import pytest

from equipart.errors import DomainError, ResourceLimitError
from equipart.gpartitions import (GSetAction, SetPartition, all_partitions,
                                  block_gset_type, canonical_partitions,
                                  coset_gset, disjoint_union, fixed_subposet,
                                  g_fixed_partitions, g_partition_poset,
                                  gset_fingerprint, is_isotypical,
                                  partition_lattice)
from equipart.groups import (PermGroup, Permutation, all_subgroups,
                             subgroup_classes, tables)
from equipart.posets import is_contractor


def perm(n, *cycles):
    return Permutation.from_cycles(n, cycles, one_indexed=True)


def figure_one_group():
    return PermGroup.generate(4, [perm(4, (1, 2), (3, 4))])


def figure_two_group():
    return PermGroup.generate(6, [perm(6, (1, 2, 3)), perm(6, (4, 5))])


# -- SetPartition -------------------------------------------------------------


def test_canonical_form():
    p = SetPartition([2, 2, 5, 2, 7])
    assert p.ids == (0, 0, 1, 0, 2)
    assert p.blocks() == ((0, 1, 3), (2,), (4,))
    assert p.label() == "124-3-5"


def test_from_blocks_roundtrip():
    p = SetPartition.from_blocks(4, [(0, 2), (1, 3)])
    assert p.ids == (0, 1, 0, 1)
    with pytest.raises(DomainError):
        SetPartition.from_blocks(4, [(0, 1), (1, 2, 3)])
    with pytest.raises(DomainError):
        SetPartition.from_blocks(4, [(0, 1)])


def test_refinement_and_lattice_ops():
    fine = SetPartition([0, 1, 2, 2])
    coarse = SetPartition([0, 0, 1, 1])
    assert fine.leq(coarse)
    assert not coarse.leq(fine)
    a = SetPartition([0, 0, 1, 1])  # 12|34
    b = SetPartition([0, 1, 0, 1])  # 13|24
    assert a.meet(b) == SetPartition.bottom(4)
    assert a.join(b) == SetPartition.top(4)


def test_action_examples():
    # act(12|3, (123)) = 13|2 under the defining equivalence
    p = SetPartition([0, 0, 1])
    g = perm(3, (1, 2, 3))
    assert p.act(g) == SetPartition([0, 1, 0])
    assert p.act(Permutation.identity(3)) == p
    top, bottom = SetPartition.top(5), SetPartition.bottom(5)
    for h in PermGroup.symmetric(5).generators:
        assert top.act(h) == top and bottom.act(h) == bottom


def test_action_is_compatible_with_composition():
    rng = random.Random(3)
    s5 = PermGroup.symmetric(5)
    parts = all_partitions(5)
    for _ in range(100):
        p = rng.choice(parts)
        g = rng.choice(s5.elements)
        h = rng.choice(s5.elements)
        assert p.act(g).act(h) == p.act(g * h)


def test_action_degree_mismatch():
    with pytest.raises(DomainError):
        SetPartition([0, 0, 1]).act(Permutation.identity(4))


# -- partition lattice -----------------------------------------------------------


def test_partition_lattice_sizes():
    assert len(partition_lattice(4).poset) == 15
    assert len(partition_lattice(1).poset) == 1
    lattice = partition_lattice(4, strip_bounds=True)
    assert len(lattice.poset) == 13
    assert lattice.reduced_euler == -6  # (-1)^(n-1) (n-1)! at n = 4


def test_partition_lattice_euler_small():
    for n in range(2, 7):
        stripped = partition_lattice(n, strip_bounds=True)
        assert stripped.reduced_euler == (-1) ** (n - 1) * factorial(n - 1)


def test_partition_lattice_cap():
    with pytest.raises(ResourceLimitError):
        all_partitions(11, cap=10)


# -- fixed subposets --------------------------------------------------------------


def test_fixed_subposet_identity_gives_everything():
    full = fixed_subposet(4, [Permutation.identity(4)], strip_bounds=False)
    assert len(full.poset) == 15


def test_fixed_subposet_figure_one_nodes():
    sub = fixed_subposet(4, [perm(4, (1, 2), (3, 4))])
    labels = sorted(p.label() for p in sub.partitions)
    assert labels == ["1-2-34", "12-3-4", "12-34", "13-24", "14-23"]


def test_fixed_subposet_three_cycle_empty():
    sub = fixed_subposet(3, [perm(3, (1, 2, 3))])
    assert len(sub.poset) == 0
    assert sub.reduced_euler == -1


# -- GSetAction --------------------------------------------------------------------


def test_natural_action_basics():
    g = figure_two_group()
    action = GSetAction.natural(g)
    assert action.orbits() == ((0, 1, 2), (3, 4), (5,))
    assert action.stabilizer(5).order == 6
    assert action.stabilizer(0).order == 2
    assert action.stabilizer(3).order == 3
    assert not is_isotypical(action)


def test_trivial_and_free_actions():
    g = PermGroup.cyclic(3)
    assert is_isotypical(GSetAction.trivial(g, 4))
    assert is_isotypical(GSetAction.natural(g))
    cp = canonical_partitions(GSetAction.trivial(g, 4))
    assert cp["omega"] == SetPartition.bottom(4)
    free = canonical_partitions(GSetAction.natural(g))
    assert free["theta"] == SetPartition.top(3)


def test_canonical_partitions_figure_two():
    cp = canonical_partitions(GSetAction.natural(figure_two_group()))
    assert cp["theta"].label() == "123-45-6"
    assert cp["omega"].label() == "123-45-6"
    assert not cp["isotypical"]


def test_coset_gset():
    s3 = PermGroup.symmetric(3)
    stab = GSetAction.natural(s3).stabilizer(2)
    assert stab.order == 2
    nat = coset_gset(s3, stab, 1)
    assert nat.degree == 3
    assert gset_fingerprint(nat) == gset_fingerprint(GSetAction.natural(s3))
    triv = coset_gset(s3, s3, 4)
    assert triv.degree == 4
    assert all(img.is_identity() for img in triv.images.values())
    free2 = coset_gset(PermGroup.cyclic(2), PermGroup.generate(2, []), 2)
    assert free2.degree == 4 and free2.is_free()
    with pytest.raises(ResourceLimitError):
        coset_gset(PermGroup.symmetric(4), PermGroup.generate(4, []), 10)


def test_block_gset_type_examples():
    action = GSetAction.natural(figure_one_group())
    top = SetPartition.top(4)
    info = block_gset_type(action, top)
    assert info["action"].degree == 1
    assert info["isotypical"]
    bottom = SetPartition.bottom(4)
    info = block_gset_type(action, bottom)
    assert gset_fingerprint(info["action"]) == gset_fingerprint(action)
    # 13|24: two blocks swapped freely
    swapped = SetPartition([0, 1, 0, 1])
    info = block_gset_type(action, swapped)
    assert info["action"].degree == 2
    assert info["action"].is_free()
    with pytest.raises(DomainError):
        block_gset_type(action, SetPartition([0, 1, 1, 1]))


# -- G-partition enumeration ---------------------------------------------------------


def test_g_partition_poset_trivial_group_is_full_lattice():
    triv = PermGroup.generate(4, [])
    poset = g_partition_poset(GSetAction.natural(triv), strip_bounds=False)
    assert len(poset.poset) == 15


def test_g_partition_poset_figures():
    p1 = g_partition_poset(GSetAction.natural(figure_one_group()))
    assert sorted(p.label() for p in p1.partitions) == \
        ["1-2-34", "12-3-4", "12-34", "13-24", "14-23"]
    p2 = g_partition_poset(GSetAction.natural(figure_two_group()))
    assert sorted(p.label() for p in p2.partitions) == \
        ["1-2-3-45-6", "1-2-3-456", "123-4-5-6", "123-45-6",
         "123-456", "12345-6", "1236-4-5", "1236-45"]


def test_g_partitions_match_fixed_subposet():
    rng = random.Random(17)
    s5 = PermGroup.symmetric(5)
    for _ in range(10):
        gens = [rng.choice(s5.elements) for _ in range(2)]
        group = PermGroup.generate(5, gens)
        action = GSetAction.natural(group)
        direct = set(g_fixed_partitions(action))
        brute = {p for p in all_partitions(5)
                 if all(p.is_fixed_by(g) for g in group.generators)}
        assert direct == brute


def test_transitive_gset_partitions_match_subgroup_interval():
    # for a transitive G-set the G-partitions biject with the subgroups
    # above the point stabilizer, monotonically in both directions
    for group in (PermGroup.symmetric(3), PermGroup.symmetric(4)):
        t = tables(group)
        subs = [t.to_group(s) for s in all_subgroups(group)]
        for cl in subgroup_classes(group):
            h = cl.representative
            if group.order // h.order > 12:
                continue
            action = coset_gset(group, h, 1)
            poset = g_partition_poset(action, strip_bounds=False)
            interval = [k for k in subs if h.is_subgroup_of(k)]
            assert len(poset.poset) == len(interval)
            # the block stabilizer of the point 0 realizes the bijection
            mapping = {}
            for p in poset.partitions:
                stab = action.block_stabilizer(p.block_of(0))
                assert stab.element_set() in {k.element_set() for k in interval}
                mapping[p] = stab
            # order preserving and reflecting
            for p in poset.partitions:
                for q in poset.partitions:
                    assert p.leq(q) == mapping[p].is_subgroup_of(mapping[q])


def test_isotypical_only_filter():
    action = GSetAction.natural(figure_two_group())
    full = g_partition_poset(action, strip_bounds=True)
    iso = g_partition_poset(action, strip_bounds=True, isotypical_only=True)
    assert len(iso.poset) < len(full.poset)
    for p in iso.partitions:
        assert block_gset_type(action, p)["isotypical"]
    # the inclusion preserves the reduced Euler characteristic
    assert iso.reduced_euler == full.reduced_euler


def test_g_partition_cap():
    big = PermGroup.cyclic(15)
    with pytest.raises(ResourceLimitError):
        g_partition_poset(GSetAction.natural(big))


def test_disjoint_union_and_restrict():
    c2 = PermGroup.cyclic(2)
    two = disjoint_union(GSetAction.natural(c2), 2)
    assert two.degree == 4
    assert two.orbits() == ((0, 1), (2, 3))
    sub = two.restrict_points((0, 1))
    assert sub.degree == 2 and sub.is_free()


def test_isotropy_relations():
    rng = random.Random(41)
    action = GSetAction.natural(figure_two_group())
    group = action.group
    poset = g_partition_poset(action, strip_bounds=False)
    for _ in range(50):
        x = rng.randrange(action.degree)
        g = rng.choice(group.elements)
        p = rng.choice(poset.partitions)
        stab_x = action.stabilizer(x)
        # point stabilizer sits inside the block stabilizer
        block_stab = action.block_stabilizer(p.block_of(x))
        assert stab_x.is_subgroup_of(block_stab)
        # moving the point conjugates the stabilizer
        y = action.act(x, g)
        img = action.images[g]
        conj = frozenset(img * h * img.inverse() for h in stab_x.elements)
        assert conj == action.stabilizer(y).element_set()
