"""Partitions of finite G-sets and their posets.

A SetPartition stores the block id of every point, canonicalized by first
occurrence.  G-sets are permutation actions of a PermGroup on 0-indexed
points; the partitions fixed by the whole group are enumerated directly by
a recursive block-candidate search, which never materializes the full
Bell-sized lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, ResourceLimitError
from .groups import PermGroup, Permutation, tables
from .posets import FinitePoset

BELL_CAP_DEFAULT = 10
GSET_CAP_DEFAULT = 14

_BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570]


def bell_number(n: int) -> int:
    from math import comb
    while len(_BELL) <= n:
        m = len(_BELL)
        _BELL.append(sum(_BELL[k] * comb(m - 1, k) for k in range(m)))
    return _BELL[n]


class SetPartition:
    """A partition of {0, ..., n-1}, canonicalized by first occurrence."""

    __slots__ = ("n", "ids")

    def __init__(self, ids: Sequence[int]):
        self.n = len(ids)
        self.ids = _canonical(ids)

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "SetPartition":
        ids = [-1] * n
        for b, block in enumerate(blocks):
            for x in block:
                if ids[x] != -1:
                    raise DomainError(f"point {x} occurs in two blocks")
                ids[x] = b
        if -1 in ids:
            raise DomainError("blocks do not cover all points")
        return cls(ids)

    @classmethod
    def bottom(cls, n: int) -> "SetPartition":
        return cls(range(n))

    @classmethod
    def top(cls, n: int) -> "SetPartition":
        return cls([0] * n)

    @property
    def num_blocks(self) -> int:
        return max(self.ids) + 1 if self.n else 0

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.num_blocks)]
        for x, b in enumerate(self.ids):
            out[b].append(x)
        return tuple(tuple(b) for b in out)

    def block_of(self, x: int) -> tuple[int, ...]:
        b = self.ids[x]
        return tuple(y for y in range(self.n) if self.ids[y] == b)

    def leq(self, other: "SetPartition") -> bool:
        """Refinement order: every block of self lies inside a block of other."""
        if self.n != other.n:
            raise DomainError("partition sizes differ")
        image = {}
        for x in range(self.n):
            b = self.ids[x]
            if b in image:
                if image[b] != other.ids[x]:
                    return False
            else:
                image[b] = other.ids[x]
        return True

    def meet(self, other: "SetPartition") -> "SetPartition":
        pairs = {}
        ids = []
        for x in range(self.n):
            key = (self.ids[x], other.ids[x])
            ids.append(pairs.setdefault(key, len(pairs)))
        return SetPartition(ids)

    def join(self, other: "SetPartition") -> "SetPartition":
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for part in (self, other):
            leader = {}
            for x in range(self.n):
                b = part.ids[x]
                if b in leader:
                    union(leader[b], x)
                else:
                    leader[b] = x
        return SetPartition([find(x) for x in range(self.n)])

    def act(self, g: Permutation) -> "SetPartition":
        """Image of the partition under the permutation, with
        act(act(p, g), h) = act(p, g * h)."""
        if g.degree != self.n:
            raise DomainError(f"degree mismatch: {g.degree} != {self.n}")
        return SetPartition([self.ids[g(x)] for x in range(self.n)])

    def is_fixed_by(self, g: Permutation) -> bool:
        return self.act(g).ids == self.ids

    def label(self, one_indexed: bool = True) -> str:
        shift = 1 if one_indexed else 0
        sep = "" if self.n + shift <= 10 else ","
        return "-".join(sep.join(str(x + shift) for x in block)
                        for block in self.blocks())

    def __eq__(self, other):
        return (isinstance(other, SetPartition) and self.n == other.n
                and self.ids == other.ids)

    def __lt__(self, other):
        return (self.num_blocks, self.ids) > (other.num_blocks, other.ids)

    def __hash__(self):
        return hash((self.n, self.ids))

    def __repr__(self):
        return f"SetPartition({self.label(one_indexed=False)})"


def _canonical(ids: Sequence[int]) -> tuple[int, ...]:
    relabel = {}
    out = []
    for b in ids:
        out.append(relabel.setdefault(b, len(relabel)))
    return tuple(out)


def all_partitions(n: int, cap: int = BELL_CAP_DEFAULT) -> list[SetPartition]:
    """All partitions of an n-point set (restricted growth strings),
    finest first within a deterministic order."""
    if n > cap:
        raise ResourceLimitError(f"partition enumeration capped at n={cap}")
    out = []

    def rec(prefix: list[int], used: int):
        if len(prefix) == n:
            out.append(SetPartition(prefix))
            return
        for b in range(used + 1):
            prefix.append(b)
            rec(prefix, max(used, b + 1))
            prefix.pop()

    if n == 0:
        return [SetPartition(())]
    rec([], 0)
    out.sort()
    return out


@dataclass(frozen=True)
class GPartitionPoset:
    """A poset of set partitions under refinement with provenance flags."""
    poset: FinitePoset
    bounds_stripped: bool
    fixed_by: tuple[Permutation, ...] = ()
    isotypical_only: bool = False

    @property
    def partitions(self) -> tuple[SetPartition, ...]:
        return self.poset.elements

    @property
    def reduced_euler(self) -> int:
        return self.poset.reduced_euler

    def __len__(self):
        return len(self.poset)


def _refinement_poset(parts: Sequence[SetPartition]) -> FinitePoset:
    parts = sorted(parts)
    up = []
    for p in parts:
        mask = 0
        for j, q in enumerate(parts):
            if p.leq(q):
                mask |= 1 << j
        up.append(mask)
    return FinitePoset(parts, up, validate=False)


def partition_lattice(n: int, cap: int = BELL_CAP_DEFAULT,
                      strip_bounds: bool = False) -> GPartitionPoset:
    """The full partition lattice on n points (Bell(n) elements)."""
    parts = all_partitions(n, cap)
    if strip_bounds:
        parts = [p for p in parts if not _is_bound(p)]
    return GPartitionPoset(poset=_refinement_poset(parts),
                           bounds_stripped=strip_bounds)


def _is_bound(p: SetPartition) -> bool:
    return p.num_blocks <= 1 or p.num_blocks == p.n


def fixed_subposet(n: int, fixing: Sequence[Permutation],
                   strip_bounds: bool = True,
                   cap: int = BELL_CAP_DEFAULT) -> GPartitionPoset:
    """Partitions of n points fixed by every listed permutation."""
    parts = [p for p in all_partitions(n, cap)
             if all(p.is_fixed_by(g) for g in fixing)]
    if strip_bounds:
        parts = [p for p in parts if not _is_bound(p)]
    return GPartitionPoset(poset=_refinement_poset(parts),
                           bounds_stripped=strip_bounds,
                           fixed_by=tuple(fixing))


class GSetAction:
    """A finite right G-set: a PermGroup together with, for every group
    element, the permutation it induces on the points."""

    def __init__(self, group: PermGroup, degree: int,
                 images: dict[Permutation, Permutation]):
        self.group = group
        self.degree = degree
        self.images = images
        for g in group.elements:
            if g not in images or images[g].degree != degree:
                raise DomainError("action images must cover the whole group")

    @classmethod
    def natural(cls, group: PermGroup) -> "GSetAction":
        return cls(group, group.degree, {g: g for g in group.elements})

    @classmethod
    def trivial(cls, group: PermGroup, points: int) -> "GSetAction":
        ident = Permutation.identity(points)
        return cls(group, points, {g: ident for g in group.elements})

    def act(self, x: int, g: Permutation) -> int:
        return self.images[g](x)

    def generator_images(self) -> tuple[Permutation, ...]:
        gens = tuple(self.images[g] for g in self.group.generators)
        return gens if gens else (Permutation.identity(self.degree),)

    def orbits(self) -> tuple[tuple[int, ...], ...]:
        seen = set()
        out = []
        gens = self.generator_images()
        for start in range(self.degree):
            if start in seen:
                continue
            orbit = {start}
            frontier = [start]
            while frontier:
                x = frontier.pop()
                for g in gens:
                    y = g(x)
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            seen |= orbit
            out.append(tuple(sorted(orbit)))
        return tuple(out)

    def stabilizer(self, x: int) -> PermGroup:
        """The isotropy subgroup at the point x."""
        members = [g for g in self.group.elements if self.images[g](x) == x]
        return PermGroup(self.group.degree, members)

    def block_stabilizer(self, block: Iterable[int]) -> PermGroup:
        """Setwise stabilizer of a block of points."""
        block = frozenset(block)
        members = [g for g in self.group.elements
                   if frozenset(self.images[g](x) for x in block) == block]
        return PermGroup(self.group.degree, members)

    def restrict_group(self, subgroup: PermGroup) -> "GSetAction":
        """Same points, action restricted to a subgroup."""
        if not subgroup.is_subgroup_of(self.group):
            raise DomainError("not a subgroup of the acting group")
        return GSetAction(subgroup, self.degree,
                          {g: self.images[g] for g in subgroup.elements})

    def restrict_points(self, points: Sequence[int],
                        subgroup: PermGroup | None = None) -> "GSetAction":
        """Action of a (sub)group on an invariant subset, reindexed."""
        group = subgroup if subgroup is not None else self.group
        pos = {x: i for i, x in enumerate(points)}
        images = {}
        for g in group.elements:
            img = self.images[g]
            try:
                images[g] = Permutation([pos[img(x)] for x in points])
            except KeyError:
                raise DomainError("subset is not invariant under the group")
        return GSetAction(group, len(points), images)

    def faithful_image(self) -> PermGroup:
        """The permutation group induced on the points (kernel collapsed)."""
        return PermGroup.generate(self.degree, self.generator_images())

    def is_free(self) -> bool:
        return all(not self.images[g].fixed_points() for g in self.group.elements
                   if not self.images[g].is_identity())


def disjoint_union(action: GSetAction, copies: int) -> GSetAction:
    """The disjoint union of `copies` copies of the action."""
    if copies < 1:
        raise DomainError("need at least one copy")
    d = action.degree
    images = {}
    for g, img in action.images.items():
        out = list(range(d * copies))
        for block in range(copies):
            off = block * d
            for x in range(d):
                out[off + x] = off + img(x)
        images[g] = Permutation(out)
    return GSetAction(action.group, d * copies, images)


def coset_gset(group: PermGroup, subgroup: PermGroup, copies: int = 1,
               cap: int = GSET_CAP_DEFAULT + 50) -> GSetAction:
    """copies disjoint copies of the right-coset action of the group."""
    if not subgroup.is_subgroup_of(group):
        raise DomainError("not a subgroup")
    index = group.order // subgroup.order
    if copies < 1 or copies * index > cap:
        raise ResourceLimitError(
            f"coset action of {copies * index} points exceeds cap {cap}")
    cosets = {}
    coset_of = {}
    for g in group.elements:
        members = frozenset(h * g for h in subgroup.elements)
        if members not in cosets:
            cosets[members] = None
        coset_of[g] = members
    ordered = sorted(cosets, key=lambda c: min(c))
    idx = {c: i for i, c in enumerate(ordered)}
    reps = [min(c) for c in ordered]
    images = {}
    for g in group.elements:
        images[g] = Permutation([idx[coset_of[reps[i] * g]]
                                 for i in range(index)])
    base = GSetAction(group, index, images)
    return disjoint_union(base, copies) if copies > 1 else base


# -- direct enumeration of G-fixed partitions -------------------------------


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _apply_to_mask(img: Sequence[int], mask: int) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << img[low.bit_length() - 1]
        mask ^= low
    return out


def g_fixed_partitions(action: GSetAction,
                       cap: int = GSET_CAP_DEFAULT) -> list[SetPartition]:
    """All partitions of the point set fixed by the whole group.

    Recursive search: take the least uncovered point x, try every candidate
    block through x whose orbit under the group is a disjoint family inside
    the uncovered points, adjoin that orbit and recurse on the remainder.
    Every G-fixed partition arises exactly once this way.
    """
    n = action.degree
    if n > cap:
        raise ResourceLimitError(f"G-partition search capped at {cap} points")
    gen_imgs = [g.images for g in action.generator_images()]
    out = []
    blocks_acc: list[int] = []

    def orbit_of_block(bmask: int) -> list[int] | None:
        """The orbit blocks of bmask, or None when two of them overlap."""
        orbit = {bmask}
        frontier = [bmask]
        union = bmask
        while frontier:
            m = frontier.pop()
            for img in gen_imgs:
                nm = _apply_to_mask(img, m)
                if nm not in orbit:
                    if union & nm:
                        return None  # overlaps another orbit block
                    orbit.add(nm)
                    frontier.append(nm)
                    union |= nm
        return sorted(orbit)

    def recurse(remaining: int):
        if remaining == 0:
            ids = [0] * n
            for b, bmask in enumerate(blocks_acc):
                m = bmask
                while m:
                    low = m & -m
                    ids[low.bit_length() - 1] = b
                    m ^= low
            out.append(SetPartition(ids))
            return
        xbit = remaining & -remaining
        rest = remaining ^ xbit
        for sub in _submasks(rest):
            bmask = sub | xbit
            orbit_blocks = orbit_of_block(bmask)
            if orbit_blocks is None:
                continue
            union = 0
            for m in orbit_blocks:
                union |= m
            if union & ~remaining:
                continue
            blocks_acc.extend(orbit_blocks)
            recurse(remaining ^ union)
            del blocks_acc[len(blocks_acc) - len(orbit_blocks):]

    recurse((1 << n) - 1)
    return sorted(out)


def g_partition_poset(action: GSetAction, strip_bounds: bool = True,
                      isotypical_only: bool = False,
                      cap: int = GSET_CAP_DEFAULT) -> GPartitionPoset:
    """The poset of G-fixed partitions of the action's points."""
    parts = g_fixed_partitions(action, cap)
    if isotypical_only:
        parts = [p for p in parts
                 if block_gset_type(action, p)["isotypical"]]
    if strip_bounds:
        parts = [p for p in parts if not _is_bound(p)]
    return GPartitionPoset(poset=_refinement_poset(parts),
                           bounds_stripped=strip_bounds,
                           fixed_by=action.generator_images(),
                           isotypical_only=isotypical_only)


# -- canonical partitions and block structure -------------------------------


def _conjugacy_label(group: PermGroup, subgroup: PermGroup):
    """A label constant on conjugacy classes of subgroups."""
    best = None
    for g in group.elements:
        conj = tuple(sorted((g * h * g.inverse()).images
                            for h in subgroup.elements))
        if best is None or conj < best:
            best = conj
    return best


def canonical_partitions(action: GSetAction,
                         subgroup: PermGroup | None = None) -> dict:
    """The orbit partition omega_K and the stabilizer-class partition
    theta_G of a G-set, plus the isotypicality flag (theta_G = top)."""
    group = action.group
    restricted = action.restrict_group(subgroup) if subgroup else action
    orbit_ids = [0] * action.degree
    for b, orbit in enumerate(restricted.orbits()):
        for x in orbit:
            orbit_ids[x] = b
    omega = SetPartition(orbit_ids)

    labels = {}
    theta_ids = []
    for x in range(action.degree):
        lab = _conjugacy_label(group, action.stabilizer(x))
        theta_ids.append(labels.setdefault(lab, len(labels)))
    theta = SetPartition(theta_ids)
    return {"omega": omega, "theta": theta,
            "isotypical": theta == SetPartition.top(action.degree)}


def block_gset_type(action: GSetAction, partition: SetPartition) -> dict:
    """The induced action on the blocks of a G-fixed partition, with an
    isomorphism-type fingerprint (multiset of stabilizer classes, one per
    orbit of blocks)."""
    gens = action.generator_images()
    if not all(partition.is_fixed_by(g) for g in gens):
        raise DomainError("partition is not fixed by the group")
    blocks = partition.blocks()
    block_index = {}
    for i, block in enumerate(blocks):
        for x in block:
            block_index[x] = i
    images = {}
    for g in action.group.elements:
        img = action.images[g]
        images[g] = Permutation([block_index[img(block[0])]
                                 for block in blocks])
    block_action = GSetAction(action.group, len(blocks), images)
    fingerprint = gset_fingerprint(block_action)
    stabs = {orbit[0]: block_action.stabilizer(orbit[0])
             for orbit in block_action.orbits()}
    return {"action": block_action,
            "iso_type": fingerprint,
            "block_stabilizers": stabs,
            "isotypical": _fingerprint_isotypical(fingerprint)}


def gset_fingerprint(action: GSetAction):
    """Sorted multiset of (stabilizer class label, orbit size); two actions
    of the same group are isomorphic iff their fingerprints agree."""
    entries = []
    for orbit in action.orbits():
        label = _conjugacy_label(action.group, action.stabilizer(orbit[0]))
        entries.append((label, len(orbit)))
    return tuple(sorted(entries))


def _fingerprint_isotypical(fingerprint) -> bool:
    return len({label for label, _ in fingerprint}) <= 1


def is_isotypical(action: GSetAction) -> bool:
    """True when all point stabilizers are conjugate."""
    return _fingerprint_isotypical(gset_fingerprint(action))
