"""Finite permutation groups and the subgroup machinery built on them.

Groups are given by generators on 0-indexed points and closed by breadth
first search.  Group products use the function-composition convention
(g * h)(x) = g(h(x)).  Heavy subgroup work (enumeration, tables of marks,
centralizers) runs on a Cayley table of element indices, built lazily per
group and cached.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, ResourceLimitError
from .posets import FinitePoset


class Permutation:
    """A permutation of {0, ..., degree-1} stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise DomainError(f"not a permutation of 0..{len(images)-1}: {images}")
        self.images = images

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Iterable[int]],
                    one_indexed: bool = False) -> "Permutation":
        images = list(range(degree))
        for cycle in cycles:
            cycle = [c - 1 for c in cycle] if one_indexed else list(cycle)
            for c in cycle:
                if not 0 <= c < degree:
                    raise DomainError(f"cycle point {c} out of range for degree {degree}")
            for i, c in enumerate(cycle):
                images[c] = cycle[(i + 1) % len(cycle)]
        return cls(images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (g * h)(x) = g(h(x)): apply other first
        return Permutation(tuple(self.images[i] for i in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def order(self) -> int:
        n = 1
        g = self
        ident = tuple(range(self.degree))
        while g.images != ident:
            g = g * self
            n += 1
        return n

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths including fixed points, descending."""
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)),
                            reverse=True))

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(x for x, y in enumerate(self.images) if x == y)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycle_string(self, one_indexed: bool = True) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        shift = 1 if one_indexed else 0
        return "".join("(" + " ".join(str(x + shift) for x in c) + ")"
                       for c in cycles)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({self.cycle_string(one_indexed=False)})"


class PermGroup:
    """A finite permutation group with its complete, sorted element list."""

    __slots__ = ("degree", "generators", "elements", "_eset", "_index")

    def __init__(self, degree: int, elements: Sequence[Permutation],
                 generators: Sequence[Permutation] | None = None):
        self.degree = degree
        self.elements = tuple(sorted(elements))
        self._eset = frozenset(self.elements)
        self._index = {g: i for i, g in enumerate(self.elements)}
        self.generators = tuple(generators if generators is not None
                                else self.elements)

    @classmethod
    def generate(cls, degree: int, generators: Iterable[Permutation],
                 cap: int = 50_000) -> "PermGroup":
        """Close the generators under composition (breadth first)."""
        gens = [g for g in generators if not g.is_identity()]
        for g in gens:
            if g.degree != degree:
                raise DomainError(f"generator degree {g.degree} != {degree}")
        ident = Permutation.identity(degree)
        elements = {ident}
        frontier = [ident]
        while frontier:
            new = []
            for h in frontier:
                for g in gens:
                    prod = g * h
                    if prod not in elements:
                        elements.add(prod)
                        new.append(prod)
                        if len(elements) > cap:
                            raise ResourceLimitError(
                                f"group closure exceeded cap {cap}")
            frontier = new
        return cls(degree, elements, gens or (ident,))

    @classmethod
    def symmetric(cls, n: int) -> "PermGroup":
        if n < 1:
            raise DomainError("symmetric group needs n >= 1")
        gens = []
        if n >= 2:
            gens.append(Permutation.from_cycles(n, [(0, 1)]))
        if n >= 3:
            gens.append(Permutation.from_cycles(n, [tuple(range(n))]))
        return cls.generate(n, gens)

    @classmethod
    def alternating(cls, n: int) -> "PermGroup":
        if n < 1:
            raise DomainError("alternating group needs n >= 1")
        gens = []
        if n >= 3:
            gens.append(Permutation.from_cycles(n, [(0, 1, 2)]))
        if n >= 4:
            long = tuple(range(n)) if n % 2 == 1 else tuple(range(1, n))
            gens.append(Permutation.from_cycles(n, [long]))
        return cls.generate(n, gens)

    @classmethod
    def cyclic(cls, n: int) -> "PermGroup":
        return cls.generate(n, [Permutation.from_cycles(n, [tuple(range(n))])])

    @classmethod
    def direct_product(cls, *factors: "PermGroup") -> "PermGroup":
        """Product acting on the disjoint union of the factors' points."""
        degree = sum(f.degree for f in factors)
        gens = []
        offset = 0
        for f in factors:
            for g in f.generators:
                images = list(range(degree))
                for x, y in enumerate(g.images):
                    images[offset + x] = offset + y
                gens.append(Permutation(images))
            offset += f.degree
        return cls.generate(degree, gens)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __contains__(self, g: Permutation) -> bool:
        return g in self._eset

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def index_of(self, g: Permutation) -> int:
        return self._index[g]

    def element_set(self) -> frozenset:
        return self._eset

    def subgroup(self, elements: Iterable[Permutation]) -> "PermGroup":
        elements = tuple(elements)
        if not set(elements) <= self._eset:
            raise DomainError("elements do not lie in the group")
        return PermGroup(self.degree, elements)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self._eset <= other._eset

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(g * h == h * g for g, h in
                   itertools.combinations_with_replacement(gens, 2))

    def conjugate(self, g: Permutation) -> "PermGroup":
        """The conjugate group {g h g^-1 : h in self}."""
        ginv = g.inverse()
        return PermGroup(self.degree, [g * h * ginv for h in self.elements])

    def __eq__(self, other):
        return (isinstance(other, PermGroup) and self.degree == other.degree
                and self._eset == other._eset)

    def __hash__(self):
        return hash((self.degree, self._eset))

    def __repr__(self):
        gens = ",".join(g.cycle_string() for g in self.generators[:4])
        return f"PermGroup(degree={self.degree}, order={self.order}, <{gens}>)"


# -- Cayley-table machinery (index based, for small groups) ----------------


class GroupTables:
    """Cayley table and derived data for a group, all on element indices."""

    def __init__(self, group: PermGroup):
        self.group = group
        els = group.elements
        n = len(els)
        index = group._index
        self.mul = [[0] * n for _ in range(n)]
        for i, g in enumerate(els):
            row = self.mul[i]
            for j, h in enumerate(els):
                row[j] = index[g * h]
        self.inv = [0] * n
        self.identity = index[group.identity]
        for i in range(n):
            for j in range(n):
                if self.mul[i][j] == self.identity:
                    self.inv[i] = j
                    break
        self.order_of = [els[i].order() for i in range(n)]
        self._centralizers: dict[int, frozenset[int]] = {}

    def conj(self, i: int, j: int) -> int:
        """Index of g_j g_i g_j^-1."""
        return self.mul[self.mul[j][i]][self.inv[j]]

    def centralizer(self, i: int) -> frozenset[int]:
        if i not in self._centralizers:
            mul = self.mul
            self._centralizers[i] = frozenset(
                j for j in range(len(mul)) if mul[i][j] == mul[j][i])
        return self._centralizers[i]

    def close(self, seed: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by the given element indices."""
        seed = [i for i in seed if i != self.identity]
        closed = {self.identity, *seed}
        frontier = list(closed)
        mul = self.mul
        while frontier:
            new = []
            for i in frontier:
                for g in seed:
                    k = mul[g][i]
                    if k not in closed:
                        closed.add(k)
                        new.append(k)
            frontier = new
        return frozenset(closed)

    def conjugate_set(self, sub: frozenset[int], j: int) -> frozenset[int]:
        return frozenset(self.conj(i, j) for i in sub)

    def to_group(self, sub: Iterable[int]) -> PermGroup:
        els = self.group.elements
        return PermGroup(self.group.degree, [els[i] for i in sub])


@lru_cache(maxsize=64)
def tables(group: PermGroup) -> GroupTables:
    return GroupTables(group)


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return True  # n itself is prime


@lru_cache(maxsize=32)
def all_subgroups(group: PermGroup, cap: int = 240) -> tuple[frozenset[int], ...]:
    """Every subgroup of the group, as frozensets of element indices.

    Enumerated by cyclic extension: grow each known subgroup by one element
    of prime-power order.  Complete because every subgroup arises through a
    chain of one-generator extensions.
    """
    if group.order > cap:
        raise ResourceLimitError(
            f"subgroup enumeration capped at order {cap}, group has {group.order}")
    t = tables(group)
    n = group.order
    candidates = [i for i in range(n) if _is_prime_power(t.order_of[i])]
    trivial = frozenset([t.identity])
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        sub = frontier.pop()
        # one candidate per right coset of sub is enough: <H,g> = <H,hg>
        done = set(sub)
        for g in candidates:
            if g in done:
                continue
            for h in sub:
                done.add(t.mul[h][g])
            ext = t.close([*sub, g])
            if ext not in seen:
                seen.add(ext)
                frontier.append(ext)
    return tuple(sorted(seen, key=lambda s: (len(s), sorted(s))))


@dataclass(frozen=True)
class SubgroupClass:
    """A conjugacy class of subgroups: representative, size, normalizer order."""
    representative: PermGroup
    size: int
    normalizer_order: int


def _class_orbits(t: GroupTables, subs: Iterable[frozenset[int]]):
    """Partition subgroups into conjugacy orbits; yields sorted member lists."""
    remaining = set(subs)
    while remaining:
        start = remaining.pop()
        orbit = {start}
        frontier = [start]
        while frontier:
            sub = frontier.pop()
            for j in range(len(t.mul)):
                c = t.conjugate_set(sub, j)
                if c not in orbit:
                    orbit.add(c)
                    frontier.append(c)
                    remaining.discard(c)
        yield sorted(orbit, key=sorted)


@lru_cache(maxsize=32)
def subgroup_classes(group: PermGroup, cap: int = 240) -> tuple[SubgroupClass, ...]:
    """Conjugacy classes of subgroups, ordered by decreasing subgroup order,
    the whole group first; ties broken by the smallest canonical member."""
    t = tables(group)
    subs = all_subgroups(group, cap)
    classes = []
    for members in _class_orbits(t, subs):
        rep = members[0]
        size = len(members)
        if group.order % size:
            raise DomainError("class size must divide the group order")
        classes.append((rep, size))
    classes.sort(key=lambda pair: (-len(pair[0]), sorted(pair[0])))
    return tuple(SubgroupClass(representative=t.to_group(rep),
                               size=size,
                               normalizer_order=group.order // size)
                 for rep, size in classes)


def conjugacy_data(group: PermGroup, subgroup: PermGroup,
                   want_normalizer: bool = True) -> dict:
    """Normalizer and conjugate count of a subgroup.

    The count comes from the orbit of the subgroup under conjugation, so it
    works for groups far beyond the Cayley-table cap; the normalizer element
    list is only materialized on request.
    """
    if not subgroup.is_subgroup_of(group):
        raise DomainError("not a subgroup")
    start = subgroup.element_set()
    orbit = {start}
    frontier = [start]
    gens = [(g, g.inverse()) for g in group.generators]
    while frontier:
        sub = frontier.pop()
        for g, ginv in gens:
            c = frozenset(g * h * ginv for h in sub)
            if c not in orbit:
                orbit.add(c)
                frontier.append(c)
    count = len(orbit)
    out = {"conjugate_count": count,
           "normalizer_order": group.order // count,
           "normalizer": None}
    if want_normalizer:
        members = [g for g in group.elements
                   if frozenset(g * h * g.inverse() for h in subgroup) == start]
        out["normalizer"] = PermGroup(group.degree, members)
    return out


@lru_cache(maxsize=32)
def table_of_marks(group: PermGroup) -> tuple[tuple[int, ...], ...]:
    """TOM(H, K) = number of right cosets of K fixed by H, over the
    subgroup classes in their canonical order."""
    t = tables(group)
    classes = subgroup_classes(group)
    reps = [frozenset(group.index_of(g) for g in cl.representative.elements)
            for cl in classes]
    n = group.order
    marks = []
    for hrep in reps:
        row = []
        for kset in reps:
            covered = set()
            fixed = 0
            for g in range(n):
                if g in covered:
                    continue
                coset = {t.mul[k][g] for k in kset}
                covered |= coset
                # coset Kg fixed by H iff g H g^-1 lies inside K
                if all(t.conj(h, g) in kset for h in hrep):
                    fixed += 1
            row.append(fixed)
        marks.append(tuple(row))
    return tuple(marks)


# -- commuting tuples and generating tuples --------------------------------


def commuting_tuples(group: PermGroup, r: int) -> Iterator[tuple[Permutation, ...]]:
    """All r-tuples of pairwise commuting elements, in a deterministic order."""
    if r < 1:
        raise DomainError("commuting_tuples requires r >= 1")
    t = tables(group)
    n = group.order
    els = group.elements

    def walk(prefix, pool, depth):
        if depth == r:
            yield tuple(els[i] for i in prefix)
            return
        for i in pool:
            if depth + 1 == r:
                yield tuple(els[j] for j in prefix) + (els[i],)
            else:
                nxt = [j for j in pool if j in t.centralizer(i)]
                yield from walk(prefix + (i,), nxt, depth + 1)

    yield from walk((), list(range(n)), 0)


def count_commuting_tuples(group: PermGroup, r: int) -> int:
    """|C_r(G)| without materializing the tuples."""
    if r < 1:
        raise DomainError("count requires r >= 1")
    t = tables(group)
    full = frozenset(range(group.order))

    @lru_cache(maxsize=None)
    def count(pool: frozenset, depth: int) -> int:
        if depth == 0:
            return 1
        if depth == 1:
            return len(pool)
        return sum(count(pool & t.centralizer(i), depth - 1) for i in pool)

    result = count(full, r)
    count.cache_clear()
    return result


def subgroup_lattice_moebius(group: PermGroup) -> dict[frozenset, int]:
    """mu(H, G) over the full subgroup lattice, keyed by element-index sets."""
    subs = all_subgroups(group)
    full = max(subs, key=len)
    mu = {full: 1}
    for sub in sorted(subs, key=len, reverse=True):
        if sub == full:
            continue
        total = 0
        for over in subs:
            if len(over) > len(sub) and sub < over:
                total += mu[over]
        mu[sub] = -total
    return mu


def subgroup_lattice_poset(group: PermGroup) -> FinitePoset:
    """The lattice of all subgroups under inclusion, as a FinitePoset."""
    t = tables(group)
    subs = [t.to_group(s) for s in all_subgroups(group)]
    return FinitePoset.build(subs, lambda h, k: h.element_set() <= k.element_set())


def phi_generating(group: PermGroup, r: int, method: str = "auto") -> int:
    """Number of r-tuples of elements that generate the whole group.

    method 'brute' enumerates |G|^r tuples; 'moebius' sums
    mu(B, G) |B|^r over the subgroup lattice; 'auto' picks by size.
    """
    if r < 1:
        raise DomainError("phi_generating requires r >= 1")
    if method == "auto":
        method = "brute" if group.order**r <= 200_000 else "moebius"
    if method == "moebius":
        mu = subgroup_lattice_moebius(group)
        return sum(m * len(sub) ** r for sub, m in mu.items())
    if method != "brute":
        raise DomainError(f"unknown phi method {method!r}")
    t = tables(group)
    n = group.order
    full = frozenset(range(n))

    @lru_cache(maxsize=None)
    def closes(seed: tuple[int, ...]) -> bool:
        return t.close(seed) == full

    total = 0
    for tup in itertools.product(range(n), repeat=r):
        if closes(tuple(sorted(set(tup)))):
            total += 1
    closes.cache_clear()
    return total


# -- abelian group isomorphism types ----------------------------------------


@dataclass(frozen=True)
class AbelianType:
    """Canonical primary decomposition of a finite abelian group.

    factors maps each prime to the descending partition of its exponent;
    stored as a sorted tuple of (prime, exponents) pairs.  Equality of types
    is isomorphism of groups.
    """
    factors: tuple[tuple[int, tuple[int, ...]], ...]

    @classmethod
    def make(cls, factors: Iterable[tuple[int, Iterable[int]]]) -> "AbelianType":
        canon = tuple(sorted((p, tuple(sorted(exps, reverse=True)))
                             for p, exps in factors if exps))
        return cls(canon)

    @property
    def order(self) -> int:
        total = 1
        for p, exps in self.factors:
            total *= p ** sum(exps)
        return total

    @property
    def cyclic_orders(self) -> tuple[int, ...]:
        """Orders of the canonical cyclic prime-power factors, descending."""
        return tuple(sorted((p**e for p, exps in self.factors for e in exps),
                            reverse=True))

    def label(self) -> str:
        if not self.factors:
            return "C1"
        return "x".join(f"C{m}" for m in self.cyclic_orders)

    def is_elementary(self) -> bool:
        return all(e == 1 for _, exps in self.factors for e in exps)

    @classmethod
    def from_perm_group(cls, group: PermGroup) -> "AbelianType":
        """Recover the isomorphism type from element orders."""
        if not group.is_abelian():
            raise DomainError("not an abelian group")
        orders = [g.order() for g in group.elements]
        n = group.order
        factors = []
        for p, a in _int_factorize(n):
            # f(k) = rank of elements killed by p^k; differences give the
            # conjugate of the exponent partition
            f = []
            k = 0
            while True:
                cnt = sum(1 for o in orders if pow_divides(o, p, k))
                e = _exact_log(cnt, p)
                f.append(e)
                if e == a:
                    break
                k += 1
                if k > 64:
                    raise DomainError("malformed abelian group")
            diffs = [f[i + 1] - f[i] for i in range(len(f) - 1)]
            # diffs is the conjugate partition of the exponent partition
            factors.append((p, _conjugate_partition(diffs)))
        return cls.make(factors)


def pow_divides(order: int, p: int, k: int) -> bool:
    """True when order divides p^k."""
    while k > 0 and order % p == 0:
        order //= p
        k -= 1
    return order == 1


def _int_factorize(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def _exact_log(n: int, p: int) -> int:
    e = 0
    while n > 1:
        if n % p:
            raise DomainError(f"{n} is not a power of {p}")
        n //= p
        e += 1
    return e


def _conjugate_partition(parts: Sequence[int]) -> tuple[int, ...]:
    parts = [x for x in parts if x > 0]
    if not parts:
        return ()
    out = []
    for i in range(1, max(parts) + 1):
        out.append(sum(1 for x in parts if x >= i))
    return tuple(sorted(out, reverse=True))


def _partitions_of(n: int) -> Iterator[tuple[int, ...]]:
    """All partitions of n, parts descending."""
    if n == 0:
        yield ()
        return

    def rec(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - part, part):
                yield (part,) + rest

    yield from rec(n, n)


def abelian_types_of_order(m: int) -> list[AbelianType]:
    """All isomorphism types of abelian groups of order m."""
    if m < 1:
        raise DomainError("order must be positive")
    primes = _int_factorize(m)
    choices = [[(p, parts) for parts in _partitions_of(a)] for p, a in primes]
    return [AbelianType.make(combo) for combo in itertools.product(*choices)]


def general_linear_order(d: int, p: int) -> int:
    """Order of the group of invertible d x d matrices over the p-element field."""
    total = 1
    for i in range(d):
        total *= p**d - p**i
    return total


def _abstract_elements(t: AbelianType):
    """Mixed-radix element tuples and the moduli of the cyclic factors."""
    moduli = [p**e for p, exps in t.factors for e in exps]
    elements = list(itertools.product(*[range(m) for m in moduli]))
    return moduli, elements


def _brute_aut_order(t: AbelianType, budget: int = 2_000_000) -> int | None:
    """Count automorphisms by images of the canonical generators.

    Returns None when the candidate enumeration would exceed the budget.
    """
    from math import gcd

    moduli, elements = _abstract_elements(t)
    if not moduli:
        return 1
    k = len(moduli)

    def elem_order(v):
        o = 1
        for x, m in zip(v, moduli):
            if x:
                ox = m // gcd(m, x)
                o = o * ox // gcd(o, ox)
        return o

    candidates = []
    total = 1
    for m in moduli:
        cand = [v for v in elements if m % elem_order(v) == 0]
        candidates.append(cand)
        total *= len(cand)
        if total > budget:
            return None

    n = len(elements)

    def span_is_all(images) -> bool:
        seen = {(0,) * k}
        frontier = [(0,) * k]
        while frontier:
            v = frontier.pop()
            for w in images:
                s = tuple((a + b) % m for a, b, m in zip(v, w, moduli))
                if s not in seen:
                    seen.add(s)
                    frontier.append(s)
        return len(seen) == n

    count = 0
    for images in itertools.product(*candidates):
        if span_is_all(images):
            count += 1
    return count


def abelian_invariants(t: AbelianType) -> dict:
    """Order, automorphism-group order and bottom Moebius value mu_one.

    aut_order is counted by brute force when feasible and by the product of
    general linear group orders when every primary part is elementary
    abelian; where both paths apply they must agree.
    """
    order = t.order
    formula = None
    if t.is_elementary():
        formula = 1
        for p, exps in t.factors:
            formula *= general_linear_order(len(exps), p)
    brute = _brute_aut_order(t) if order <= 64 else None
    if brute is not None and formula is not None and brute != formula:
        raise DomainError(
            f"automorphism counts disagree for {t.label()}: {brute} != {formula}")
    aut_order = brute if brute is not None else formula
    if aut_order is None:
        raise ResourceLimitError(
            f"cannot compute aut order for {t.label()} within limits")
    mu_one = 1
    for p, exps in t.factors:
        if any(e != 1 for e in exps):
            mu_one = 0
            break
        d = len(exps)
        mu_one *= (-1) ** d * p ** comb(d, 2)
    return {"order": order, "aut_order": aut_order, "mu_one": mu_one}


@dataclass(frozen=True)
class FreeAbelianClass:
    """An abelian isomorphism type with a free embedding into a symmetric group."""
    type: AbelianType
    group: PermGroup
    copies: int  # number of regular-representation blocks


def regular_representation(t: AbelianType, copies: int = 1) -> PermGroup:
    """copies disjoint right regular representations of the abelian type."""
    moduli, elements = _abstract_elements(t)
    size = len(elements)
    index = {v: i for i, v in enumerate(elements)}
    degree = size * copies
    gens = []
    for axis in range(len(moduli)):
        images = list(range(degree))
        for block in range(copies):
            off = block * size
            for v in elements:
                w = list(v)
                w[axis] = (w[axis] + 1) % moduli[axis]
                images[off + index[v]] = off + index[tuple(w)]
        gens.append(Permutation(images))
    if not gens:
        return PermGroup(degree, [Permutation.identity(degree)])
    return PermGroup.generate(degree, gens)


def free_abelian_classes(n: int) -> list[FreeAbelianClass]:
    """One entry per abelian isomorphism type of order dividing n, embedded
    in the symmetric group on n points as disjoint regular blocks (a free
    action)."""
    if n < 1:
        raise DomainError("n must be positive")
    out = []
    for m in range(1, n + 1):
        if n % m:
            continue
        for t in abelian_types_of_order(m):
            group = regular_representation(t, copies=n // m)
            out.append(FreeAbelianClass(type=t, group=group, copies=n // m))
    return out


def acts_freely(group: PermGroup) -> bool:
    """True when every non-identity element moves every point."""
    return all(not g.fixed_points() for g in group.elements
               if not g.is_identity())


def abelian_subgroups(group: PermGroup) -> list[frozenset[int]]:
    """All abelian subgroups, as index sets (grown inside centralizers)."""
    t = tables(group)
    trivial = frozenset([t.identity])
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        sub = frontier.pop()
        cz = frozenset(range(group.order))
        for i in sub:
            cz &= t.centralizer(i)
        for g in cz:
            if g in sub:
                continue
            ext = t.close([*sub, g])
            if ext not in seen:
                seen.add(ext)
                frontier.append(ext)
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def free_abelian_subgroups_of_symmetric(n: int) -> list[PermGroup]:
    """Every abelian subgroup of the symmetric group on n points whose
    action on the points is free.  Grown inside centralizers using only
    identity-or-derangement elements of uniform cycle type, which is
    exhaustive because subgroups of free abelian groups are free abelian."""
    sym = PermGroup.symmetric(n)
    candidates = [g for g in sym.elements
                  if not g.is_identity() and not g.fixed_points()
                  and len(set(len(c) for c in g.cycles())) == 1]
    ident = sym.identity
    seen = {frozenset([ident])}
    frontier = [frozenset([ident])]
    while frontier:
        sub = frontier.pop()
        for g in candidates:
            if g in sub:
                continue
            if any(g * h != h * g for h in sub):
                continue
            ext_gens = [*sub, g]
            ext = PermGroup.generate(n, ext_gens).element_set()
            if any(x.fixed_points() for x in ext if not x.is_identity()):
                continue
            if ext not in seen:
                seen.add(ext)
                frontier.append(ext)
    return [PermGroup(n, list(s)) for s in sorted(seen, key=lambda s: (len(s), sorted(s)))]
