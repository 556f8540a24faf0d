"""Equivariant reduced Euler characteristics of partition posets.

Four independent routes to the same number:

  bruteforce   average of fixed-poset Euler characteristics over all
               commuting r-tuples of group elements
  abelian      sum over abelian subgroups weighted by generating-tuple counts
  isoclasses   combinatorial sum over isomorphism classes of abelian groups
               of order dividing n
  closed       the exact arithmetic closed form (arith.chi_tilde_closed)

Fixed subposets are handled as bitmasks over the proper partitions of the
point set, with the Euler characteristic memoized per distinct mask.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .arith import gaussian_binomial
from .errors import DomainError, ResourceLimitError
from .gpartitions import BELL_CAP_DEFAULT, GSetAction, all_partitions, _is_bound
from .groups import (AbelianType, PermGroup, Permutation, abelian_invariants,
                     abelian_subgroups, abelian_types_of_order, acts_freely,
                     general_linear_order, phi_generating, tables)

BRUTE_GROUP_CAP_LOW_R = 120   # applies for r <= 3
BRUTE_GROUP_CAP_HIGH_R = 24   # applies for r >= 4


@dataclass(frozen=True)
class EquivariantResult:
    """One computed value of an equivariant Euler characteristic."""
    degree: int
    r: int
    method: str
    value: Fraction

    @property
    def denominator(self) -> int:
        return self.value.denominator

    @property
    def integral(self) -> bool:
        return self.value.denominator == 1

    def as_int(self) -> int:
        if not self.integral:
            raise DomainError(f"value {self.value} is not an integer")
        return int(self.value)


class PartitionEulerContext:
    """Proper partitions of an n-set with mask-based Euler characteristics."""

    def __init__(self, n: int, cap: int = BELL_CAP_DEFAULT):
        self.n = n
        self.proper = [p for p in all_partitions(n, cap) if not _is_bound(p)]
        self.index = {p: i for i, p in enumerate(self.proper)}
        size = len(self.proper)
        # strict down-sets; index order is a linear extension (finer first)
        self.down = [0] * size
        for i, p in enumerate(self.proper):
            for j in range(i + 1, size):
                if p.leq(self.proper[j]):
                    self.down[j] |= 1 << i
        self._chi_cache: dict[int, int] = {}

    def fix_mask(self, g: Permutation) -> int:
        mask = 0
        for i, p in enumerate(self.proper):
            if p.is_fixed_by(g):
                mask |= 1 << i
        return mask

    def chi_of_mask(self, mask: int) -> int:
        """Reduced Euler characteristic of the subposet given by the mask."""
        cached = self._chi_cache.get(mask)
        if cached is not None:
            return cached
        total = 1
        mu = {}
        m = mask
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            below = 1
            d = self.down[i] & mask
            while d:
                dl = d & -d
                below += mu[dl.bit_length() - 1]
                d ^= dl
            mu[i] = -below
            total += mu[i]
        result = -total
        self._chi_cache[mask] = result
        return result


@lru_cache(maxsize=8)
def _context(n: int, cap: int = BELL_CAP_DEFAULT) -> PartitionEulerContext:
    return PartitionEulerContext(n, cap)


def _element_fix_masks(action: GSetAction, ctx: PartitionEulerContext) -> list[int]:
    group = action.group
    masks = []
    distinct: dict[Permutation, int] = {}
    for g in group.elements:
        img = action.images[g]
        if img not in distinct:
            distinct[img] = ctx.fix_mask(img)
        masks.append(distinct[img])
    return masks


def chi_r_bruteforce(action: GSetAction, r: int,
                     bell_cap: int = BELL_CAP_DEFAULT,
                     group_cap: int | None = None) -> EquivariantResult:
    """Average of fixed-subposet Euler characteristics over commuting r-tuples."""
    if r < 1:
        raise DomainError("r must be >= 1")
    group = action.group
    if group_cap is None:
        group_cap = BRUTE_GROUP_CAP_LOW_R if r <= 3 else BRUTE_GROUP_CAP_HIGH_R
    if group.order > group_cap:
        raise ResourceLimitError(
            f"brute force capped at group order {group_cap} for r={r}")
    ctx = _context(action.degree, bell_cap)
    masks = _element_fix_masks(action, ctx)
    t = tables(group)
    n_el = group.order

    total = 0

    def walk(pool: frozenset, depth: int, mask: int):
        nonlocal total
        for i in sorted(pool):
            new_mask = mask & masks[i]
            if depth + 1 == r:
                total += ctx.chi_of_mask(new_mask)
            else:
                walk(pool & t.centralizer(i), depth + 1, new_mask)

    full = (1 << len(ctx.proper)) - 1
    walk(frozenset(range(n_el)), 0, full)
    return EquivariantResult(degree=action.degree, r=r, method="bruteforce",
                             value=Fraction(total, n_el))


def chi_r_abelian(action: GSetAction, r: int,
                  bell_cap: int = BELL_CAP_DEFAULT) -> EquivariantResult:
    """Sum over abelian subgroups weighted by generating r-tuple counts."""
    if r < 1:
        raise DomainError("r must be >= 1")
    group = action.group
    ctx = _context(action.degree, bell_cap)
    masks = _element_fix_masks(action, ctx)
    full = (1 << len(ctx.proper)) - 1
    t = tables(group)
    total = 0
    for sub in abelian_subgroups(group):
        mask = full
        for i in sub:
            mask &= masks[i]
        subgroup = t.to_group(sub)
        total += ctx.chi_of_mask(mask) * phi_generating(subgroup, r)
    return EquivariantResult(degree=action.degree, r=r, method="abelian",
                             value=Fraction(total, group.order))


def _phi_of_type(t: AbelianType, r: int) -> int:
    """Generating r-tuple count for an abelian type with elementary
    primary parts, as a product of subspace counts and linear group orders."""
    total = 1
    for p, exps in t.factors:
        if any(e != 1 for e in exps):
            raise DomainError("formula requires elementary primary parts")
        d = len(exps)
        total *= gaussian_binomial(r, d, p) * general_linear_order(d, p)
    return total


def chi_r_isoclasses(n: int, r: int) -> EquivariantResult:
    """Combinatorial sum over abelian isomorphism types of order dividing n."""
    if n < 2:
        raise DomainError("n must be >= 2")
    if r < 1:
        raise DomainError("r must be >= 1")
    total = Fraction(0)
    for m in range(1, n + 1):
        if n % m:
            continue
        for t in abelian_types_of_order(m):
            inv = abelian_invariants(t)
            if inv["mu_one"] == 0:
                continue
            sign = (-1) ** (n // m)
            total += sign * inv["mu_one"] * Fraction(_phi_of_type(t, r),
                                                     inv["aut_order"])
    return EquivariantResult(degree=n, r=r, method="isoclasses",
                             value=-total / n)


def chi_r_closed(n: int, r: int) -> EquivariantResult:
    """The exact arithmetic closed form."""
    from .arith import chi_tilde_closed
    return EquivariantResult(degree=n, r=r, method="closed",
                             value=Fraction(chi_tilde_closed(r, n)))


def fixed_poset_euler_closed(subgroup: PermGroup, n: int) -> int:
    """Closed form for the reduced Euler characteristic of the partitions
    fixed by a free abelian subgroup of the symmetric group on n points:
    (-1)^(m-1) * mu(1, A) * |A|^(m-1) * (m-1)! with m = n / |A|."""
    if subgroup.degree != n:
        raise DomainError("subgroup must act on the n points")
    if not subgroup.is_abelian():
        raise DomainError("subgroup must be abelian")
    if not acts_freely(subgroup):
        raise DomainError("subgroup must act freely")
    if n % subgroup.order:
        raise DomainError("a free action needs |A| dividing n")
    m = n // subgroup.order
    t = AbelianType.from_perm_group(subgroup)
    mu_one = abelian_invariants(t)["mu_one"]
    return (-1) ** (m - 1) * mu_one * subgroup.order ** (m - 1) * factorial(m - 1)


def chi_fixed_by(n: int, perms, bell_cap: int = BELL_CAP_DEFAULT) -> int:
    """Reduced Euler characteristic of the proper partitions of n points
    fixed by all the given permutations."""
    ctx = _context(n, bell_cap)
    mask = (1 << len(ctx.proper)) - 1
    for g in perms:
        mask &= ctx.fix_mask(g)
    return ctx.chi_of_mask(mask)


def grand_cross_check(n: int, r: int,
                      bell_cap: int = BELL_CAP_DEFAULT) -> dict[str, Fraction]:
    """All four methods on the natural symmetric-group action; returns the
    per-method values (the caller asserts equality)."""
    sym = PermGroup.symmetric(n)
    action = GSetAction.natural(sym)
    return {
        "bruteforce": chi_r_bruteforce(action, r, bell_cap).value,
        "abelian": chi_r_abelian(action, r, bell_cap).value,
        "isoclasses": chi_r_isoclasses(n, r).value,
        "closed": chi_r_closed(n, r).value,
    }
