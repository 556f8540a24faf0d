"""Classical and group-equivariant Stirling numbers.

The G-Stirling number S_G(sS, tT) counts G-fixed partitions of s disjoint
copies of the orbit S whose block G-set is t copies of the orbit T.  For
orbits S = H\\G and T = K\\G it has the exact closed form
TOM(H,K)^s / TOM(K,K)^t * S(s,t) in terms of the table of marks and the
classical Stirling number of the second kind.  Inverting the block matrix
of these numbers yields the higher Moebius numbers mu_i(H, G), which are
also computable directly as reduced Euler characteristics of G-partition
posets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ConsistencyError, DomainError, ResourceLimitError
from .gpartitions import (GSET_CAP_DEFAULT, GSetAction, coset_gset,
                          g_fixed_partitions, g_partition_poset,
                          gset_fingerprint)
from .groups import PermGroup, SubgroupClass, subgroup_classes, table_of_marks


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind: partitions of n points into k blocks."""
    if n < 0 or k < 1 or k > n:
        return 0
    if n == k or k == 1:
        return 1
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def stirling1_signed(n: int, k: int) -> int:
    """Signed Stirling number of the first kind; the (n, k) entry of the
    inverse of the second-kind triangle."""
    if n < 0 or k < 1 or k > n:
        return 0
    if n == k:
        return 1
    return stirling1_signed(n - 1, k - 1) - (n - 1) * stirling1_signed(n - 1, k)


def _class_index(group: PermGroup, subgroup: PermGroup) -> int:
    classes = subgroup_classes(group)
    target = subgroup.element_set()
    for i, cl in enumerate(classes):
        if cl.representative.order != subgroup.order:
            continue
        if cl.representative.element_set() == target:
            return i
    # fall back to conjugacy: find the class containing the subgroup
    for i, cl in enumerate(classes):
        if cl.representative.order != subgroup.order:
            continue
        for g in group.elements:
            conj = frozenset(g * h * g.inverse() for h in subgroup.elements)
            if conj == cl.representative.element_set():
                return i
    raise DomainError("subgroup does not lie in the group")


def g_stirling(group: PermGroup, h_sub: PermGroup, s: int,
               k_sub: PermGroup, t: int) -> int:
    """G-Stirling number S_G(s (H\\G), t (K\\G)) by the table-of-marks formula."""
    if s < 1 or t < 1:
        raise DomainError("multiplicities must be >= 1")
    marks = table_of_marks(group)
    hi = _class_index(group, h_sub)
    ki = _class_index(group, k_sub)
    return _g_stirling_entry(marks, hi, s, ki, t)


def _g_stirling_entry(marks, hi: int, s: int, ki: int, t: int) -> int:
    top = marks[hi][ki]
    if top == 0:
        return 0
    num = top**s * stirling2(s, t)
    den = marks[ki][ki] ** t
    q, rem = divmod(num, den)
    if rem:
        raise ConsistencyError("G-Stirling division is not exact")
    return q


def g_stirling_bruteforce(action: GSetAction, k_sub: PermGroup, t: int,
                          cap: int = GSET_CAP_DEFAULT) -> int:
    """Count G-partitions of the action whose block G-set is t copies of
    the right-coset orbit of k_sub, by direct enumeration."""
    from .gpartitions import block_gset_type
    target = gset_fingerprint(coset_gset(action.group, k_sub, t))
    count = 0
    for part in g_fixed_partitions(action, cap):
        if block_gset_type(action, part)["iso_type"] == target:
            count += 1
    return count


@dataclass(frozen=True)
class GStirlingMatrix:
    """Exact lower-triangular matrix of G-Stirling numbers of degree n.

    Rows and columns run over (subgroup class, multiplicity 1..n) with the
    classes in decreasing subgroup order, the whole group first.
    """
    group: PermGroup
    degree: int
    classes: tuple[SubgroupClass, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.classes) * self.degree

    def labels(self) -> list[str]:
        return [f"{s}({cl.representative.order})"
                for cl in self.classes for s in range(1, self.degree + 1)]

    def row_keys(self) -> list[tuple[int, int]]:
        """(class index, multiplicity) in row order."""
        return [(ci, s) for ci in range(len(self.classes))
                for s in range(1, self.degree + 1)]

    def inverse(self) -> tuple[tuple[int, ...], ...]:
        """Exact inverse by forward substitution (unit lower triangular)."""
        n = self.size
        ent = self.entries
        inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for j in range(n):
            col = inv
            for i in range(j + 1, n):
                total = 0
                for k in range(j, i):
                    if ent[i][k]:
                        total += ent[i][k] * col[k][j]
                col[i][j] = -total
        return tuple(tuple(row) for row in inv)


def g_stirling_matrix(group: PermGroup, degree: int) -> GStirlingMatrix:
    """The degree-n G-Stirling matrix over the subgroup classes."""
    if degree < 1:
        raise DomainError("degree must be >= 1")
    classes = subgroup_classes(group)
    marks = table_of_marks(group)
    rows = []
    for hi in range(len(classes)):
        for s in range(1, degree + 1):
            row = []
            for ki in range(len(classes)):
                for t in range(1, degree + 1):
                    row.append(_g_stirling_entry(marks, hi, s, ki, t))
            rows.append(tuple(row))
    matrix = GStirlingMatrix(group=group, degree=degree, classes=classes,
                             entries=tuple(rows))
    for i in range(matrix.size):
        if matrix.entries[i][i] != 1:
            raise ConsistencyError("G-Stirling diagonal entry is not 1")
        for j in range(i + 1, matrix.size):
            if matrix.entries[i][j]:
                raise ConsistencyError("G-Stirling matrix is not lower triangular")
    return matrix


@dataclass(frozen=True)
class HigherMoebiusTable:
    """mu_i(H, G) for every subgroup class H and 1 <= i <= degree."""
    group: PermGroup
    degree: int
    classes: tuple[SubgroupClass, ...]
    values: tuple[tuple[int, ...], ...]  # values[class][i-1]
    method: str

    def value(self, class_index: int, i: int) -> int:
        return self.values[class_index][i - 1]

    def minus_mu_column(self) -> tuple[int, ...]:
        """The weighting column: -mu throughout, top entry shown as 0."""
        flat = [-v for row in self.values for v in row]
        flat[0] = 0
        return tuple(flat)


def higher_moebius(group: PermGroup, degree: int,
                   method: str = "solve",
                   cap: int = GSET_CAP_DEFAULT) -> HigherMoebiusTable:
    """Higher Moebius numbers, by matrix solve or by direct poset computation.

    solve: first column of the exact inverse of the G-Stirling matrix (the
    convention mu_1(G, G) = 1 holds automatically).
    direct: mu_i(H, G) = reduced Euler characteristic of the poset of
    G-partitions of i copies of the coset orbit of H; only feasible while
    i * [G : H] stays within the point cap.
    """
    classes = subgroup_classes(group)
    if method == "solve":
        matrix = g_stirling_matrix(group, degree)
        inv = matrix.inverse()
        col = [inv[i][0] for i in range(matrix.size)]
        values = tuple(tuple(col[ci * degree + (i - 1)]
                             for i in range(1, degree + 1))
                       for ci in range(len(classes)))
        return HigherMoebiusTable(group=group, degree=degree, classes=classes,
                                  values=values, method="solve")
    if method != "direct":
        raise DomainError(f"unknown method {method!r}")
    values = []
    for ci, cl in enumerate(classes):
        index = group.order // cl.representative.order
        row = []
        for i in range(1, degree + 1):
            if ci == 0 and i == 1:
                row.append(1)  # mu_1(G, G) = 1 by convention, not chi of the
                continue       # empty poset
            if i * index > cap:
                feasible = cap // index
                raise ResourceLimitError(
                    f"direct method infeasible for multiplicity {i} at index "
                    f"{index}; feasible multiplicities are 1..{feasible}")
            action = coset_gset(group, cl.representative, i)
            row.append(g_partition_poset(action, cap=cap).reduced_euler)
        values.append(tuple(row))
    return HigherMoebiusTable(group=group, degree=degree, classes=classes,
                              values=tuple(values), method="direct")


def higher_moebius_direct_where_feasible(group: PermGroup, degree: int,
                                         cap: int = GSET_CAP_DEFAULT) -> dict:
    """Direct mu_i(H, G) for every (class, i) with i * [G:H] <= cap,
    with the mu_1(G, G) = 1 convention applied."""
    out = {}
    for ci, cl in enumerate(subgroup_classes(group)):
        index = group.order // cl.representative.order
        for i in range(1, degree + 1):
            if ci == 0 and i == 1:
                out[ci, i] = 1
            elif i * index <= cap:
                action = coset_gset(group, cl.representative, i)
                out[ci, i] = g_partition_poset(action, cap=cap).reduced_euler
    return out
