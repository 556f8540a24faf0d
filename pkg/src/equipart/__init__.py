"""Exact computation and cross-verification of equivariant Euler
characteristics of partition posets of finite permutation groups."""

from .arith import (MultiplicativeFunction, a_function, b_of, c_of,
                    chi_tilde_closed, delta, dirichlet_convolve,
                    dirichlet_inverse, divisors, evaluate, factorize,
                    gaussian_binomial, id_k, moebius, named_function, one)
from .equivariant import (EquivariantResult, chi_fixed_by, chi_r_abelian,
                          chi_r_bruteforce, chi_r_closed, chi_r_isoclasses,
                          fixed_poset_euler_closed, grand_cross_check)
from .errors import (ConsistencyError, DomainError, ResourceLimitError,
                     UsageError)
from .gpartitions import (GPartitionPoset, GSetAction, SetPartition,
                          all_partitions, block_gset_type,
                          canonical_partitions, coset_gset, disjoint_union,
                          fixed_subposet, g_fixed_partitions,
                          g_partition_poset, gset_fingerprint, is_isotypical,
                          partition_lattice)
from .groups import (AbelianType, FreeAbelianClass, PermGroup, Permutation,
                     SubgroupClass, abelian_invariants, abelian_subgroups,
                     abelian_types_of_order, acts_freely, commuting_tuples,
                     conjugacy_data, count_commuting_tuples,
                     free_abelian_classes, phi_generating,
                     regular_representation, subgroup_classes,
                     subgroup_lattice_poset, table_of_marks)
from .posets import FinitePoset, is_contractor
from .stirling import (GStirlingMatrix, HigherMoebiusTable, g_stirling,
                       g_stirling_bruteforce, g_stirling_matrix,
                       higher_moebius, stirling1_signed, stirling2)

__version__ = "0.1.0"
