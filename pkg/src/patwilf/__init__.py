"""
st-polynomials of 312-avoiding pattern classes and st-Wilf equivalences.

The main entry points are :func:`st_poly_rec` (block recursion),
:func:`st_poly_brute` (enumeration oracle) and :func:`check_equiv`.
"""

from .errors import BudgetError, ContractError, DomainError
from .oracle import AvoiderTable, avoiders, st_poly_brute
from .perm import (
    D4, EMPTY, BlockDecomposition, Permutation, as_perm, avoids, block_decompose,
    contains, d4_apply, d4_compose, identity, inflate, prefix_pattern, star,
    suffix_pattern, transpose,
)
from .qpoly import ONE, Q, ZERO, QPoly
from .recursion import (
    MemoTable, PatternSet, mobius_Lr_closed, mobius_poset_oracle,
    mobius_product_closed, st_poly_rec,
)
from .statistics import (
    C213, DES, INV, MAJ, NonAdditiveStatistic, StatisticDescriptor, c213,
    combiner_of, dagger_counterexample, des, get_statistic, inv, maj,
    register_statistic, verify_dagger,
)
from .wilf import (
    EquivalenceReport, Verdict, build_multi_pair, build_pair, check_equiv,
    minimal_basis, search_nontrivial, trivial_witness,
)

__version__ = "0.1.0"
