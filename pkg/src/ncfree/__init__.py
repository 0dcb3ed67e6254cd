"""Exact combinatorics of second order freeness.

Non-crossing disc and annular permutations, partitioned permutations,
first and second order free cumulants over them, and exhaustive
verification of the identities tying these together.  Everything is
exact: integers, rationals, and sparse polynomials in cumulant or
moment symbols.
"""

from .annular import (
    AnnulusShape,
    Composition,
    PartitionedPermutation,
    count_snc_pairings,
    enumerate_nc,
    enumerate_psnc,
    enumerate_snc,
    fatten,
    gamma_pq,
    is_nc_disc,
    is_snc,
    kreweras,
    main_summand_filter,
    pp_leq,
    pp_product,
    tau_of,
)
from .cumulants import (
    haar_kappa_pq,
    kappa_n,
    kappa_pi,
    kappa_pq,
    kappa_vp,
    ks_product_cumulant,
    main_product_cumulant,
    mobius_annulus,
    mobius_full_cycle,
    mobius_recurrence_residual,
    oracle_product_cumulant,
    phi2_via_cumulants,
    phi_via_cumulants,
    semicircular_square_kappa,
    snc_count,
    symbolic_kappa_pq,
    symbolic_phi2_expansion,
    symbolic_phi_expansion,
)
from .draw import render_svg
from .perm import (
    Permutation,
    SetPartition,
    compose,
    full_cycle,
    metric_length,
    orbit_partition,
    partition_join,
    restrict,
    separates_points,
)
from .spaces import (
    CumulantPolynomial,
    MomentOracle,
    catalan,
    formal_moment_space,
    haar_unitary_space,
    semicircular_phi,
    semicircular_phi2,
    semicircular_phi2_closed,
    semicircular_space,
    u_word,
    x_word,
)
from .verify import SUITES, CheckResult, run_suite

__version__ = "0.1.0"

__all__ = [
    "AnnulusShape",
    "CheckResult",
    "Composition",
    "CumulantPolynomial",
    "MomentOracle",
    "PartitionedPermutation",
    "Permutation",
    "SetPartition",
    "SUITES",
    "catalan",
    "compose",
    "count_snc_pairings",
    "enumerate_nc",
    "enumerate_psnc",
    "enumerate_snc",
    "fatten",
    "formal_moment_space",
    "full_cycle",
    "gamma_pq",
    "haar_kappa_pq",
    "haar_unitary_space",
    "is_nc_disc",
    "is_snc",
    "kappa_n",
    "kappa_pi",
    "kappa_pq",
    "kappa_vp",
    "kreweras",
    "ks_product_cumulant",
    "main_product_cumulant",
    "main_summand_filter",
    "metric_length",
    "mobius_annulus",
    "mobius_full_cycle",
    "mobius_recurrence_residual",
    "oracle_product_cumulant",
    "orbit_partition",
    "partition_join",
    "phi2_via_cumulants",
    "phi_via_cumulants",
    "pp_leq",
    "pp_product",
    "render_svg",
    "restrict",
    "run_suite",
    "semicircular_phi",
    "semicircular_phi2",
    "semicircular_phi2_closed",
    "semicircular_space",
    "semicircular_square_kappa",
    "separates_points",
    "snc_count",
    "symbolic_kappa_pq",
    "symbolic_phi2_expansion",
    "symbolic_phi_expansion",
    "tau_of",
    "u_word",
    "x_word",
]
