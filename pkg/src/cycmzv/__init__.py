"""Exact and numeric arithmetic for multiple harmonic q-sums at roots of unity.

The package evaluates truncated multiple harmonic sums at primitive roots
of unity exactly in cyclotomic fields, reduces them into finite residue
rings over prime windows, manipulates the quasi-shuffle word algebra with
its one-parameter deformation, verifies duality and double-shuffle
relations, computes dimension tables for the weight-graded value spaces,
and approximates large-level limits with extrapolated big-float numerics.
"""

from .cyclotomic import (CycloElem, LevelMismatchError, PrimeExcludedError,
                         ResidueVector, cyclotomic_poly, embed_complex,
                         q_integer, reduce_mod, totient)
from .finite_values import (AdelicValue, RelationReport, ResidueEvaluator,
                            adelic_report_csv, cyclotomic_fmzv, fmzv,
                            fmzv_star, primes_in, truncated_harmonic_mod,
                            verify_relation)
from .limits import (LimitEstimate, half_range_sum, harmonic_numeric,
                     limit_estimate, reassembled_from_half_sums,
                     star_duality_residual, star_limit_from_plain)
from .linalg import RationalMatrix, modular_rank, rank_kernel
from .qseries import (Evaluator, degenerate_bernoulli, depth_one_poly,
                      gregory, harmonic, harmonic_star, harmonic_wordsum,
                      poly_eval, star_weight5_identity_residual)
from .relations import (DimensionRow, dimension_upper_bounds,
                        discovered_relations, kernel_probe, observed_dimension,
                        relation_family)
from .words import (WordSum, depth, dual_involution, eliminate_hbar,
                    eliminate_hbar_star, format_index, hoffman_dual,
                    indices_of_weight, parse_index, plain_to_star, q_star_stuffle,
                    q_stuffle, reduced_q_star_stuffle, reduced_q_stuffle,
                    reverse_index, star_stuffle, star_to_plain, stuffle,
                    weight, weight_raise, weight_raise_star)

__version__ = "0.1.0"
