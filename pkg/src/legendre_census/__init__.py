"""Least numbers with prescribed Legendre symbols.

Computes the least bounds by which all sign patterns (or a spanning set of
sign vectors) at the primes of an odd square-free modulus are realized by
integers in a fixed residue class, classifies moduli as good / exceptional /
ineligible, runs censuses over ranges, enumerates restricted smooth sets, and
constructively represents integers by reduced positive-definite binary
quadratic forms of small discriminant.
"""

from .arith import (
    Factorization,
    factorize,
    factorize_window,
    is_prime,
    jacobi_symbol,
    legendre_symbol,
    mod_pow,
    sieve_primes,
    sqrt_mod_4q,
    sqrt_mod_prime,
)
from .errors import CapExceededError, ContractError, DimensionLimitError
from .forms import (
    AlmostSquare,
    BinaryQuadraticForm,
    ConstructiveDiscriminant,
    LeastDiscriminantResult,
    Representation,
    UnimodularTransform,
    almost_square_decomposition,
    evaluate_form,
    is_representable,
    least_discriminant,
    reduce_form,
    represent,
)
from .leastnumbers import (
    DEFAULT_CAP,
    DIMENSION_LIMIT,
    CensusRecord,
    CensusResult,
    DescentResult,
    DescentStep,
    EligibilityStatus,
    LeastNumberResult,
    Status,
    check_generation_lemma,
    check_subspace_lemma,
    classify,
    compute_g,
    compute_n_q,
    exceptional_census,
    find_exceptional_divisor,
    least_n_for_sign,
    threshold_y,
)
from .signspace import (
    MOD8_CLASS,
    Gf2Span,
    SignVector,
    SquarefreeModulus,
    enumerate_admissible,
    theta,
    theta_bits,
)
from .smooth import ScalingRow, SmoothSetSpec, count_smooth, enumerate_smooth, smoothness_scaling_table
from .windows import (
    IntervalSearchResult,
    OmegaStatsResult,
    RoughCountResult,
    interval_search,
    interval_search_range,
    mertens_product,
    omega_stats,
    omega_stats_range,
    rough_count,
    rough_count_range,
    window_bounds,
)

__all__ = [
    "AlmostSquare",
    "BinaryQuadraticForm",
    "CapExceededError",
    "CensusRecord",
    "CensusResult",
    "ConstructiveDiscriminant",
    "ContractError",
    "DEFAULT_CAP",
    "DIMENSION_LIMIT",
    "DescentResult",
    "DescentStep",
    "DimensionLimitError",
    "EligibilityStatus",
    "Factorization",
    "Gf2Span",
    "IntervalSearchResult",
    "LeastDiscriminantResult",
    "LeastNumberResult",
    "MOD8_CLASS",
    "OmegaStatsResult",
    "Representation",
    "RoughCountResult",
    "ScalingRow",
    "SignVector",
    "SmoothSetSpec",
    "SquarefreeModulus",
    "Status",
    "UnimodularTransform",
    "almost_square_decomposition",
    "check_generation_lemma",
    "check_subspace_lemma",
    "classify",
    "compute_g",
    "compute_n_q",
    "count_smooth",
    "enumerate_admissible",
    "enumerate_smooth",
    "evaluate_form",
    "exceptional_census",
    "factorize",
    "factorize_window",
    "find_exceptional_divisor",
    "interval_search",
    "interval_search_range",
    "is_prime",
    "is_representable",
    "jacobi_symbol",
    "least_discriminant",
    "least_n_for_sign",
    "legendre_symbol",
    "mertens_product",
    "mod_pow",
    "omega_stats",
    "omega_stats_range",
    "reduce_form",
    "represent",
    "rough_count",
    "rough_count_range",
    "sieve_primes",
    "smoothness_scaling_table",
    "sqrt_mod_4q",
    "sqrt_mod_prime",
    "theta",
    "theta_bits",
    "threshold_y",
    "window_bounds",
]
