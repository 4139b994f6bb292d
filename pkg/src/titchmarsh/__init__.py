"""Shifted-prime divisor sums, their leading constants, and the sieve
machinery to verify the asymptotics at desk scale."""

from ._kernels import BACKEND, HAVE_NUMBA
from .constants import (
    CfSpec,
    ConstantResult,
    bk_product,
    cf_series,
    felix_cm,
    titchmarsh_factor,
    zeta_product_identity_gap,
    zeta_value,
)
from .functions import (
    DIVISOR,
    EULER_PHI,
    MOEBIUS,
    OMEGA,
    PILLAI,
    UNITARY_DIVISOR,
    FunctionKind,
    dirichlet_convolve,
    evaluate,
    function_table,
    k_free_divisor,
    moebius_kth,
    mu_k,
    mu_k_table,
    pillai_gcd_oracle,
    pillai_range,
    value_range,
)
from .sieve import (
    DEFAULT_SEGMENT_WIDTH,
    FactoredRange,
    PrimeList,
    Segment,
    factorize_int,
    factorize_range,
    iter_segments,
    primality_range,
    primes_up_to,
)
from .sums import (
    DecompositionReport,
    FelixRecord,
    SumRecord,
    decompose_s1_s2,
    default_checkpoints,
    felix_partial_sum,
    shifted_prime_sum,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "HAVE_NUMBA",
    "CfSpec",
    "ConstantResult",
    "bk_product",
    "cf_series",
    "felix_cm",
    "titchmarsh_factor",
    "zeta_product_identity_gap",
    "zeta_value",
    "DIVISOR",
    "EULER_PHI",
    "MOEBIUS",
    "OMEGA",
    "PILLAI",
    "UNITARY_DIVISOR",
    "FunctionKind",
    "dirichlet_convolve",
    "evaluate",
    "function_table",
    "k_free_divisor",
    "moebius_kth",
    "mu_k",
    "mu_k_table",
    "pillai_gcd_oracle",
    "pillai_range",
    "value_range",
    "DEFAULT_SEGMENT_WIDTH",
    "FactoredRange",
    "PrimeList",
    "Segment",
    "factorize_int",
    "factorize_range",
    "iter_segments",
    "primality_range",
    "primes_up_to",
    "DecompositionReport",
    "FelixRecord",
    "SumRecord",
    "decompose_s1_s2",
    "default_checkpoints",
    "felix_partial_sum",
    "shifted_prime_sum",
    "__version__",
]
