"""primseq — rigorous enclosures, witness constructions and parameter
optimization for series of the form sum 1/(a (log a + x)) over primitive
sequences."""

from .errors import CapabilityError, ConstructionFailureError, ResourceLimitError
from .primes import (
    OmegaTable,
    PrimeTable,
    nth_prime,
    sieve_omega,
    sieve_primes,
)
from .sequences import (
    HomogeneousSpec,
    PrimitiveSequence,
    homogeneous_products,
    is_primitive,
    omega_class,
    prime_support,
)
from .series import (
    SeriesTarget,
    SumEnclosure,
    omega_class_series_lower,
    prime_series_enclosure,
    prime_tail_bound,
    prime_tail_bound_at_zero,
    series_enclosure,
    sum_finite,
    term_value,
)
from .witness import (
    WitnessParams,
    WitnessReport,
    c_from_beta,
    c_from_degree,
    gain_factor_beta,
    gain_factor_degree,
    locate_prime_cutoff,
    verify_chain,
    witness_degree,
)
from .optimizer import (
    OptimizationResult,
    SearchConfig,
    certify,
    optimize_theorem1,
    optimize_theorem2,
)

__version__ = "0.1.0"

__all__ = [
    "CapabilityError",
    "ConstructionFailureError",
    "ResourceLimitError",
    "OmegaTable",
    "PrimeTable",
    "nth_prime",
    "sieve_omega",
    "sieve_primes",
    "HomogeneousSpec",
    "PrimitiveSequence",
    "homogeneous_products",
    "is_primitive",
    "omega_class",
    "prime_support",
    "SeriesTarget",
    "SumEnclosure",
    "omega_class_series_lower",
    "prime_series_enclosure",
    "prime_tail_bound",
    "prime_tail_bound_at_zero",
    "series_enclosure",
    "sum_finite",
    "term_value",
    "WitnessParams",
    "WitnessReport",
    "c_from_beta",
    "c_from_degree",
    "gain_factor_beta",
    "gain_factor_degree",
    "locate_prime_cutoff",
    "verify_chain",
    "witness_degree",
    "OptimizationResult",
    "SearchConfig",
    "certify",
    "optimize_theorem1",
    "optimize_theorem2",
]
