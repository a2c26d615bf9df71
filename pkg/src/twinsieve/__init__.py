"""Twin prime sieving, counting, arithmetic functions and residue-class bias statistics."""

from .arith import FactoredInteger, factorize, is_admissible, is_prime, mobius, mu2, phi2
from .analytic import twin_constant_product, twin_constant_reciprocal_series, twin_constant_series
from .bias import BiasSample, BrunAccumulator, GapTally, ResidueTally, TransitionTally, brun_partial, scan
from .legendre import legendre_pi, legendre_pi2, solve_t
from .progressions import TwinAP, find_twin_aps, smallest_twin_coprime_above, upper_bound_check
from .sieve import PrimeStore, TwinStream, iter_twin_chunks, literal_twin_sieve, sieve_primes, twin_firsts

__version__ = "0.1.0"

__all__ = [
    "BiasSample",
    "BrunAccumulator",
    "FactoredInteger",
    "GapTally",
    "PrimeStore",
    "ResidueTally",
    "TransitionTally",
    "TwinAP",
    "TwinStream",
    "brun_partial",
    "factorize",
    "find_twin_aps",
    "is_admissible",
    "is_prime",
    "iter_twin_chunks",
    "legendre_pi",
    "legendre_pi2",
    "literal_twin_sieve",
    "mobius",
    "mu2",
    "phi2",
    "scan",
    "sieve_primes",
    "smallest_twin_coprime_above",
    "solve_t",
    "twin_constant_product",
    "twin_constant_reciprocal_series",
    "twin_constant_series",
    "twin_firsts",
    "upper_bound_check",
]
