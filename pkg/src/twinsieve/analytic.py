"""Twin prime constant, Mertens-type products and Dirichlet series partial sums.

Sums are accumulated with :func:`math.fsum` (exactly rounded). Products
are multiplied directly up to ``LOG_SPACE_THRESHOLD`` factors and summed in
log space with ``fsum`` beyond that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import arith
from .sieve import small_primes

EULER_GAMMA = 0.5772156649015329
DEFAULT_DEPTH = 10**6
LOG_SPACE_THRESHOLD = 10**6

METHODS = ("euler_product", "series_mu_phi2", "series_reciprocal", "primorial_ratio", "dirichlet")


@dataclass(frozen=True)
class TruncationReport:
    """A truncated sum or product; ``depth`` is the last index or prime used."""

    value: float
    depth: int
    method: str
    partial: float | None = None  # raw partial sum when ``value`` is derived from it

    def as_dict(self) -> dict:
        out = {"method": self.method, "depth": self.depth, "value": self.value}
        if self.partial is not None:
            out["partial"] = self.partial
        return out


def _ratio_product(num: np.ndarray, den: np.ndarray) -> float:
    """``prod num_i / den_i`` in ascending input order (exact integer-valued floats)."""
    if num.size > LOG_SPACE_THRESHOLD:
        return math.exp(math.fsum(np.log1p((num - den) / den)))
    return math.prod((num / den).tolist())


def _odd_prime_product(p_limit: int) -> float:
    """``prod p(p-2)/(p-1)^2`` over odd primes ``<= p_limit``."""
    p = small_primes(p_limit)
    p = p[p > 2].astype(np.float64)
    return _ratio_product(p * (p - 2), (p - 1) ** 2)


def twin_constant_product(p_limit: int) -> TruncationReport:
    """``C2 ~ prod_{2 < p <= p_limit} p(p-2)/(p-1)^2``."""
    if p_limit < 3:
        raise ValueError("p_limit must be >= 3")
    return TruncationReport(_odd_prime_product(p_limit), p_limit, "euler_product")


def _odd_squarefree(N: int) -> tuple[np.ndarray, np.ndarray]:
    mu = arith.mobius_table(N)
    n = np.arange(N + 1)
    keep = (mu != 0) & (n % 2 == 1)
    return n[keep], mu[keep]


def twin_constant_series(N: int) -> TruncationReport:
    """``C2 ~ sum mu(n) / phi(n)^2`` over odd ``n <= N``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    n, mu = _odd_squarefree(N)
    phi = arith.phi_table(N)[n].astype(np.float64)
    return TruncationReport(math.fsum(mu / phi**2), N, "series_mu_phi2")


def twin_constant_reciprocal_series(N: int) -> TruncationReport:
    """``1/C2 ~ sum 1 / (n phi2(n))`` over odd squarefree ``n <= N``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    n, _ = _odd_squarefree(N)
    phi2 = arith.phi2_table(N)[n]
    if np.any(phi2 <= 0):
        raise ArithmeticError("phi2 vanished on an odd squarefree argument")
    s = math.fsum(1.0 / (n.astype(np.float64) * phi2.astype(np.float64)))
    return TruncationReport(1.0 / s, N, "series_reciprocal", partial=s)


def primorial_ratio(x: int) -> TruncationReport:
    """``P phi2(P) / phi(P)^2`` for the primorial ``P`` of ``x``, without forming ``P``.

    Per prime the factor is 2 for ``p = 2`` and ``p(p-2)/(p-1)^2`` otherwise,
    so the value is exactly twice :func:`twin_constant_product` at the same
    depth (scaling by 2 is exact in binary floating point).
    """
    if x < 2:
        raise ValueError("x must be >= 2")
    return TruncationReport(2.0 * _odd_prime_product(x), x, "primorial_ratio")


def primorial_ratio_exact(x: int):
    """The same ratio as an exact :class:`fractions.Fraction` (small ``x`` only)."""
    from fractions import Fraction

    P = math.prod(int(p) for p in small_primes(x))
    return Fraction(P * arith.phi2(P), arith.euler_phi(P) ** 2)


@dataclass(frozen=True)
class MertensComparison:
    x: int
    product: float
    main_term: float

    @property
    def ratio(self) -> float:
        return self.product / self.main_term


def mertens_product(x: int) -> MertensComparison:
    """``prod_{p <= x} (1 - 1/p)`` against ``e^-gamma / ln x``."""
    if x < 3:
        raise ValueError("x must be >= 3")
    p = small_primes(x).astype(np.float64)
    value = _ratio_product(p - 1, p)
    return MertensComparison(x, value, math.exp(-EULER_GAMMA) / math.log(x))


def twin_mertens_product(x: int, c2_depth: int = DEFAULT_DEPTH) -> MertensComparison:
    """``(1/2) prod_{2 < p <= x} (1 - 2/p)`` against ``2 C2 e^(-2 gamma) / ln^2 x``.

    ``C2`` comes from :func:`twin_constant_product` at ``max(x, c2_depth)``.
    """
    if x < 3:
        raise ValueError("x must be >= 3")
    p = small_primes(x)
    p = p[p > 2].astype(np.float64)
    value = 0.5 * _ratio_product(p - 2, p)
    c2 = twin_constant_product(max(x, c2_depth)).value
    return MertensComparison(x, value, 2 * c2 * math.exp(-2 * EULER_GAMMA) / math.log(x) ** 2)


# --- summatory identity for mu2 --------------------------------------------


def _liouville_omega_cumsum(n: int) -> np.ndarray:
    """``L[k] = sum_{m <= k} (-1)^omega(m)`` for ``0 <= k <= n``."""
    sign = 1 - 2 * (arith.omega_table(n).astype(np.int64) % 2)
    sign[0] = 0
    return np.cumsum(sign)


def L_summatory(x: float) -> int:
    """``L(x) = sum_{n <= x} (-1)^omega(n)``, zero for ``x < 1``."""
    if x < 1:
        return 0
    xi = math.floor(x)
    return int(_liouville_omega_cumsum(xi)[xi])


def K_weighted(x: float) -> int:
    """``sum_{n <= x} mu2(n) floor(x / n)``, summed directly."""
    if x < 1:
        return 0
    xi = math.floor(x)
    n = np.arange(1, xi + 1, dtype=np.int64)
    return int((arith.mu2_table(xi)[1:] * (xi // n)).sum())


def K_via_L(x: float) -> int:
    """``L(x) + L(x/2) + 2 L(x/4) + 4 L(x/8) + ...`` (stops once ``x / 2^k < 1``)."""
    if x < 1:
        return 0
    xi = math.floor(x)
    L = _liouville_omega_cumsum(xi)
    total = int(L[xi])
    k = 1
    while x / 2**k >= 1:
        total += 2 ** max(k - 1, 0) * int(L[math.floor(x / 2**k)])
        k += 1
    return total


# --- Dirichlet series --------------------------------------------------------


def _powers(N: int, s: float) -> np.ndarray:
    return np.arange(1, N + 1, dtype=np.float64) ** s


def dirichlet_mu2(s: float, N: int) -> TruncationReport:
    """``sum_{n <= N} mu2(n) / n^s``."""
    terms = arith.mu2_table(N)[1:] / _powers(N, s)
    return TruncationReport(math.fsum(terms), N, "dirichlet")


def zeta2(s: float, N: int) -> TruncationReport:
    """``sum_{n <= N} 2^Omega_o(n) / n^s`` (odd prime factors with multiplicity)."""
    weights = np.ldexp(1.0, arith.big_omega_odd_table(N)[1:].astype(np.int32))
    return TruncationReport(math.fsum(weights / _powers(N, s)), N, "dirichlet")


def dirichlet_phi2(s: float, N: int) -> TruncationReport:
    """``sum_{n <= N} phi2(n) / n^s``."""
    terms = arith.phi2_table(N)[1:] / _powers(N, s)
    return TruncationReport(math.fsum(terms), N, "dirichlet")


def mu2_euler_product(s: float, p_limit: int) -> float:
    """``(1 - 2^-s) prod_{2 < p <= p_limit} (1 - 2/p^s)``."""
    p = small_primes(p_limit).astype(np.float64)
    odd = p[p > 2]
    return (1 - 2.0**-s) * math.exp(math.fsum(np.log1p(-2.0 / odd**s)))


def K_identity_mismatches(x_max: int) -> list[int]:
    """Integers ``1 <= x <= x_max`` where :func:`K_weighted` and :func:`K_via_L` differ.

    Both sides are recomputed for every ``x`` from tables built once.
    """
    if x_max < 1:
        return []
    mu2 = arith.mu2_table(x_max)
    L = _liouville_omega_cumsum(x_max)
    n = np.arange(1, x_max + 1, dtype=np.int64)
    bad = []
    for x in range(1, x_max + 1):
        direct = int((mu2[1 : x + 1] * (x // n[:x])).sum())
        via = int(L[x])
        k = 1
        while x >> k:
            via += (1 << (k - 1)) * int(L[x >> k])
            k += 1
        if direct != via:
            bad.append(x)
    return bad
