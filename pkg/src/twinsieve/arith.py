"""Multiplicative arithmetic functions over factored integers.

Classical functions (mu, phi, omega) sit next to the twin-prime analogues
``mu2(n) = mu(n) * 2**omega_odd(n)`` and ``phi2(n)``, the number of residues
``a`` modulo ``n`` with ``a(a+2)`` coprime to ``n``.

Scalar functions accept either an ``int`` or a :class:`FactoredInteger`.
The ``*_table`` functions return numpy arrays indexed by ``n`` for bulk work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Union

import numpy as np

# Miller-Rabin with the first 13 prime bases is exact for n < 3.3e24;
# above that the test is probabilistic.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_TRIAL_BOUND = 1 << 16
_SPF_LIMIT = 1 << 20


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer together with its prime factorization.

    ``factors`` holds ``(prime, exponent)`` pairs in ascending prime order;
    ``n == 1`` has no factors.
    """

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"FactoredInteger requires n >= 1, got {self.n}")
        value = 1
        last = 1
        for p, a in self.factors:
            if p <= last or a < 1:
                raise ValueError(f"malformed factorization {self.factors}")
            value *= p**a
            last = p
        if value != self.n:
            raise ValueError(f"factors {self.factors} do not multiply to {self.n}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def is_even(self) -> bool:
        return self.n % 2 == 0

    def __int__(self) -> int:
        return self.n


IntLike = Union[int, FactoredInteger]


def _as_factored(x: IntLike) -> FactoredInteger:
    if isinstance(x, FactoredInteger):
        return x
    return factorize(x)


# --- primality and factorization -------------------------------------------


@lru_cache(maxsize=None)
def _trial_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in _simple_sieve(_TRIAL_BOUND))


@lru_cache(maxsize=None)
def _spf() -> np.ndarray:
    return spf_table(_SPF_LIMIT)


def _simple_sieve(n: int) -> np.ndarray:
    if n < 2:
        return np.array([], dtype=np.int64)
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask)


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test, deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    # n is odd, composite and free of small factors
    for c in range(1, 200):
        y, r, q, g = 2, 1, 1, 1
        f = lambda v: (v * v + c) % n  # noqa: E731
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = f(y)
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = f(y)
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = f(ys)
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"failed to split {n}")


def _split_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split_large(r, out)
        _split_large(r, out)
        return
    d = _pollard_brent(n)
    _split_large(d, out)
    _split_large(n // d, out)


def factorize(n: int) -> FactoredInteger:
    """Return the prime factorization of ``n >= 1``.

    Uses a smallest-prime-factor table below 2**20, then trial division by
    primes below 2**16, and finally Pollard-Brent splitting certified by a
    deterministic Miller-Rabin test.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    out: dict[int, int] = {}
    if n < _SPF_LIMIT:
        spf = _spf()
        m = n
        while m > 1:
            p = int(spf[m])
            out[p] = out.get(p, 0) + 1
            m //= p
    else:
        m = n
        for p in _trial_primes():
            if p * p > m:
                break
            if m % p == 0:
                a = 0
                while m % p == 0:
                    m //= p
                    a += 1
                out[p] = a
        if m > 1:
            if m < _TRIAL_BOUND * _TRIAL_BOUND:
                out[m] = out.get(m, 0) + 1
            else:
                _split_large(m, out)
    return FactoredInteger(n, tuple(sorted(out.items())))


# --- scalar functions ------------------------------------------------------


def mobius(f: IntLike) -> int:
    f = _as_factored(f)
    if any(a > 1 for _, a in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def euler_phi(f: IntLike) -> int:
    f = _as_factored(f)
    result = f.n
    for p, _ in f.factors:
        result = result // p * (p - 1)
    return result


def omega(f: IntLike) -> int:
    """Number of distinct prime divisors."""
    return len(_as_factored(f).factors)


def omega_odd(f: IntLike) -> int:
    """Number of distinct odd prime divisors."""
    return sum(1 for p, _ in _as_factored(f).factors if p != 2)


def big_omega_odd(f: IntLike) -> int:
    """Odd prime divisors counted with multiplicity."""
    return sum(a for p, a in _as_factored(f).factors if p != 2)


def mu2(f: IntLike) -> int:
    """Modified Moebius function ``mu(n) * 2**omega_odd(n)``."""
    f = _as_factored(f)
    m = mobius(f)
    return m << omega_odd(f) if m else 0


def phi2(f: IntLike) -> int:
    """Number of admissible residue classes modulo ``n``.

    Evaluated from the product form ``n (1 - theta/2) prod_{p>2} (1 - 2/p)``
    in exact integer arithmetic: divide by ``p`` before multiplying by
    ``p - 2`` (``p`` divides the running value at every step).
    """
    f = _as_factored(f)
    result = f.n
    for p, _ in f.factors:
        if p == 2:
            result //= 2
        else:
            result = result // p * (p - 2)
    return result


def phi2_bruteforce(n: int) -> int:
    """Count ``1 <= a <= n`` with ``gcd(a, n) == gcd(a + 2, n) == 1``."""
    if n < 1:
        raise ValueError("n must be positive")
    a = np.arange(1, n + 1, dtype=np.int64)
    ok = (np.gcd(a, n) == 1) & (np.gcd(a + 2, n) == 1)
    return int(ok.sum())


def phi2_divisor_form(f: IntLike) -> Fraction:
    """``n * sum_{d | n} mu2(d) / d`` as an exact rational."""
    f = _as_factored(f)
    total = sum(Fraction(mu2(d), int(d)) for d in divisors(f, squarefree_only=True))
    return f.n * total


def is_admissible(a: int, q: int) -> bool:
    """Whether the residue class ``a mod q`` can hold infinitely many twin firsts."""
    return math.gcd(a, q) == 1 and math.gcd(a + 2, q) == 1


def admissible_residues(q: int) -> list[int]:
    return [a for a in range(q) if is_admissible(a, q)]


def divisors(f: IntLike, squarefree_only: bool = False) -> Iterator[FactoredInteger]:
    """Yield every divisor of ``n`` as a FactoredInteger (unsorted)."""
    f = _as_factored(f)
    ranges = [range(2 if squarefree_only else a + 1) for _, a in f.factors]
    for exps in product(*ranges):
        d = 1
        fac = []
        for (p, _), e in zip(f.factors, exps):
            if e:
                d *= p**e
                fac.append((p, e))
        yield FactoredInteger(d, tuple(fac))


def divisor_sum_mu2(f: IntLike) -> int:
    """``sum_{d | n} mu2(d)`` by enumerating divisors."""
    return sum(mu2(d) for d in divisors(f))


def divisor_sum_mu2_closed(f: IntLike) -> int:
    """Closed form of :func:`divisor_sum_mu2`: 0 for even n, (-1)**omega(n) otherwise."""
    f = _as_factored(f)
    if f.is_even:
        return 0
    return -1 if len(f.factors) % 2 else 1


def divisor_sum_phi2(f: IntLike) -> int:
    """``sum_{d | n} phi2(d)`` by enumerating divisors."""
    return sum(phi2(d) for d in divisors(f))


def divisor_sum_phi2_closed(f: IntLike) -> Fraction:
    """``n * prod_{p > 2, p | n} (phi2(p) + p**-a_p) / phi(p)`` exactly."""
    f = _as_factored(f)
    result = Fraction(f.n)
    for p, a in f.factors:
        if p != 2:
            result *= (Fraction(p - 2) + Fraction(1, p**a)) / (p - 1)
    return result


# --- bulk tables -----------------------------------------------------------


def spf_table(n: int) -> np.ndarray:
    """Smallest prime factor of every ``0 <= m <= n`` (0 and 1 map to themselves)."""
    spf = np.arange(n + 1, dtype=np.int64)
    for p in range(2, math.isqrt(n) + 1):
        if spf[p] == p:
            block = spf[p * p :: p]
            hit = block == np.arange(p * p, n + 1, p)
            block[hit] = p
    return spf


def mobius_table(n: int) -> np.ndarray:
    mu = np.ones(n + 1, dtype=np.int8)
    mu[0] = 0
    for p in _simple_sieve(n):
        p = int(p)
        mu[p::p] *= -1
        if p * p <= n:
            mu[p * p :: p * p] = 0
    return mu


def omega_odd_table(n: int) -> np.ndarray:
    w = np.zeros(n + 1, dtype=np.int8)
    for p in _simple_sieve(n):
        if p != 2:
            w[p :: int(p)] += 1
    return w


def omega_table(n: int) -> np.ndarray:
    w = omega_odd_table(n)
    w[::2] += 1
    w[0] = 0
    return w


def big_omega_odd_table(n: int) -> np.ndarray:
    w = np.zeros(n + 1, dtype=np.int8)
    for p in _simple_sieve(n):
        p = int(p)
        if p == 2:
            continue
        pk = p
        while pk <= n:
            w[pk::pk] += 1
            pk *= p
    return w


def mu2_table(n: int) -> np.ndarray:
    mu = mobius_table(n).astype(np.int64)
    return mu << omega_odd_table(n).astype(np.int64)


def phi_table(n: int) -> np.ndarray:
    phi = np.arange(n + 1, dtype=np.int64)
    for p in _simple_sieve(n):
        p = int(p)
        phi[p::p] = phi[p::p] // p * (p - 1)
    return phi


def phi2_table(n: int) -> np.ndarray:
    phi = np.arange(n + 1, dtype=np.int64)
    for p in _simple_sieve(n):
        p = int(p)
        if p == 2:
            phi[::2] //= 2
        else:
            phi[p::p] = phi[p::p] // p * (p - 2)
    return phi
