"""Legendre-style inclusion-exclusion counts for primes and twin primes.

For twins the sum runs over pairs ``(a, b)`` of coprime squarefree divisors
of the primorial ``P(z)``, ``a`` odd. Each term is
``mu(ab) * floor((x - l) / ab)`` where ``l = a * t`` is the least positive
multiple of ``a`` with ``b | l + 2``.

Two boundary modes are offered for the twin count:

``"sqrt"``
    ``z = sqrt(x)``, returning the sum that is meant to equal
    ``pi2(x) - pi2(sqrt(x))``. The sum also counts the non-twin ``m = p*p - 2``
    when ``x`` is ``p*p - 2`` or ``p*p - 1`` and ``m`` is prime, because
    ``m + 2 = p*p`` has no prime factor ``<= sqrt(x)``.
``"shifted"``
    ``z = sqrt(x + 2)``, which sieves ``m + 2`` up to its own square root
    and equals ``pi2(x) - pi2(sqrt(x + 2))`` for every ``x >= 9``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator

import numpy as np

from .sieve import small_primes

MAX_PI_TERMS = 1 << 22
MAX_PI2_TERMS = 2 * 3**14

BOUNDARIES = ("sqrt", "shifted")


class TermBudgetError(ValueError):
    """The requested inclusion-exclusion sum has too many terms to enumerate."""

    def __init__(self, x, terms: int, budget: int):
        shown = str(terms) if terms < 10**15 else f"about {float(terms):.3g}" if terms < 10**300 else f"about 10^{len(str(terms)) - 1}"
        super().__init__(f"x={x} needs {shown} terms (budget {budget})")
        self.terms = terms
        self.budget = budget


@dataclass(frozen=True)
class DivisorPair:
    a: int
    b: int
    mu: int

    @property
    def ab(self) -> int:
        return self.a * self.b


@dataclass(frozen=True)
class CongruenceSolution:
    t: int
    l: int  # noqa: E741


def solve_t(a: int, b: int) -> CongruenceSolution:
    """Solve ``a*t + 2 = 0 (mod b)`` with the conventions of the twin formula.

    ``0 < t < b`` when ``b > 2``; ``t = 1`` when ``b = 1``. For ``b = 2`` no
    ``t`` in ``(0, 2)`` exists (``a`` is odd), so ``t = 2`` is used, which is
    the least valid ``t`` and gives ``l = 2a``.
    """
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    if a % 2 == 0:
        raise ValueError(f"a must be odd, got {a}")
    if math.gcd(a, b) != 1:
        raise ValueError(f"a={a} and b={b} are not coprime")
    if b == 1:
        t = 1
    elif b == 2:
        t = 2
    else:
        t = (-2 * pow(a, -1, b)) % b
    return CongruenceSolution(t, a * t)


def _sqrt_floor(x: float) -> int:
    return math.isqrt(math.floor(x))


def enumerate_pairs(z: float) -> Iterator[DivisorPair]:
    """Every ``(a, b)`` with ``ab | P(z)``, ``a`` odd, each exactly once.

    Order: a ternary counter over the odd primes (none / into ``a`` / into
    ``b``, most significant digit first), with the prime 2 as the fastest
    binary digit.
    """
    zi = math.floor(z)
    primes = [int(p) for p in small_primes(zi)]
    odd = [p for p in primes if p > 2]
    twos = (1, 2) if 2 in primes else (1,)
    for digits in product(range(3), repeat=len(odd)):
        a = b = 1
        k = 0
        for p, d in zip(odd, digits):
            if d == 1:
                a *= p
                k += 1
            elif d == 2:
                b *= p
                k += 1
        for two in twos:
            yield DivisorPair(a, b * two, -1 if (k + (two == 2)) % 2 else 1)


def pair_count(z: float) -> int:
    primes = small_primes(math.floor(z))
    n_odd = int((primes > 2).sum())
    return (2 if primes.size else 1) * 3**n_odd


@dataclass(frozen=True)
class TermTable:
    """All ``(ab, l, mu)`` terms of the twin sum for one prime set.

    Terms with ``ab > cutoff`` are stored separately, sorted by ``l``: for
    ``x < ab`` their floor is ``-1`` when ``l > x`` and ``0`` otherwise
    (``0 < l <= ab``), so their total is a suffix sum of ``-mu``.
    """

    ab: np.ndarray
    l: np.ndarray  # noqa: E741
    mu: np.ndarray
    cutoff: int
    big_l: np.ndarray
    big_mu_suffix: np.ndarray
    small: np.ndarray

    def __len__(self) -> int:
        return int(self.ab.size)

    def evaluate(self, x: int, direct: bool = False) -> int:
        if direct or x >= self.cutoff:
            return int((self.mu * ((x - self.l) // self.ab)).sum())
        s = self.small
        total = int((self.mu[s] * ((x - self.l[s]) // self.ab[s])).sum())
        k = int(np.searchsorted(self.big_l, x, side="right"))
        return total - int(self.big_mu_suffix[k])


def _crt_terms(primes: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # l is the residue r mod ab with r = 0 (mod a), r = -2 (mod b), built one
    # prime at a time; r = 0 only for b in {1, 2}, where l = ab.
    mod = np.ones(1, dtype=np.int64)
    res = np.zeros(1, dtype=np.int64)
    mu = np.ones(1, dtype=np.int64)
    for p in primes:
        inv = np.zeros(p, dtype=np.int64)
        for k in range(1, p):
            inv[k] = pow(k, -1, p)
        minv = inv[mod % p]

        def lift(target: int):
            k = ((target - res) % p) * minv % p
            return res + mod * k

        if p == 2:
            parts = [(mod, res, mu), (mod * 2, lift(0), -mu)]
        else:
            parts = [(mod, res, mu), (mod * p, lift(0), -mu), (mod * p, lift(p - 2), -mu)]
        mod = np.concatenate([m for m, _, _ in parts])
        res = np.concatenate([r for _, r, _ in parts])
        mu = np.concatenate([s for _, _, s in parts])
    return mod, np.where(res == 0, mod, res), mu


@lru_cache(maxsize=8)
def _term_table(primes: tuple[int, ...]) -> TermTable:
    ab, l_values, mu = _crt_terms(primes)
    # every x served by this prime set is below the square of the next prime
    nxt = int(small_primes(2 * (primes[-1] if primes else 1) + 2)[len(primes)])
    cutoff = nxt * nxt
    small = np.flatnonzero(ab <= cutoff)
    big = np.flatnonzero(ab > cutoff)
    order = np.argsort(l_values[big], kind="stable")
    big_l = l_values[big][order]
    suffix = np.concatenate([np.cumsum(mu[big][order][::-1])[::-1], [0]])
    return TermTable(ab, l_values, mu, cutoff, big_l, suffix, small)


def pi2_terms(z: float) -> TermTable:
    """The term table for ``P(z)``, cached per prime set."""
    primes = tuple(int(p) for p in small_primes(math.floor(z)))
    return _term_table(primes)


def legendre_pi2(x: float, boundary: str = "sqrt", budget: int = MAX_PI2_TERMS, direct: bool = False) -> int:
    """Evaluate the twin Legendre sum ``sum mu(ab) floor((x - l) / ab)``.

    Floors round toward minus infinity, so a term with ``l > x`` contributes
    ``-mu(ab)``. See the module docstring for ``boundary``. ``direct=True``
    floors every term instead of using the suffix-sum shortcut.
    """
    if boundary not in BOUNDARIES:
        raise ValueError(f"boundary must be one of {BOUNDARIES}")
    if x < 9:
        raise ValueError("legendre_pi2 requires x >= 9")
    xi = math.floor(x)
    z = _sqrt_floor(x) if boundary == "sqrt" else math.isqrt(xi + 2)
    terms = pair_count(z)
    if terms > budget:
        raise TermBudgetError(x, terms, budget)
    return pi2_terms(z).evaluate(xi, direct=direct)


def legendre_pi2_scalar(x: float, boundary: str = "sqrt") -> int:
    """Same sum as :func:`legendre_pi2`, term by term via :func:`solve_t`."""
    xi = math.floor(x)
    z = _sqrt_floor(x) if boundary == "sqrt" else math.isqrt(xi + 2)
    total = 0
    for pair in enumerate_pairs(z):
        sol = solve_t(pair.a, pair.b)
        total += pair.mu * ((xi - sol.l) // pair.ab)
    return total


def legendre_pi(x: float, budget: int = MAX_PI_TERMS) -> int:
    """``sum_{d | P(sqrt x)} mu(d) floor(x / d)``, i.e. ``pi(x) - pi(sqrt x) + 1``.

    Divisors ``d > x`` contribute zero and are pruned while the products are
    built, so only squarefree ``d <= x`` are ever materialized.
    """
    if x < 4:
        raise ValueError("legendre_pi requires x >= 4")
    xi = math.floor(x)
    d = np.ones(1, dtype=np.int64)
    mu = np.ones(1, dtype=np.int64)
    for p in small_primes(_sqrt_floor(x)):
        keep = d * p <= xi
        d = np.concatenate([d, d[keep] * p])
        mu = np.concatenate([mu, -mu[keep]])
        if d.size > budget:
            raise TermBudgetError(x, int(d.size), budget)
    return int((mu * (xi // d)).sum())


def pi2_below_sqrt(x: float, boundary: str = "sqrt") -> int:
    """The subtracted count: twin firsts ``p <= sqrt(x)`` (or ``sqrt(x + 2)``)."""
    xi = math.floor(x)
    z = _sqrt_floor(x) if boundary == "sqrt" else math.isqrt(xi + 2)
    primes = small_primes(z + 2)
    firsts = primes[:-1][np.diff(primes) == 2]
    return int((firsts <= z).sum())
