"""Arithmetic progressions of twin primes and constructive existence checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import arith
from .sieve import iter_twin_chunks, small_primes


class BoundViolation(AssertionError):
    pass


@dataclass(frozen=True, order=True)
class TwinAP:
    """Twin first members ``a + k*b`` for ``k = 0 .. length - 1``.

    ``extendable`` marks a progression that was cut by the search limit:
    the next term lies beyond it and is itself a twin first member.
    """

    a: int
    b: int
    length: int
    extendable: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.length < 3:
            raise ValueError("a progression needs at least 3 terms")

    @property
    def terms(self) -> list[int]:
        return [self.a + k * self.b for k in range(self.length)]

    def csv(self) -> str:
        return f"{self.a},{self.b},{self.length}"


def _is_twin_first(n: int) -> bool:
    return arith.is_prime(n) and arith.is_prime(n + 2)


def _twin_table(limit: int) -> tuple[np.ndarray, np.ndarray]:
    firsts = np.concatenate(list(iter_twin_chunks(limit)))
    member = np.zeros(limit + 1, dtype=bool)
    member[firsts] = True
    return firsts, member


def find_twin_aps(length: int, limit: int, max_results: int | None = None) -> list[TwinAP]:
    """Every maximal progression of twin first members ``<= limit`` with at least ``length`` terms.

    A progression is maximal when ``a - b`` is not a twin first member and
    it runs until the next term fails or passes ``limit``. Results are
    sorted by ``(a, b)``; ``max_results`` stops after that many starting
    terms have been collected.
    """
    if length < 3:
        raise ValueError("length must be >= 3")
    if limit < 3:
        return []
    firsts, member = _twin_table(limit)
    out: list[TwinAP] = []
    for i, a in enumerate(firsts.tolist()):
        bmax = (limit - a) // (length - 1)
        if bmax < 2:
            break
        b = firsts[i + 1 : int(np.searchsorted(firsts, a + bmax, side="right"))] - a
        for k in range(2, length):
            if b.size == 0:
                break
            b = b[member[a + k * b]]
        if b.size == 0:
            continue
        back = a - b
        b = b[(back < 3) | ~member[np.maximum(back, 0)]]
        found = []
        for bb in b.tolist():
            k = length
            while a + k * bb <= limit and member[a + k * bb]:
                k += 1
            found.append(TwinAP(a, bb, k, a + k * bb > limit and _is_twin_first(a + k * bb)))
        out.extend(found)
        if max_results is not None and len(out) >= max_results:
            return out[:max_results]
    return out


def validate_ap(ap: TwinAP) -> bool:
    """Re-check every term of ``ap`` with a primality test."""
    return all(_is_twin_first(t) for t in ap.terms)


def smallest_twin_coprime_above(n: int) -> int:
    """Least ``m > n`` with ``m (m + 2)`` coprime to every prime ``p <= n``.

    ``p`` divides ``m (m + 2)`` exactly when ``m mod p`` is ``0`` or ``p - 2``,
    so each candidate is tested prime by prime without forming the primorial.
    """
    if n <= 2:
        raise ValueError("n must be > 2")
    primes = small_primes(n)
    m = n + 1
    while True:
        r = m % primes
        if not np.any((r == 0) | (r == primes - 2)):
            return m
        m += 1


def twin_coprime_certificate(n: int) -> int:
    """``phi2`` of the primorial of ``n``, in exact integers.

    A positive value guarantees an admissible residue modulo the primorial
    and hence a solution for :func:`smallest_twin_coprime_above`.
    """
    primes = [int(p) for p in small_primes(n)]
    P = math.prod(primes)
    return arith.phi2(arith.FactoredInteger(P, tuple((p, 1) for p in primes)))


@dataclass
class UpperBoundReport:
    n_limit: int
    checked: int
    violations: list[tuple[int, str]]
    max_ratio: float  # largest pi2(n) / (phi2(n) + omega(n)) seen

    @property
    def ok(self) -> bool:
        return not self.violations


def upper_bound_check(n_limit: int, strict: bool = True) -> UpperBoundReport:
    """Check ``pi2(n) <= phi2(n) + omega(n)`` and ``pi2(n) <= pi(n)/2 + 1`` for ``2 < n <= n_limit``.

    ``pi2(n)`` counts twin pairs whose first member is ``<= n``.
    """
    if n_limit > 10**6:
        raise ValueError("n_limit must be <= 10**6")
    if n_limit < 3:
        return UpperBoundReport(n_limit, 0, [], 0.0)
    n = np.arange(n_limit + 1)
    primes = small_primes(n_limit + 2)
    pi = np.cumsum(np.isin(n, primes))
    firsts = primes[:-1][np.diff(primes) == 2]
    pi2 = np.cumsum(np.isin(n, firsts))
    bound = arith.phi2_table(n_limit) + arith.omega_table(n_limit).astype(np.int64)
    sel = slice(3, None)
    violations = [(int(m), "phi2") for m in n[sel][pi2[sel] > bound[sel]]]
    violations += [(int(m), "half_pi") for m in n[sel][2 * pi2[sel] > pi[sel] + 2]]
    report = UpperBoundReport(n_limit, n_limit - 2, sorted(violations), float(np.max(pi2[sel] / bound[sel])))
    if strict and violations:
        raise BoundViolation(f"bound violated at {violations[:5]}")
    return report
