import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from twinsieve import arith


# --- factorization and primality against sympy -------------------------------


@given(st.integers(min_value=1, max_value=10**18))
@settings(max_examples=300, deadline=None)
def test_factorize_matches_sympy(n):
    f = arith.factorize(n)
    assert dict(f.factors) == sympy.factorint(n)
    assert math.prod(p**a for p, a in f.factors) == n


@pytest.mark.parametrize(
    "n",
    [
        2**61 - 1,
        (2**31 - 1) * (2**61 - 1),
        1000003 * 1000033,
        999983**2,
        10403 * 65537 * 65539,
        2**64 + 1,
        600851475143,
    ],
)
def test_factorize_hard_cases(n):
    assert dict(arith.factorize(n).factors) == sympy.factorint(n)


@given(st.integers(min_value=-5, max_value=10**20))
@settings(max_examples=500, deadline=None)
def test_is_prime_matches_sympy(n):
    assert arith.is_prime(n) == sympy.isprime(n)


def test_is_prime_strong_pseudoprimes():
    # smallest strong pseudoprimes to the first 1, 4, 9 and 12 prime bases
    for n in (2047, 3215031751, 3825123056546413051, 318665857834031151167461):
        assert not arith.is_prime(n)


def test_factored_integer_validation():
    assert int(arith.FactoredInteger(12, ((2, 2), (3, 1)))) == 12
    with pytest.raises(ValueError):
        arith.FactoredInteger(12, ((2, 1), (3, 1)))
    with pytest.raises(ValueError):
        arith.FactoredInteger(0, ())
    with pytest.raises(ValueError):
        arith.FactoredInteger(6, ((3, 1), (2, 1)))
    with pytest.raises(ValueError):
        arith.factorize(0)


# --- scalar functions ----------------------------------------------------------


def test_named_phi2_values():
    assert [arith.phi2(n) for n in (1, 2, 3, 4, 5, 6, 7, 9, 15, 30)] == [1, 1, 1, 2, 3, 1, 5, 3, 3, 3]


def test_mu2_definition():
    for n in range(1, 3000):
        assert arith.mu2(n) == sympy.mobius(n) * 2 ** arith.omega_odd(n)
    assert arith.mu2(2) == -1
    assert arith.mu2(15) == 4
    assert arith.mu2(30) == -4


coprime_pairs = st.tuples(st.integers(1, 10**6), st.integers(1, 10**6)).filter(lambda t: math.gcd(*t) == 1)


@given(coprime_pairs)
@settings(max_examples=300, deadline=None)
def test_multiplicativity(pair):
    m, n = pair
    for fn in (arith.mu2, arith.phi2, arith.mobius, arith.euler_phi):
        assert fn(m * n) == fn(m) * fn(n)


@given(st.integers(1, 3000))
@settings(max_examples=200, deadline=None)
def test_phi2_forms_agree(n):
    assert arith.phi2(n) == arith.phi2_bruteforce(n)
    assert arith.phi2_divisor_form(n) == arith.phi2(n)
    assert len(arith.admissible_residues(n)) == arith.phi2(n)


@given(st.integers(1, 10**12))
@settings(max_examples=200, deadline=None)
def test_phi2_product_form_exact(n):
    f = arith.factorize(n)
    expected = Fraction(n)
    for p in f.primes:
        expected *= Fraction(1, 2) if p == 2 else Fraction(p - 2, p)
    assert arith.phi2(f) == expected


def test_admissibility():
    assert arith.admissible_residues(4) == [1, 3]
    assert arith.admissible_residues(6) == [5]
    assert arith.admissible_residues(10) == [1, 7, 9]
    assert not arith.is_admissible(3, 9)
    assert not arith.is_admissible(1, 3)


def test_divisors():
    got = sorted(int(d) for d in arith.divisors(360))
    assert got == sympy.divisors(360)
    sq = sorted(int(d) for d in arith.divisors(360, squarefree_only=True))
    assert sq == [1, 2, 3, 5, 6, 10, 15, 30]


@given(st.integers(1, 10**9))
@settings(max_examples=100, deadline=None)
def test_divisor_sum_closed_forms(n):
    assert arith.divisor_sum_mu2(n) == arith.divisor_sum_mu2_closed(n)
    assert arith.divisor_sum_phi2(n) == arith.divisor_sum_phi2_closed(n)


# --- tables ----------------------------------------------------------------


def test_tables_match_scalars():
    n = 3000
    tables = {
        arith.mobius: arith.mobius_table(n),
        arith.euler_phi: arith.phi_table(n),
        arith.phi2: arith.phi2_table(n),
        arith.mu2: arith.mu2_table(n),
        arith.omega: arith.omega_table(n),
        arith.omega_odd: arith.omega_odd_table(n),
        arith.big_omega_odd: arith.big_omega_odd_table(n),
    }
    for fn, table in tables.items():
        assert [int(v) for v in table[1:]] == [fn(k) for k in range(1, n + 1)], fn.__name__


def test_spf_table():
    spf = arith.spf_table(1000)
    for m in range(2, 1001):
        assert spf[m] == min(sympy.primefactors(m))


def test_phi2_table_dtype_holds_large_values():
    t = arith.phi2_table(10**5)
    assert t.dtype == np.int64
    assert t[99991] == 99989  # prime
