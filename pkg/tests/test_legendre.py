import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from twinsieve import legendre, sieve

TWINS = sieve.twin_firsts(sieve.sieve_primes(10**5)).firsts
PRIMES = sieve.small_primes(10**5)


def pi2(x):
    return int(np.searchsorted(TWINS, x, side="right"))


def test_small_values():
    assert [legendre.legendre_pi2(x) for x in (9, 30, 100)] == [1, 3, 6]
    assert legendre.legendre_pi2(100, boundary="shifted") == pi2(100) - pi2(math.isqrt(102))


@given(st.integers(1, 10**6).map(lambda k: 2 * k + 1), st.sampled_from([1, 2, 3, 5, 6, 15, 35, 77, 210 // 2, 2 * 3 * 11 * 13]))
@settings(max_examples=300, deadline=None)
def test_solve_t(a, b):
    assume(math.gcd(a, b) == 1)
    sol = legendre.solve_t(a, b)
    assert (a * sol.t + 2) % b == 0
    assert sol.l == a * sol.t
    if b > 2:
        assert 0 < sol.t < b
    elif b == 1:
        assert sol.t == 1
    else:
        assert sol.t == 2


def test_solve_t_rejects_bad_input():
    with pytest.raises(ValueError):
        legendre.solve_t(4, 3)
    with pytest.raises(ValueError):
        legendre.solve_t(3, 6)
    with pytest.raises(ValueError):
        legendre.solve_t(0, 1)


def test_enumerate_pairs():
    pairs = [(p.a, p.b, p.mu) for p in legendre.enumerate_pairs(3)]
    assert pairs == [(1, 1, 1), (1, 2, -1), (3, 1, -1), (3, 2, 1), (1, 3, -1), (1, 6, 1)]
    for z in (2, 5, 13, 20):
        ps = list(legendre.enumerate_pairs(z))
        assert len(ps) == legendre.pair_count(z) == len({(p.a, p.b) for p in ps})
        P = math.prod(int(p) for p in sieve.small_primes(z))
        assert all(p.a % 2 and math.gcd(p.a, p.b) == 1 and P % p.ab == 0 for p in ps)


def test_term_table_matches_scalar_route():
    for x in range(9, 400):
        for boundary in legendre.BOUNDARIES:
            assert legendre.legendre_pi2(x, boundary) == legendre.legendre_pi2_scalar(x, boundary)


def test_shortcut_matches_direct_floor():
    for x in list(range(9, 800, 7)) + [2399, 2400, 2500]:
        assert legendre.legendre_pi2(x) == legendre.legendre_pi2(x, direct=True)


def test_shifted_boundary_exact():
    for x in range(9, 2501):
        assert legendre.legendre_pi2(x, "shifted") == pi2(x) - pi2(math.isqrt(x + 2))


def test_sqrt_boundary_exceptions_are_exactly_p_squared_minus_two():
    # m = p*p - 2 prime: for x in {p*p - 2, p*p - 1}, m + 2 = p*p escapes every prime <= sqrt(x)
    expected = set()
    for p in PRIMES[PRIMES <= 51].tolist():
        m = p * p - 2
        if m in set(PRIMES.tolist()):
            expected |= {m, m + 1}
    expected = {x for x in expected if 9 <= x <= 2500}
    diffs = {x: legendre.legendre_pi2(x) - (pi2(x) - pi2(math.isqrt(x))) for x in range(9, 2501)}
    assert {x for x, d in diffs.items() if d} == expected
    assert all(diffs[x] == 1 for x in expected)
    assert sorted(expected)[:4] == [23, 24, 47, 48]


def test_pi2_below_sqrt():
    assert legendre.pi2_below_sqrt(25) == 2  # 3, 5 (5 = sqrt 25 included)
    assert legendre.pi2_below_sqrt(24) == 1
    assert legendre.pi2_below_sqrt(23, "shifted") == 2


def test_legendre_pi():
    for x in range(4, 3000):
        assert legendre.legendre_pi(x) == int((PRIMES <= x).sum()) - int((PRIMES <= math.isqrt(x)).sum()) + 1
    assert legendre.legendre_pi(10**4) == 1229 - 25 + 1
    assert legendre.legendre_pi(10**5) == 9592 - 65 + 1


def test_budget_guard():
    with pytest.raises(legendre.TermBudgetError) as err:
        legendre.legendre_pi2(10**6)
    assert err.value.terms == legendre.pair_count(1000)
    with pytest.raises(legendre.TermBudgetError):
        legendre.legendre_pi(10**5, budget=1000)
    with pytest.raises(ValueError):
        legendre.legendre_pi2(8)
    with pytest.raises(ValueError):
        legendre.legendre_pi2(100, boundary="nope")
