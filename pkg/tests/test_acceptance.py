"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line."""

import math
import time

import numpy as np
import pytest

from twinsieve import analytic, arith, bias, cli, legendre, progressions, sieve


def _row(subject, x):
    return bias.scan(subject, x, 4, (3, 1), sample_every=0).row_at(x)


@pytest.mark.criterion(1)
def test_type1_row_1e7(criterion):
    t0 = time.perf_counter()
    p, t = _row("primes", 10**7), _row("twins", 10**7)
    elapsed = time.perf_counter() - t0
    got = (p.counts[3], p.delta, t.counts[3], t.delta)
    ok = got == (332398, 218, 29498, 16) and elapsed < 5
    assert criterion.result(ok, f"x=1e7 counts/deltas {got}, {elapsed:.2f}s (budget 5s)")


@pytest.mark.criterion(2)
def test_type1_row_1e8(criterion):
    t0 = time.perf_counter()
    p, t = _row("primes", 10**8), _row("twins", 10**8)
    elapsed = time.perf_counter() - t0
    got = (p.counts[3], p.delta, t.counts[3], t.delta)
    ok = got == (2880950, 446, 219893, -526) and elapsed < 60
    assert criterion.result(ok, f"x=1e8 counts/deltas {got}, {elapsed:.2f}s (budget 60s)")


@pytest.mark.criterion(3)
def test_type2_row_1e7(criterion):
    p, t = _row("primes", 10**7), _row("twins", 10**7)
    got = (p.conditional(1, 1), p.conditional(3, 1), t.conditional(1, 1), t.conditional(3, 1))
    want = (0.4350, 0.5647, 0.4769, 0.5228)
    ok = all(abs(g - w) <= 1e-4 for g, w in zip(got, want))
    shown = ", ".join(f"{g:.5f}" for g in got)
    assert criterion.result(ok, f"conditional frequencies {shown} vs {want} (tol 1e-4)")


@pytest.mark.criterion(4)
def test_type3_row_1e7(criterion):
    p, t = _row("primes", 10**7), _row("twins", 10**7)
    got = (p.gap_plus, p.gap_minus, t.gap_plus, t.gap_minus)
    want = (0.7418, 0.6739, 0.6673, 0.7103)
    ok = all(abs(g - w) <= 1e-4 for g, w in zip(got, want))
    shown = ", ".join(f"{g:.5f}" for g in got)
    assert criterion.result(ok, f"gap fractions {shown} vs {want} (tol 1e-4)")


@pytest.mark.criterion(5)
def test_twin_sieve_example(criterion):
    firsts = sieve.twin_firsts(sieve.sieve_primes(30)).firsts.tolist()
    mismatch = []
    store = sieve.sieve_primes(10**4)
    bitmap = sieve.twin_firsts(store).firsts
    literal = np.array(sieve.literal_twin_sieve(10**4))
    for N in range(1, 10**4 + 1):
        a = literal[literal <= N]
        b = bitmap[bitmap <= N]
        if not np.array_equal(a, b):
            mismatch.append(N)
    # the literal sieve at a smaller top must agree with its own truncation too
    mismatch += [N for N in (2, 3, 7, 30, 997, 9999) if sieve.literal_twin_sieve(N) != bitmap[bitmap <= N].tolist()]
    ok = firsts == [3, 5, 11, 17, 29] and not mismatch
    assert criterion.result(ok, f"firsts<30 {firsts}; literal vs bitmap mismatches for N<=1e4: {len(mismatch)}")


@pytest.mark.criterion(6)
def test_legendre_cross_validation(criterion):
    t0 = time.perf_counter()
    twins = sieve.twin_firsts(sieve.sieve_primes(2600)).firsts
    bad = []
    for x in range(9, 2501):
        expected = int((twins <= x).sum()) - int((twins <= math.isqrt(x)).sum())
        got = legendre.legendre_pi2(x)
        if got != expected:
            bad.append((x, got - expected))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    criterion.result(ok, f"{len(bad)} mismatches in [9,2500] {bad[:4]}..., {elapsed:.1f}s (budget 60s)")
    assert not bad, f"twin inclusion-exclusion differs from the sieve at {bad}"
    assert elapsed < 60


@pytest.mark.criterion(7)
def test_phi2_oracle(criterion):
    n = 10**4
    table = arith.phi2_table(n)
    bad = [k for k in range(1, n + 1) if arith.phi2(k) != arith.phi2_bruteforce(k) or table[k] != arith.phi2(k)]
    named = {k: arith.phi2(k) for k in (4, 6, 7, 9)}
    ok = not bad and named == {4: 2, 6: 1, 7: 5, 9: 3}
    assert criterion.result(ok, f"product vs brute force mismatches for n<=1e4: {len(bad)}; values {named}")


@pytest.mark.criterion(8)
def test_identity_suite(criterion):
    n = 10**4
    mu2_sum_bad = [k for k in range(1, n + 1) if arith.divisor_sum_mu2(k) != arith.divisor_sum_mu2_closed(k)]
    phi2_sum_bad = [k for k in range(1, n + 1) if arith.divisor_sum_phi2(k) != arith.divisor_sum_phi2_closed(k)]
    k_bad = analytic.K_identity_mismatches(n)
    k_spot = all(analytic.K_weighted(x) == analytic.K_via_L(x) for x in (1, 2, 3, 64, 1000, 9973, 10**4))
    bound = progressions.upper_bound_check(10**5, strict=False)
    firsts = np.concatenate(list(sieve.iter_twin_chunks(10**6)))
    crowded = [q for q in range(2, 201) if not bias.nonadmissible_class_check(10**6, q, firsts, strict=False).ok]
    ok = not (mu2_sum_bad or phi2_sum_bad or k_bad or bound.violations or crowded) and k_spot
    detail = (
        f"mu2 divisor sum {len(mu2_sum_bad)} bad, phi2 divisor sum {len(phi2_sum_bad)} bad, "
        f"K identity {len(k_bad)} bad, bound {len(bound.violations)} bad, non-admissible classes {len(crowded)} bad"
    )
    assert criterion.result(ok, detail)


@pytest.mark.criterion(9)
def test_constants(criterion):
    depth = 10**6
    routes = [
        analytic.twin_constant_product(depth).value,
        analytic.twin_constant_series(depth).value,
        analytic.twin_constant_reciprocal_series(depth).value,
    ]
    spread = max(routes) - min(routes)
    ratio = analytic.primorial_ratio(depth).value / analytic.twin_constant_product(depth).value
    dz = analytic.dirichlet_mu2(2.0, depth).value * analytic.zeta2(2.0, depth).value
    ok = spread < 1e-5 and ratio == 2.0 and abs(dz - 1) < 1e-3
    assert criterion.result(ok, f"C2 route spread {spread:.2e}, primorial ratio {ratio!r}, D*zeta2 - 1 = {dz - 1:.2e}")


@pytest.mark.criterion(10)
def test_ap_examples(criterion, capsys):
    t0 = time.perf_counter()
    assert cli.main(["ap", "--length", "6"]) == 0
    six = capsys.readouterr().out.split()
    assert cli.main(["ap", "--length", "7", "--limit", "7000000"]) == 0
    seven = capsys.readouterr().out.split()
    elapsed = time.perf_counter() - t0

    def contains(lines, a, b, length):
        # a reported maximal progression that covers the quoted one
        for line in lines:
            a2, b2, l2 = map(int, line.split(","))
            if b2 == b and (a - a2) % b == 0 and a2 <= a and a + (length - 1) * b <= a2 + (l2 - 1) * b:
                return True
        return False

    found = (contains(six, 41, 420, 6), contains(seven, 51341, 16590, 7), contains(seven, 2823809, 570570, 7))
    ok = all(found) and elapsed < 300
    assert criterion.result(ok, f"41+420k / 51341+16590k / 2823809+570570k found {found}, {elapsed:.1f}s (budget 300s)")
