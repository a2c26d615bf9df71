"""Counting twin pairs by inclusion-exclusion over divisor pairs (a, b)."""
import math

from twinsieve import legendre, sieve

twins = sieve.twin_firsts(sieve.sieve_primes(3000)).firsts


def pi2(x):
    return int((twins <= x).sum())


# The congruence a t + 2 = 0 (mod b) fixes the offset l = a t of each term.
for a, b in [(1, 3), (3, 5), (5, 21), (7, 2)]:
    print(f"a={a}, b={b}: t={legendre.solve_t(a, b).t}")

print(f"\n{'x':>5} {'sum':>4} {'sieve':>5} {'terms':>6}")
for x in (9, 30, 100, 500, 2500):
    z = math.isqrt(x)
    print(f"{x:>5} {legendre.legendre_pi2(x):>4} {pi2(x) - pi2(z):>5} {legendre.pair_count(z):>6}")

# With z = sqrt(x) the sum also keeps m = p*p - 2 when it is prime, because
# m + 2 = p*p has no prime factor <= sqrt(x). Sieving up to sqrt(x + 2) fixes it.
print("\n x   z=sqrt(x)  z=sqrt(x+2)  sieve")
for x in (22, 23, 24, 25, 47, 48, 49):
    print(f"{x:>3} {legendre.legendre_pi2(x):>9} {legendre.legendre_pi2(x, 'shifted'):>12} "
          f"{pi2(x) - pi2(math.isqrt(x)):>6}")
