"""Sieving twin primes two ways: by hand-style marking and by bitmap."""
import numpy as np

from twinsieve import sieve

# The marking procedure: slash multiples, strike the number two below each
# slashed one, circle what survives.
print("circled up to 30:", sieve.literal_twin_sieve(30))

# The same pairs from the packed bitmap, where bit j stands for 2j + 1.
store = sieve.sieve_primes(30)
print("bitmap up to 30: ", sieve.twin_firsts(store).firsts.tolist())

# Counts grow slowly; the ratio to pi(x) shrinks roughly like 1/ln x.
store = sieve.sieve_primes(10**7)
twins = sieve.twin_firsts(store)
print(f"\n{'x':>10} {'pi(x)':>8} {'pi2(x)':>7} {'ratio':>7}")
for x in 10 ** np.arange(2, 8):
    x = int(x)
    print(f"{x:>10} {store.pi(x):>8} {twins.pi2(x):>7} {twins.pi2(x) / store.pi(x):>7.4f}")

# Persist the bitmap so a later run can pick it up.
store.dump("/tmp/primes_1e7.tsv")
print("\nreloaded pi(1e7) =", sieve.PrimeStore.load("/tmp/primes_1e7.tsv").pi(10**7))
