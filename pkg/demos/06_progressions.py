"""Arithmetic progressions of twin pairs and a constructive existence check."""
from twinsieve import progressions

for length, limit in [(6, 10**5), (7, 7 * 10**6)]:
    aps = progressions.find_twin_aps(length, limit)
    print(f"length >= {length} up to {limit}: {len(aps)} progressions")
    for ap in aps[:5]:
        print("   ", ap.a, "+", ap.b, "k  ->", ap.terms)

# Beyond any n there is an m with m(m + 2) free of every prime <= n.
for n in (4, 6, 10, 30, 100):
    m = progressions.smallest_twin_coprime_above(n)
    print(f"n={n:>3}: m={m} (phi2 of the primorial = {progressions.twin_coprime_certificate(n)})")

r = progressions.upper_bound_check(10**5)
print(f"\npi2(n) <= phi2(n) + omega(n) for 2 < n <= 1e5: {r.ok}, tightest ratio {r.max_ratio:.3f}")
