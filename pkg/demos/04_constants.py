"""The twin prime constant from three directions, and Mertens-type products."""
from twinsieve import analytic

for depth in (10**3, 10**4, 10**5, 10**6):
    prod = analytic.twin_constant_product(depth).value
    series = analytic.twin_constant_series(depth).value
    recip = analytic.twin_constant_reciprocal_series(depth).value
    print(f"depth {depth:>8}: product {prod:.8f}  series {series:.8f}  1/series {recip:.8f}")

print("\nprimorial ratio / product =", analytic.primorial_ratio(10**6).value / analytic.twin_constant_product(10**6).value)

for x in (10**2, 10**4, 10**6):
    m, t = analytic.mertens_product(x), analytic.twin_mertens_product(x)
    print(f"x={x:>8}: Mertens ratio {m.ratio:.6f}   twin analogue ratio {t.ratio:.6f}")

# mu2 and 2^Omega_odd are Dirichlet inverses, so the product of their series tends to 1.
for N in (10**3, 10**4, 10**5, 10**6):
    d = analytic.dirichlet_mu2(2.0, N).value * analytic.zeta2(2.0, N).value
    print(f"N={N:>8}: D(mu2, 2) * zeta2(2) - 1 = {d - 1:+.2e}")
