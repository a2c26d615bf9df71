"""Which residue classes can hold twin pairs, and how evenly they fill up."""
from twinsieve import arith, bias

for q in (4, 6, 7, 9, 10, 30):
    print(f"q={q:2d}  phi2={arith.phi2(q)}  admissible={arith.admissible_residues(q)}")

# A class a with (a, q) > 1 or (a + 2, q) > 1 holds at most one pair.
for q in (6, 9, 10):
    report = bias.nonadmissible_class_check(10**5, q)
    print(f"q={q}: non-admissible classes in use {report.counts}, pairs {report.exceptional}")

# Among admissible classes the pairs spread out evenly: pi2(x) / pi2(x; q; a) ~ phi2(q).
for q in (4, 10, 30):
    r = bias.equidistribution_check(10**7, q)
    ratios = ", ".join(f"{a}: {v:.3f}" for a, v in r.ratios.items())
    print(f"q={q} phi2={r.phi2}  {ratios}")
