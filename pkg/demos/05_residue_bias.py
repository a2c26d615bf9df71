"""Races between residue classes mod 4, for primes and for twin pairs."""
import csv
import sys

from twinsieve import bias

LIMIT = 10**8
rows = {}
for subject in bias.SUBJECTS:
    run = bias.scan(subject, LIMIT, sample_every=0, checkpoints=(10**6, 10**7, 5 * 10**7, 10**8))
    rows[subject] = run.rows

print(f"{'x':>10} {'pi(x;4;3)':>10} {'Delta':>6} {'pi2(x;4;3)':>10} {'Delta2':>7}")
for p, t in zip(rows["primes"], rows["twins"]):
    print(f"{p.x:>10} {p.counts[3]:>10} {p.delta:>6} {t.counts[3]:>10} {t.delta:>7}")

# After a pair in one class, the next pair more often sits in the other class.
print(f"\n{'x':>10} {'d(1|1)':>7} {'d(3|1)':>7} {'d2(1|1)':>8} {'d2(3|1)':>8}")
for p, t in zip(rows["primes"], rows["twins"]):
    print(f"{p.x:>10} {p.conditional(1, 1):>7.4f} {p.conditional(3, 1):>7.4f} "
          f"{t.conditional(1, 1):>8.4f} {t.conditional(3, 1):>8.4f}")

# Is the gap to the next element, plus or minus one, prime?
print(f"\n{'x':>10} {'d+':>7} {'d-':>7} {'d2+':>7} {'d2-':>7}")
for p, t in zip(rows["primes"], rows["twins"]):
    print(f"{p.x:>10} {p.gap_plus:>7.4f} {p.gap_minus:>7.4f} {t.gap_plus:>7.4f} {t.gap_minus:>7.4f}")

acc = bias.brun_partial(10**7)
print(f"\nBrun partial sums to 1e7: class 1 {acc.sums[1]:.6f}, class 3 {acc.sums[3]:.6f}, total {acc.total:.6f}")

# Plot-ready series: one CSV row per statistic per sample point.
if len(sys.argv) > 1:
    with open(sys.argv[1], "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(("x", "subject", "q", "stat_name", "class_or_pair", "value"))
        bias.scan("twins", 10**7, on_sample=lambda s: w.writerows(s.csv_rows([1])))
    print("wrote", sys.argv[1])
