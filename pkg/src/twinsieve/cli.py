"""Command-line entry point: ``twinsieve <subcommand> ...``.

Exit status is 0 on success, 2 on usage or validation failure and 1 on an
unexpected internal error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import analytic, arith, bias, legendre, progressions, sieve

log = logging.getLogger("twinsieve")

# limits above this need --i-have-time
LONG_RUN_LIMIT = 10**9


class ValidationFailure(Exception):
    """A check ran to completion and found a violation."""


@dataclass
class RunConfig:
    subcommand: str
    limit: int | None = None
    q: int = 4
    classes: tuple[int, int] = (3, 1)
    sample_every: int | None = None
    log_power: int | None = None
    fmt: str = "csv"
    out: str | None = None
    threads: int = 1
    segment_size: int = sieve.DEFAULT_SEGMENT
    checkpoint: str | None = None
    subject: str = "twins"

    def __post_init__(self):
        if self.limit is not None and self.limit < 2:
            raise ValueError(f"limit must be >= 2, got {self.limit}")
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")


def _int(text: str) -> int:
    """Accept ``10000000``, ``1e7`` or ``10**7``."""
    text = text.strip().replace("_", "")
    try:
        if "**" in text:
            base, exp = text.split("**")
            return int(base) ** int(exp)
        if "e" in text.lower():
            value = float(text)
            if value != int(value):
                raise ValueError
            return int(value)
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _classes(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("classes take the form a_i,a_j")
    return int(parts[0]), int(parts[1])


def _types(text: str) -> tuple[int, ...]:
    kinds = tuple(sorted({int(t) for t in text.split(",")}))
    if any(k not in (1, 2, 3) for k in kinds):
        raise argparse.ArgumentTypeError("types are 1, 2 or 3")
    return kinds


def _round(value, digits: int | None):
    if isinstance(value, float) and digits is not None and math.isfinite(value):
        return round(value, digits)
    return value


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _check_long(limit: int, args) -> None:
    if limit > LONG_RUN_LIMIT and not args.i_have_time:
        raise ValueError(f"limit {limit} exceeds {LONG_RUN_LIMIT}; pass --i-have-time to run it")


def _store(config: RunConfig, limit: int) -> sieve.PrimeStore:
    """Sieve, or reuse the bitmap saved at ``--checkpoint`` when it covers ``limit``."""
    path = config.checkpoint
    if path and Path(path).exists():
        store = sieve.PrimeStore.load(path)
        if store.limit >= limit:
            log.info("reusing sieve checkpoint %s (limit %d)", path, store.limit)
            return store
    store = sieve.sieve_primes(limit, config.segment_size, config.threads)
    if path:
        store.dump(path)
        log.info("wrote sieve checkpoint %s", path)
    return store


# --- subcommands ---------------------------------------------------------------


def cmd_sieve(args, config: RunConfig) -> int:
    _check_long(args.limit, args)
    store = _store(config, args.limit)
    with _output(args.out) as fh:
        if args.list:
            print(" ".join(map(str, store.primes(2, args.limit).tolist())), file=fh)
        else:
            print(f"pi={store.pi(args.limit)}", file=fh)
    if args.dump:
        store.dump(args.dump)
    return 0


def cmd_twins(args, config: RunConfig) -> int:
    _check_long(args.limit, args)
    firsts = np.concatenate(list(sieve.iter_twin_chunks(args.limit, config.segment_size)))
    with _output(args.out) as fh:
        if args.count:
            print(f"pi2={firsts.size}", file=fh)
        else:
            print(" ".join(map(str, firsts.tolist())), file=fh)
    return 0


def cmd_phi2(args, config: RunConfig) -> int:
    if args.n < 1:
        raise ValueError("n must be >= 1")
    print(arith.phi2(args.n))
    return 0


def cmd_count(args, config: RunConfig) -> int:
    x = args.x
    if args.method == "sieve":
        if x < 2:
            raise ValueError("x must be >= 2")
        _check_long(x, args)
        total = sum(int(c.size) for c in sieve.iter_twin_chunks(x, config.segment_size))
        print(f"pi2={total}")
        return 0
    value = legendre.legendre_pi2(x, boundary=args.boundary)
    below = legendre.pi2_below_sqrt(x, args.boundary)
    z = math.isqrt(x) if args.boundary == "sqrt" else math.isqrt(x + 2)
    print(f"pi2={value + below}")
    print(f"legendre={value}")
    print(f"pi2_below_sqrt={below}")
    print(f"terms={legendre.pair_count(z)}")
    print(f"boundary={args.boundary}")
    return 0


def cmd_constants(args, config: RunConfig) -> int:
    depth = args.depth
    reports = [
        analytic.twin_constant_product(depth),
        analytic.twin_constant_series(depth),
        analytic.twin_constant_reciprocal_series(depth),
        analytic.primorial_ratio(depth),
    ]
    with _output(args.out) as fh:
        for r in reports:
            print(json.dumps({"method": r.method, "depth": r.depth, "value": r.value}), file=fh)
        d = analytic.dirichlet_mu2(2.0, depth).value * analytic.zeta2(2.0, depth).value
        print(json.dumps({"method": "dirichlet_mu2_times_zeta2", "depth": depth, "value": d}), file=fh)
    return 0


CSV_HEADER = ("x", "subject", "q", "stat_name", "class_or_pair", "value")


def cmd_bias(args, config: RunConfig) -> int:
    _check_long(config.limit, args)
    kinds = args.type
    digits = None if args.digits < 0 else args.digits
    store = _store(config, config.limit) if config.checkpoint else None
    with _output(config.out) as fh:
        writer = csv.writer(fh, lineterminator="\n") if config.fmt == "csv" else None
        if writer:
            writer.writerow(CSV_HEADER)

        def emit(sample: bias.BiasSample) -> None:
            for row in sample.csv_rows(kinds):
                writer.writerow(row[:-1] + (_round(row[-1], digits),))

        run = bias.scan(
            config.subject, config.limit, config.q, config.classes, config.sample_every,
            log_power=config.log_power, segment_size=config.segment_size, store=store,
            on_sample=emit if writer else (lambda s: None),
        )
        if writer:
            for row in run.rows:
                emit(row)
            return 0
        final = run.row_at(config.limit)
        summary = {
            "subject": run.subject,
            "limit": run.limit,
            "q": run.q,
            "classes": list(run.classes),
            "types": list(kinds),
            "log_power": final.log_power,
            "scale": final.scale,
            **{k: _round(v, digits) for k, v in final.stats(kinds).items()},
            "rows": [
                {"x": r.x, **{k: _round(v, digits) for k, v in r.stats(kinds).items()}} for r in run.rows
            ],
        }
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    return 0


def cmd_brun(args, config: RunConfig) -> int:
    _check_long(config.limit, args)
    acc = bias.brun_partial(config.limit, config.q, config.segment_size)
    with _output(config.out) as fh:
        print("class,sum", file=fh)
        for a, s in acc.sums.items():
            print(f"{a},{s:.6f}", file=fh)
        print(f"total,{acc.total:.6f}", file=fh)
    return 0


def cmd_ap(args, config: RunConfig) -> int:
    _check_long(config.limit, args)
    aps = progressions.find_twin_aps(args.length, config.limit, args.max_results)
    with _output(config.out) as fh:
        for ap in aps:
            print(ap.csv(), file=fh)
    return 0


def cmd_check(args, config: RunConfig) -> int:
    failures = []
    firsts = np.concatenate(list(sieve.iter_twin_chunks(args.twin_limit)))
    for q in range(2, args.q_max + 1):
        report = bias.nonadmissible_class_check(args.twin_limit, q, firsts, strict=False)
        if not report.ok:
            failures.append(f"non-admissible class with several pairs: q={q} {report.counts}")
    print(f"non_admissible: q<={args.q_max}, limit={args.twin_limit}: {'ok' if not failures else 'FAIL'}")

    bound = progressions.upper_bound_check(args.n_limit, strict=False)
    print(f"upper_bound: 2<n<={args.n_limit}: {'ok' if bound.ok else 'FAIL'} ({len(bound.violations)} violations)")
    if not bound.ok:
        failures.append(f"twin count bound violated at {bound.violations[:5]}")

    bad = analytic.K_identity_mismatches(args.x_max)
    print(f"K_identity: x<={args.x_max}: {'ok' if not bad else 'FAIL'} ({len(bad)} mismatches)")
    if bad:
        failures.append(f"K identity mismatches at {bad[:5]}")
    if failures:
        raise ValidationFailure("; ".join(failures))
    return 0


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    env_threads = os.environ.get("TWINSIEVE_THREADS", "1")
    common.add_argument("--threads", type=int, default=int(env_threads) if env_threads.isdigit() else 1,
                        help="worker threads for sieving (default: $TWINSIEVE_THREADS or 1)")
    common.add_argument("--segment-size", type=_int, default=sieve.DEFAULT_SEGMENT,
                        help="sieve segment length, a power of two >= 128")
    common.add_argument("--checkpoint", help="sieve bitmap file to reuse or create")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--i-have-time", action="store_true",
                        help=f"allow limits above {LONG_RUN_LIMIT}")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="twinsieve", description="Twin prime sieving, counting and bias statistics.")
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("sieve", parents=[common], help="count (or list) primes up to a limit")
    s.add_argument("--limit", type=_int, required=True)
    s.add_argument("--list", action="store_true", help="print the primes instead of their count")
    s.add_argument("--dump", help="save the bitmap to this file")
    s.set_defaults(func=cmd_sieve)

    s = sub.add_parser("twins", parents=[common], help="list first members of twin pairs up to a limit")
    s.add_argument("--limit", type=_int, required=True)
    s.add_argument("--count", action="store_true", help="print only the number of pairs")
    s.set_defaults(func=cmd_twins)

    s = sub.add_parser("phi2", parents=[common], help="number of admissible residue classes modulo n")
    s.add_argument("n", type=_int)
    s.set_defaults(func=cmd_phi2)

    s = sub.add_parser("count", parents=[common], help="count twin pairs by sieve or inclusion-exclusion")
    s.add_argument("--method", choices=("sieve", "legendre"), default="sieve")
    s.add_argument("--boundary", choices=legendre.BOUNDARIES, default="sqrt")
    s.add_argument("x", type=_int)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("constants", parents=[common], help="twin prime constant by several routes (JSON lines)")
    s.add_argument("--depth", type=_int, default=analytic.DEFAULT_DEPTH)
    s.set_defaults(func=cmd_constants)

    s = sub.add_parser("bias", parents=[common], help="residue-class bias statistics (CSV or JSON)")
    s.add_argument("--type", type=_types, default=(1, 2, 3), help="comma list from {1,2,3}")
    s.add_argument("--subject", choices=bias.SUBJECTS, default="twins")
    s.add_argument("--q", type=int, default=4)
    s.add_argument("--classes", type=_classes, default=(3, 1), help="a_i,a_j (default 3,1)")
    s.add_argument("--limit", type=_int, required=True)
    s.add_argument("--sample-every", type=int, help="default 50 for primes, 25 for twins")
    s.add_argument("--log-power", type=int, choices=(1, 2), help="exponent of ln x in the scaled difference")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--digits", type=int, default=4, help="decimals for real values; -1 keeps full precision")
    s.set_defaults(func=cmd_bias)

    s = sub.add_parser("brun", parents=[common], help="Brun partial sums split by class of the first member")
    s.add_argument("--limit", type=_int, required=True)
    s.add_argument("--q", type=int, default=4)
    s.set_defaults(func=cmd_brun)

    s = sub.add_parser("ap", parents=[common], help="arithmetic progressions of twin first members")
    s.add_argument("--length", type=int, required=True)
    s.add_argument("--limit", type=_int, default=10**5)
    s.add_argument("--max-results", type=int)
    s.set_defaults(func=cmd_ap)

    s = sub.add_parser("check", parents=[common], help="run the identity and bound checks as one gate")
    s.add_argument("--q-max", type=int, default=200)
    s.add_argument("--twin-limit", type=_int, default=10**6)
    s.add_argument("--n-limit", type=_int, default=10**5)
    s.add_argument("--x-max", type=_int, default=10**4)
    s.set_defaults(func=cmd_check)
    return p


def _config(args) -> RunConfig:
    q = getattr(args, "q", 4)
    if args.subcommand in ("bias", "brun") and q < 3:
        raise ValueError(f"q must be >= 3, got {q}")
    return RunConfig(
        subcommand=args.subcommand,
        limit=getattr(args, "limit", None),
        q=q,
        classes=getattr(args, "classes", (3, 1)),
        sample_every=getattr(args, "sample_every", None),
        log_power=getattr(args, "log_power", None),
        fmt=getattr(args, "format", "csv"),
        out=args.out,
        threads=args.threads,
        segment_size=args.segment_size,
        checkpoint=args.checkpoint,
        subject=getattr(args, "subject", "twins"),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        config = _config(args)
        return args.func(args, config)
    except ValidationFailure as exc:
        print(f"twinsieve: check failed: {exc}", file=sys.stderr)
        return 2
    except (ValueError, bias.ClassBoundViolation, progressions.BoundViolation) as exc:
        print(f"twinsieve: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0
    except Exception as exc:  # noqa: BLE001
        log.debug("internal error", exc_info=True)
        print(f"twinsieve: internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
