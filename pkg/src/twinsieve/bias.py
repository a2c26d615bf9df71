"""Residue-class bias statistics for primes and twin primes, computed by streaming.

A scan walks the ascending sequence of primes (or twin first members) chunk
by chunk. Each element is classified modulo ``q`` once its successor is
known, so transitions and gaps are counted for every element ``<= limit``
even when the successor lies beyond ``limit``. Three families of statistics
come out of one pass:

* class counts, densities and the difference ``Delta = count[a_i] - count[a_j]``
  plus its scaled form ``Delta * ln(x)**k / (scale * sqrt(x))``;
* conditional transition frequencies ``count[a_i -> a_j] / count[a_i]``;
* the fraction of elements whose gap to the successor, plus or minus one,
  is prime.

A twin pair is always classified by its first member.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from . import arith
from .sieve import DEFAULT_SEGMENT, PrimeStore, iter_prime_chunks, iter_twin_chunks, prime_mask, primes_in_range

SUBJECTS = ("primes", "twins")
TABLE_POINTS = (10**7, 5 * 10**7, 10**8, 5 * 10**8, 10**9, 5 * 10**9, 10**10)
DEFAULT_SAMPLE_EVERY = {"primes": 50, "twins": 25}
# (log power, scale) of the scaled difference, per subject
DEFAULT_SCALING = {"primes": (1, 1.0), "twins": (2, 10.0)}


class ClassBoundViolation(AssertionError):
    pass


class _Neumaier:
    __slots__ = ("s", "c")

    def __init__(self):
        self.s = 0.0
        self.c = 0.0

    def add(self, v: float) -> None:
        t = self.s + v
        if abs(self.s) >= abs(v):
            self.c += (self.s - t) + v
        else:
            self.c += (v - t) + self.s
        self.s = t

    @property
    def value(self) -> float:
        return self.s + self.c


@dataclass
class ResidueTally:
    q: int
    counts: dict[int, int]
    total: int


@dataclass
class TransitionTally:
    """Counts of consecutive elements with classes ``(a_i, a_j)``."""

    q: int
    counts: dict[tuple[int, int], int]

    def row_total(self, a_i: int) -> int:
        return sum(v for (a, _), v in self.counts.items() if a == a_i)

    def conditional(self, a_i: int, a_j: int) -> float:
        row = self.row_total(a_i)
        return self.counts.get((a_i, a_j), 0) / row if row else math.nan


@dataclass
class GapTally:
    plus: int
    minus: int
    total: int

    @property
    def delta_plus(self) -> float:
        return self.plus / self.total if self.total else math.nan

    @property
    def delta_minus(self) -> float:
        return self.minus / self.total if self.total else math.nan


@dataclass
class BiasSample:
    """The state of a scan at ``x``: every counter restricted to elements ``<= x``."""

    x: int
    subject: str
    q: int
    classes: tuple[int, int]
    total: int
    counts: dict[int, int]
    transitions: dict[tuple[int, int], int]
    plus: int
    minus: int
    log_power: int = 2
    scale: float = 10.0

    def density(self, a: int) -> float:
        return self.counts[a] / self.total if self.total else math.nan

    @property
    def delta(self) -> int:
        a_i, a_j = self.classes
        return self.counts[a_i] - self.counts[a_j]

    @property
    def delta_bar(self) -> float:
        x = self.x
        return self.delta * math.log(x) ** self.log_power / (self.scale * math.sqrt(x))

    def conditional(self, a_i: int, a_j: int) -> float:
        row = self.counts[a_i]
        return self.transitions[(a_i, a_j)] / row if row else math.nan

    @property
    def gap_plus(self) -> float:
        return self.plus / self.total if self.total else math.nan

    @property
    def gap_minus(self) -> float:
        return self.minus / self.total if self.total else math.nan

    def stats(self, kinds: Iterable[int] = (1, 2, 3)) -> dict[str, float]:
        """Flat ``name -> value`` mapping (names as in the JSON output)."""
        s = "2" if self.subject == "twins" else ""
        pi = "pi" + s
        q = self.q
        out: dict[str, float] = {pi: self.total}
        kinds = set(kinds)
        if 1 in kinds:
            for a in self.classes:
                out[f"{pi}_{q}_{a}"] = self.counts[a]
                out[f"density{s}_{q}_{a}"] = self.density(a)
            out[f"delta{s}"] = self.delta
            out[f"delta{s}_bar"] = self.delta_bar
        if 2 in kinds:
            for a_i, a_j in self.transitions:
                out[f"{pi}_{q}_{a_i}|{a_j}"] = self.transitions[(a_i, a_j)]
                out[f"cond{s}_{q}_{a_i}|{a_j}"] = self.conditional(a_i, a_j)
        if 3 in kinds:
            out[f"{pi}_plus"] = self.plus
            out[f"{pi}_minus"] = self.minus
            out[f"gap{s}_plus"] = self.gap_plus
            out[f"gap{s}_minus"] = self.gap_minus
        return out

    def csv_rows(self, kinds: Iterable[int] = (1, 2, 3)) -> Iterator[tuple]:
        """Rows ``(x, subject, q, stat_name, class_or_pair, value)``."""
        head = (self.x, self.subject, self.q)
        kinds = set(kinds)
        yield head + ("total", "all", self.total)
        if 1 in kinds:
            for a in self.classes:
                yield head + ("count", str(a), self.counts[a])
                yield head + ("density", str(a), self.density(a))
            pair = "{}-{}".format(*self.classes)
            yield head + ("delta", pair, self.delta)
            yield head + ("delta_bar", pair, self.delta_bar)
        if 2 in kinds:
            for a_i, a_j in self.transitions:
                yield head + ("transitions", f"{a_i}|{a_j}", self.transitions[(a_i, a_j)])
                yield head + ("cond", f"{a_i}|{a_j}", self.conditional(a_i, a_j))
        if 3 in kinds:
            yield head + ("pi_plus", "all", self.plus)
            yield head + ("pi_minus", "all", self.minus)
            yield head + ("gap_plus", "all", self.gap_plus)
            yield head + ("gap_minus", "all", self.gap_minus)


@dataclass
class BrunAccumulator:
    """Per-class sums of ``1/p + 1/(p+2)`` over twin pairs, by ``p mod q``."""

    q: int
    _sums: dict[int, _Neumaier] = field(default_factory=dict, repr=False)
    limit: int = 0

    def add(self, firsts: np.ndarray) -> None:
        if firsts.size == 0:
            return
        c = firsts % self.q
        f = firsts.astype(np.float64)
        for a in np.unique(c).tolist():
            sel = f[c == a]
            self._sums.setdefault(a, _Neumaier()).add(math.fsum(1.0 / sel + 1.0 / (sel + 2.0)))

    @property
    def sums(self) -> dict[int, float]:
        return {a: acc.value for a, acc in sorted(self._sums.items())}

    @property
    def total(self) -> float:
        return math.fsum(self.sums.values())


@dataclass
class BiasRun:
    """Everything produced by one :func:`scan`."""

    subject: str
    limit: int
    q: int
    classes: tuple[int, int]
    samples: list[BiasSample]
    rows: list[BiasSample]
    residues: ResidueTally
    transitions: TransitionTally
    gaps: GapTally
    brun: BrunAccumulator | None

    def row_at(self, x: int) -> BiasSample:
        for row in self.rows:
            if row.x == x:
                return row
        raise KeyError(x)


def iter_sequence(
    subject: str, limit: int, segment_size: int = DEFAULT_SEGMENT, store: PrimeStore | None = None
) -> Iterator[np.ndarray]:
    """Ascending chunks of primes or twin firsts ``<= limit``, then one chunk with the successor."""
    if subject not in SUBJECTS:
        raise ValueError(f"subject must be one of {SUBJECTS}, got {subject!r}")
    if subject == "primes":
        chunks = store.iter_prime_chunks(2, limit) if store is not None else iter_prime_chunks(limit, segment_size)
    elif store is not None:
        chunks = _twins_from_primes(store.iter_prime_chunks(2, limit + 2), limit)
    else:
        chunks = iter_twin_chunks(limit, segment_size)
    yield from chunks
    # widen a window past the limit until the next element turns up
    width = 1 << 12
    lo = limit + 1
    while True:
        if subject == "primes":
            nxt = primes_in_range(lo, lo + width)
        else:
            pr = primes_in_range(lo, lo + width + 2)
            nxt = pr[:-1][np.diff(pr) == 2]
            nxt = nxt[nxt <= lo + width]
        if nxt.size:
            yield nxt[:1]
            return
        lo += width + 1
        width *= 2


def _twins_from_primes(chunks: Iterable[np.ndarray], limit: int) -> Iterator[np.ndarray]:
    carry = None
    for chunk in chunks:
        if carry is not None:
            chunk = np.concatenate(([carry], chunk))
        if chunk.size == 0:
            continue
        firsts = chunk[:-1][np.diff(chunk) == 2]
        carry = int(chunk[-1])
        yield firsts[firsts <= limit]


class _Scanner:
    def __init__(self, subject, limit, q, classes, sample_every, checkpoints, log_power, scale, on_sample, brun):
        self.subject = subject
        self.limit = limit
        self.q = q
        self.classes = tuple(classes)
        self.pairs = [(a, b) for a in self.classes for b in self.classes]
        self.sample_every = sample_every
        self.log_power = log_power
        self.scale = scale
        self.on_sample = on_sample
        self.pending = sorted({x for x in checkpoints if x <= limit} | {limit})
        self.rows: list[BiasSample] = []
        self.n = 0
        # tracked running state: classes, pairs, plus, minus
        self.base = np.zeros(len(self.classes) + len(self.pairs) + 2, dtype=np.int64)
        self.class_counts = np.zeros(q, dtype=np.int64)
        self.trans: dict[tuple[int, int], int] = {}
        self.plus = 0
        self.minus = 0
        self.carry: np.ndarray | None = None
        self.done = False
        self.gap_mask = prime_mask(1 << 12)
        self.brun = BrunAccumulator(q, limit=limit) if brun else None

    def _is_prime_small(self, v: np.ndarray) -> np.ndarray:
        top = int(v.max()) if v.size else 0
        if top >= self.gap_mask.size:
            self.gap_mask = prime_mask(max(top + 1, 2 * self.gap_mask.size))
        return self.gap_mask[v]

    def _sample(self, x: int, state: np.ndarray, total: int) -> BiasSample:
        k = len(self.classes)
        counts = {a: int(state[i]) for i, a in enumerate(self.classes)}
        trans = {p: int(state[k + i]) for i, p in enumerate(self.pairs)}
        return BiasSample(
            int(x), self.subject, self.q, self.classes, int(total), counts, trans,
            int(state[-2]), int(state[-1]), self.log_power, self.scale,
        )

    def feed(self, chunk: np.ndarray) -> None:
        if self.done:
            return
        seq = chunk if self.carry is None else np.concatenate((self.carry, chunk))
        if seq.size < 2:
            self.carry = seq
            return
        e, succ = seq[:-1], seq[1:]
        self.carry = seq[-1:]
        m = int(np.searchsorted(e, self.limit, side="right"))
        e, succ = e[:m], succ[:m]
        if m:
            self._process(e, succ)
        if int(self.carry[0]) > self.limit or m < seq.size - 1:
            self.done = True

    def _process(self, e: np.ndarray, succ: np.ndarray) -> None:
        q = self.q
        c = e % q
        d = succ % q
        gap = succ - e
        plus = self._is_prime_small(gap + 1)
        minus = self._is_prime_small(gap - 1)
        ind = [c == a for a in self.classes]
        ind += [(c == a) & (d == b) for a, b in self.pairs]
        ind += [plus, minus]
        M = np.cumsum(np.vstack(ind).astype(np.int64), axis=1)
        C = np.hstack((self.base[:, None], self.base[:, None] + M))
        n0, m = self.n, e.size
        next_elem = int(self.carry[0])

        if self.sample_every:
            s = self.sample_every
            first = (s - n0 % s) % s  # offset so that n0 + i + 1 = 0 (mod s)
            for i in range(first - 1 if first else s - 1, m, s):
                sample = self._sample(e[i], C[:, i + 1], n0 + i + 1)
                if self.on_sample is not None:
                    self.on_sample(sample)

        while self.pending and (self.pending[0] < next_elem or self.pending[0] == self.limit and next_elem > self.limit):
            x = self.pending.pop(0)
            j = int(np.searchsorted(e, x, side="right"))
            self.rows.append(self._sample(x, C[:, j], n0 + j))

        self.base = C[:, m].copy()
        self.n += m
        self.class_counts += np.bincount(c, minlength=q)[:q]
        codes, counts = np.unique(c * q + d, return_counts=True)
        for code, cnt in zip(codes.tolist(), counts.tolist()):
            key = divmod(code, q)
            self.trans[key] = self.trans.get(key, 0) + cnt
        self.plus += int(plus.sum())
        self.minus += int(minus.sum())
        if self.brun is not None:
            self.brun.add(e)

    def flush_rows(self) -> None:
        # checkpoints falling in the stretch before the first element
        while self.pending:
            x = self.pending.pop(0)
            self.rows.append(self._sample(x, self.base, self.n))


def scan(
    subject: str,
    limit: int,
    q: int = 4,
    classes: tuple[int, int] = (3, 1),
    sample_every: int | None = None,
    checkpoints: Iterable[int] = TABLE_POINTS,
    log_power: int | None = None,
    scale: float | None = None,
    segment_size: int = DEFAULT_SEGMENT,
    store: PrimeStore | None = None,
    on_sample: Callable[[BiasSample], None] | None = None,
) -> BiasRun:
    """Stream the subject sequence up to ``limit`` and collect every statistic.

    Samples are taken after every ``sample_every``-th element (``x`` is that
    element); with ``on_sample`` they are handed over one by one instead of
    being kept. Rows are exact-``x`` snapshots at each checkpoint ``<= limit``
    and at ``limit`` itself.
    """
    if subject not in SUBJECTS:
        raise ValueError(f"subject must be one of {SUBJECTS}, got {subject!r}")
    if q < 3:
        raise ValueError(f"q must be >= 3, got {q}")
    classes = tuple(int(a) for a in classes)
    if len(classes) != 2 or any(not 0 <= a < q for a in classes):
        raise ValueError(f"classes must be two residues modulo {q}, got {classes}")
    if sample_every is None:
        sample_every = DEFAULT_SAMPLE_EVERY[subject]
    if sample_every < 0:
        raise ValueError("sample_every must be >= 0")
    default_power, default_scale = DEFAULT_SCALING[subject]
    log_power = default_power if log_power is None else log_power
    scale = default_scale if scale is None else scale

    samples: list[BiasSample] = []
    sink = on_sample if on_sample is not None else samples.append
    sc = _Scanner(subject, limit, q, classes, sample_every, checkpoints, log_power, scale, sink, subject == "twins")
    for chunk in iter_sequence(subject, limit, segment_size, store):
        sc.feed(chunk)
        if sc.done:
            break
    sc.flush_rows()

    residues = ResidueTally(q, {a: int(v) for a, v in enumerate(sc.class_counts) if v}, sc.n)
    return BiasRun(
        subject, limit, q, classes, samples, sc.rows, residues,
        TransitionTally(q, dict(sorted(sc.trans.items()))), GapTally(sc.plus, sc.minus, sc.n), sc.brun,
    )


def type1_series(limit, q=4, a_i=3, a_j=1, sample_every=None, subject="twins", **kw) -> list[BiasSample]:
    """Samples of class counts, densities and (scaled) differences."""
    return scan(subject, limit, q, (a_i, a_j), sample_every, **kw).samples


def type2_series(limit, q=4, subject="twins", classes=(1, 3), sample_every=None, **kw):
    """``(TransitionTally at limit, samples)`` for consecutive-class transitions."""
    run = scan(subject, limit, q, classes, sample_every, **kw)
    return run.transitions, run.samples


def type3_series(limit, subject="twins", sample_every=None, **kw):
    """``(GapTally at limit, samples)`` for the gap-plus/minus-one primality bias."""
    run = scan(subject, limit, 4, (1, 3), sample_every, **kw)
    return run.gaps, run.samples


def brun_partial(limit: int, q: int = 4, segment_size: int = DEFAULT_SEGMENT) -> BrunAccumulator:
    """Sums of ``1/p + 1/(p+2)`` over twin pairs with ``p <= limit``, split by ``p mod q``."""
    acc = BrunAccumulator(q, limit=limit)
    for chunk in iter_twin_chunks(limit, segment_size):
        acc.add(chunk)
    return acc


# --- residue-class checks ----------------------------------------------------


@dataclass
class NonAdmissibleReport:
    q: int
    limit: int
    counts: dict[int, int]  # non-admissible classes holding at least one pair
    exceptional: list[tuple[int, int]]

    @property
    def ok(self) -> bool:
        return all(v <= 1 for v in self.counts.values())


def _twin_array(limit: int, firsts: np.ndarray | None) -> np.ndarray:
    if firsts is None:
        return np.concatenate(list(iter_twin_chunks(limit)))
    return firsts[firsts <= limit]


def nonadmissible_class_check(limit: int, q: int, firsts: np.ndarray | None = None, strict: bool = True) -> NonAdmissibleReport:
    """Count twin pairs in every non-admissible class modulo ``q``.

    A class ``a`` with ``gcd(a, q) > 1`` or ``gcd(a + 2, q) > 1`` can hold at
    most one pair; ``strict`` raises :class:`ClassBoundViolation` otherwise.
    """
    if not 2 <= q <= 10**4:
        raise ValueError("q must be in [2, 10**4]")
    t = _twin_array(limit, firsts)
    res = t % q
    counts = np.bincount(res, minlength=q)
    bad = [a for a in range(q) if not arith.is_admissible(a, q)]
    hit = {a: int(counts[a]) for a in bad if counts[a]}
    exceptional = [(int(p), int(p) + 2) for p in t if (int(p) % q) in hit]
    report = NonAdmissibleReport(q, limit, hit, exceptional)
    if strict and not report.ok:
        raise ClassBoundViolation(f"q={q}: non-admissible classes with several pairs: {hit}")
    return report


# name used by the command-line gate and external callers
theorem31_check = nonadmissible_class_check


@dataclass
class EquidistributionReport:
    q: int
    limit: int
    phi2: int
    total: int
    ratios: dict[int, float]  # pi2(limit) / pi2(limit; q; a) per admissible a


def equidistribution_check(limit: int, q: int, firsts: np.ndarray | None = None) -> EquidistributionReport:
    """Compare ``pi2(x) / pi2(x; q; a)`` with ``phi2(q)`` for each admissible class."""
    phi2 = arith.phi2(q)
    if phi2 < 1:
        raise ValueError(f"q={q} has no admissible classes")
    t = _twin_array(limit, firsts)
    counts = np.bincount(t % q, minlength=q)
    ratios = {a: (t.size / int(counts[a]) if counts[a] else math.inf) for a in arith.admissible_residues(q)}
    return EquidistributionReport(q, limit, phi2, int(t.size), ratios)
