"""Segmented odd-only sieve of Eratosthenes and twin-prime extraction.

The production path stores primality as a bitmap over odd numbers (bit ``j``
of the packed little-endian words stands for ``2j + 1``) and finds twin
pairs with a shifted AND of that bitmap. :func:`literal_twin_sieve` is the
slow slash-and-strike marking procedure, kept only as an independent
oracle.
"""

from __future__ import annotations

import math
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np

DEFAULT_SEGMENT = 1 << 20
MAGIC = b"TSV1"
_HEADER = struct.Struct("<4sQQ")


class SieveMemoryError(MemoryError):
    pass


def small_primes(n: int) -> np.ndarray:
    """Primes ``<= n`` from a plain (unsegmented) byte sieve."""
    if n < 2:
        return np.array([], dtype=np.int64)
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    mask[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if mask[p]:
            mask[p * p :: 2 * p] = False
    return np.flatnonzero(mask).astype(np.int64)


def prime_mask(n: int) -> np.ndarray:
    """Boolean primality lookup for ``0..n``."""
    mask = np.zeros(n + 1, dtype=bool)
    mask[small_primes(n)] = True
    return mask


def _odd_window(lo: int, count: int, base: np.ndarray) -> np.ndarray:
    """Primality of the odd numbers ``lo, lo + 2, ..., lo + 2(count - 1)``.

    ``lo`` must be odd and ``base`` must hold every odd prime up to the
    square root of the window's top.
    """
    mask = np.ones(count, dtype=bool)
    hi = lo + 2 * count
    for p in base:
        p = int(p)
        sq = p * p
        if sq >= hi:
            break
        start = max(sq, -(-lo // p) * p)
        if start % 2 == 0:
            start += p
        if start < hi:
            mask[(start - lo) // 2 :: p] = False
    if lo == 1:
        mask[0] = False
    return mask


def _odd_base(top: int) -> np.ndarray:
    base = small_primes(math.isqrt(top) + 1)
    return base[base > 2]


def primes_in_range(lo: int, hi: int) -> np.ndarray:
    """All primes ``p`` with ``lo <= p <= hi``."""
    if hi < 2 or hi < lo:
        return np.array([], dtype=np.int64)
    lo = max(lo, 2)
    start = lo if lo % 2 else lo + 1
    count = max(0, (hi - start) // 2 + 1)
    mask = _odd_window(start, count, _odd_base(hi))
    odd = start + 2 * np.flatnonzero(mask).astype(np.int64)
    if lo <= 2:
        return np.concatenate(([2], odd)).astype(np.int64)
    return odd


def iter_prime_chunks(limit: int, segment_size: int = DEFAULT_SEGMENT) -> Iterator[np.ndarray]:
    """Yield the primes ``<= limit`` in ascending chunks, one per segment.

    Only the active segment is held in memory.
    """
    _check_segment(segment_size)
    base = _odd_base(limit)
    half = segment_size // 2
    lo = 0
    while lo <= limit:
        count = min(half, (limit - lo + 1) // 2)
        mask = _odd_window(lo + 1, count, base)
        chunk = lo + 1 + 2 * np.flatnonzero(mask).astype(np.int64)
        if lo == 0 and limit >= 2:
            chunk = np.concatenate(([2], chunk)).astype(np.int64)
        yield chunk
        lo += segment_size


def iter_twin_chunks(limit: int, segment_size: int = DEFAULT_SEGMENT) -> Iterator[np.ndarray]:
    """Yield first members ``p <= limit`` of twin pairs, in ascending chunks."""
    carry = None
    for chunk in iter_prime_chunks(limit + 2, segment_size):
        if carry is not None:
            chunk = np.concatenate(([carry], chunk))
        if chunk.size == 0:
            continue
        firsts = chunk[:-1][np.diff(chunk) == 2]
        carry = int(chunk[-1])
        yield firsts[firsts <= limit]


def _check_segment(segment_size: int) -> None:
    if segment_size < 128 or segment_size & (segment_size - 1):
        raise ValueError(f"segment_size must be a power of two >= 128, got {segment_size}")


@dataclass
class PrimeStore:
    """Bit-packed primality of every integer up to ``limit + 2``.

    ``words`` is the odd-number bitmap as little-endian uint64 words;
    ``cumulative_counts[k]`` is the number of primes below the end of
    segment ``k`` (the prime 2 included). Treat instances as immutable.
    """

    limit: int
    segment_size: int
    words: np.ndarray
    cumulative_counts: np.ndarray = field(repr=False)

    @property
    def top(self) -> int:
        """Largest integer whose primality is recorded."""
        return self.limit + 2

    def is_prime(self, n):
        """Primality of ``n`` (scalar or array) for ``n <= limit + 2``."""
        arr = np.asarray(n, dtype=np.int64)
        if np.any(arr > self.top):
            raise ValueError(f"query exceeds sieved range {self.top}")
        j = np.clip(arr, 0, None) // 2
        bit = (self.words[j // 64] >> (j % 64).astype(np.uint64)) & np.uint64(1)
        out = ((arr % 2 == 1) & (bit == 1)) | (arr == 2)
        return bool(out) if out.ndim == 0 else out

    def __contains__(self, n: int) -> bool:
        return bool(self.is_prime(n))

    def pi(self, x: float) -> int:
        """Number of primes ``<= x``."""
        if x > self.limit:
            raise ValueError(f"pi({x}) exceeds store limit {self.limit}")
        x = math.floor(x)
        if x < 2:
            return 0
        seg = x // self.segment_size
        count = int(self.cumulative_counts[seg - 1]) if seg else 1
        # odd indices inside segment `seg` up to and including x
        j0 = seg * self.segment_size // 2
        j1 = (x - 1) // 2 + 1
        count += _popcount_bits(self.words, j0, j1)
        return count

    def primes(self, lo: int = 2, hi: int | None = None) -> np.ndarray:
        hi = self.limit if hi is None else hi
        chunks = list(self.iter_prime_chunks(lo, hi))
        return np.concatenate(chunks) if chunks else np.array([], np.int64)

    def iter_prime_chunks(self, lo: int = 2, hi: int | None = None) -> Iterator[np.ndarray]:
        """Stream primes in ``[lo, hi]`` segment by segment."""
        hi = self.top if hi is None else min(hi, self.top)
        wps = self.segment_size // 128
        first = lo // self.segment_size
        last = hi // self.segment_size
        for seg in range(first, last + 1):
            block = self.words[seg * wps : (seg + 1) * wps]
            bits = np.unpackbits(block.astype("<u8").view(np.uint8), bitorder="little")
            nums = seg * self.segment_size + 1 + 2 * np.flatnonzero(bits).astype(np.int64)
            if seg == 0:
                nums = np.concatenate(([2], nums)).astype(np.int64)
            yield nums[(nums >= lo) & (nums <= hi)]

    def dump(self, path: str | Path) -> None:
        """Write the bitmap: header ``TSV1``, limit, segment size, then u64 words."""
        with open(path, "wb") as fh:
            fh.write(_HEADER.pack(MAGIC, self.limit, self.segment_size))
            fh.write(self.words.astype("<u8").tobytes())

    @classmethod
    def load(cls, path: str | Path) -> "PrimeStore":
        with open(path, "rb") as fh:
            magic, limit, segment_size = _HEADER.unpack(fh.read(_HEADER.size))
            if magic != MAGIC:
                raise ValueError(f"{path}: not a sieve dump (magic {magic!r})")
            words = np.frombuffer(fh.read(), dtype="<u8").astype(np.uint64)
        expected = _n_segments(limit + 2, segment_size) * (segment_size // 128)
        if words.size != expected:
            raise ValueError(f"{path}: expected {expected} words, found {words.size}")
        return cls(limit, segment_size, words, _cumulative(words, segment_size))


def _n_segments(top: int, segment_size: int) -> int:
    return top // segment_size + 1


def _popcount_bits(words: np.ndarray, j0: int, j1: int) -> int:
    """Number of set bits with index in ``[j0, j1)``."""
    if j1 <= j0:
        return 0
    w0, w1 = j0 // 64, j1 // 64
    total = int(np.bitwise_count(words[w0:w1]).sum())
    if j0 % 64:
        total -= int(np.bitwise_count(words[w0] & np.uint64((1 << (j0 % 64)) - 1)))
    if j1 % 64:
        total += int(np.bitwise_count(words[w1] & np.uint64((1 << (j1 % 64)) - 1)))
    return total


def _cumulative(words: np.ndarray, segment_size: int) -> np.ndarray:
    per_seg = np.bitwise_count(words).reshape(-1, segment_size // 128).sum(axis=1).astype(np.int64)
    per_seg[0] += 1  # the prime 2 is not in the odd bitmap
    return np.cumsum(per_seg)


def sieve_primes(limit: int, segment_size: int = DEFAULT_SEGMENT, threads: int = 1) -> PrimeStore:
    """Sieve ``[2, limit + 2]`` into a bit-packed :class:`PrimeStore`.

    Segments are independent and may be sieved on a thread pool; the result
    does not depend on ``threads``.
    """
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    _check_segment(segment_size)
    top = limit + 2
    nseg = _n_segments(top, segment_size)
    half = segment_size // 2
    try:
        words = np.zeros(nseg * (segment_size // 128), dtype=np.uint64)
    except MemoryError as exc:
        raise SieveMemoryError(f"cannot allocate bitmap for limit={limit}") from exc
    base = _odd_base(top)
    wps = segment_size // 128

    def fill(seg: int) -> None:
        lo = seg * segment_size
        count = min(half, max(0, (top - lo + 1) // 2))
        mask = np.zeros(half, dtype=bool)
        if count:
            mask[:count] = _odd_window(lo + 1, count, base)
        words[seg * wps : (seg + 1) * wps] = np.packbits(mask, bitorder="little").view("<u8")

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            list(pool.map(fill, range(nseg)))
    else:
        for seg in range(nseg):
            fill(seg)
    return PrimeStore(limit, segment_size, words, _cumulative(words, segment_size))


@dataclass
class TwinStream:
    """First members ``p <= limit`` of twin pairs ``(p, p + 2)``, ascending."""

    limit: int
    firsts: np.ndarray

    def pi2(self, x: float) -> int:
        """Number of twin pairs whose first member is ``<= x``."""
        if x > self.limit:
            raise ValueError(f"pi2({x}) exceeds stream limit {self.limit}")
        return int(np.searchsorted(self.firsts, math.floor(x), side="right"))

    def __len__(self) -> int:
        return len(self.firsts)

    def __iter__(self):
        return iter(self.firsts.tolist())


def twin_firsts(store: PrimeStore) -> TwinStream:
    """Twin first members up to ``store.limit``, from ``bit(p) & bit(p + 2)``."""
    w = store.words
    nxt = np.zeros_like(w)
    nxt[:-1] = w[1:] << np.uint64(63)
    both = w & ((w >> np.uint64(1)) | nxt)
    chunks = []
    step = 1 << 16
    for i in range(0, both.size, step):
        bits = np.unpackbits(both[i : i + step].astype("<u8").view(np.uint8), bitorder="little")
        chunks.append(2 * (np.flatnonzero(bits).astype(np.int64) + 64 * i) + 1)
    firsts = np.concatenate(chunks) if chunks else np.array([], np.int64)
    return TwinStream(store.limit, firsts[firsts <= store.limit])


def pi(store: PrimeStore, x: float) -> int:
    return store.pi(x)


def pi2(stream: TwinStream, x: float) -> int:
    return stream.pi2(x)


def literal_twin_sieve(N: int) -> list[int]:
    """Circle the twin first members in ``[1, N]`` by hand-style marking.

    Write out ``2..N+2``. Repeatedly take the lowest number ``n`` not yet
    slashed, slash its proper multiples, and strike out the number two below
    every slashed multiple; then circle the lowest number that is neither
    slashed, struck nor circled. Struck numbers still serve as ``n`` (2 and
    7 are struck yet must sieve). A circle is deferred while the candidate
    could still be marked by a later ``n`` (that is, while ``m + 2 >= n'**2``).
    """
    if N < 2:
        return []
    top = N + 2
    slashed = [False] * (top + 1)
    struck = [False] * (top + 1)
    circled: list[int] = []
    cursor = 2  # lowest candidate not yet considered for circling

    def next_circle(bound: int) -> None:
        nonlocal cursor
        while cursor <= N and cursor + 2 < bound:
            m = cursor
            cursor += 1
            if not slashed[m] and not struck[m]:
                circled.append(m)
                return

    n = 2
    while n <= N:
        for k in range(2 * n, top + 1, n):
            slashed[k] = True
            struck[k - 2] = True
        nxt = n + 1
        while nxt <= top and slashed[nxt]:
            nxt += 1
        next_circle(nxt * nxt)
        n = nxt
    while cursor <= N:
        next_circle(math.inf)
    return circled
