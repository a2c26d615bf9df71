import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from twinsieve import sieve


@pytest.fixture(scope="module")
def store():
    return sieve.sieve_primes(10**6, segment_size=1 << 14)


def test_small_example():
    s = sieve.sieve_primes(30)
    assert s.primes().tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert s.pi(30) == 10
    assert sieve.twin_firsts(s).firsts.tolist() == [3, 5, 11, 17, 29]


def test_primes_match_sympy(store):
    assert store.primes().tolist() == list(sympy.primerange(2, 10**6 + 1))


@given(st.integers(0, 10**6))
@settings(max_examples=300, deadline=None)
def test_pi_matches_sympy(store, x):
    assert store.pi(x) == sympy.primepi(x)


def test_pi_at_segment_edges(store):
    for x in (1, 2, 3, (1 << 14) - 1, 1 << 14, (1 << 14) + 1, 3 << 14, 10**6):
        assert store.pi(x) == sympy.primepi(x)
    with pytest.raises(ValueError):
        store.pi(10**6 + 1)


def test_pi_1e7():
    assert sieve.sieve_primes(10**7).pi(10**7) == 664579


def test_is_prime_vectorized(store):
    n = np.arange(0, 10**6 + 3)
    got = store.is_prime(n)
    assert got.sum() == sympy.primepi(10**6 + 2)
    assert store.is_prime(999983) and 999983 in store and 1000000 not in store
    with pytest.raises(ValueError):
        store.is_prime(10**6 + 3)


@given(st.integers(0, 10**7), st.integers(0, 5000))
@settings(max_examples=150, deadline=None)
def test_primes_in_range(lo, width):
    assert sieve.primes_in_range(lo, lo + width).tolist() == list(sympy.primerange(lo, lo + width + 1))


def test_segment_and_thread_independence():
    a = sieve.sieve_primes(300_000, segment_size=1 << 16)
    b = sieve.sieve_primes(300_000, segment_size=1 << 20)
    c = sieve.sieve_primes(300_000, segment_size=1 << 12, threads=4)
    assert np.array_equal(a.primes(), b.primes())
    assert np.array_equal(a.primes(), c.primes())
    for chunk_size in (1 << 10, 1 << 16):
        chunks = np.concatenate(list(sieve.iter_prime_chunks(300_000, chunk_size)))
        assert np.array_equal(chunks, a.primes())


def test_twin_streams_agree(store):
    stream = sieve.twin_firsts(store)
    for seg in (1 << 7, 1 << 16, 1 << 20):
        chunked = np.concatenate(list(sieve.iter_twin_chunks(10**6, seg)))
        assert np.array_equal(chunked, stream.firsts)
    p = np.array(list(sympy.primerange(2, 10**6 + 3)))
    assert np.array_equal(stream.firsts, p[:-1][np.diff(p) == 2][p[:-1][np.diff(p) == 2] <= 10**6])
    assert stream.pi2(100) == 8 and sieve.pi2(stream, 10) == 2
    assert sieve.twin_firsts(sieve.sieve_primes(10**7)).pi2(10**7) == 58980


def test_twin_at_limit_boundary():
    # (29, 31): 29 is counted at limit 29 even though 31 lies beyond it
    assert sieve.twin_firsts(sieve.sieve_primes(29)).firsts.tolist()[-1] == 29
    assert np.concatenate(list(sieve.iter_twin_chunks(29, 128))).tolist()[-1] == 29


def test_dump_roundtrip(tmp_path, store):
    path = tmp_path / "p.tsv"
    store.dump(path)
    loaded = sieve.PrimeStore.load(path)
    assert loaded.limit == store.limit and loaded.segment_size == store.segment_size
    assert np.array_equal(loaded.words, store.words)
    assert loaded.pi(777_777) == store.pi(777_777)
    raw = path.read_bytes()
    assert raw[:4] == b"TSV1"
    (tmp_path / "bad").write_bytes(b"XXXX" + raw[4:])
    with pytest.raises(ValueError):
        sieve.PrimeStore.load(tmp_path / "bad")
    (tmp_path / "short").write_bytes(raw[:-8])
    with pytest.raises(ValueError):
        sieve.PrimeStore.load(tmp_path / "short")


def test_validation():
    with pytest.raises(ValueError):
        sieve.sieve_primes(1)
    with pytest.raises(ValueError):
        sieve.sieve_primes(100, segment_size=1000)
    with pytest.raises(ValueError):
        list(sieve.iter_prime_chunks(100, 64))


def test_literal_sieve_matches_bitmap():
    firsts = sieve.twin_firsts(sieve.sieve_primes(2000)).firsts
    for N in range(1, 2000):
        assert sieve.literal_twin_sieve(N) == firsts[firsts <= N].tolist(), N
