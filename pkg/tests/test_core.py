from collections import deque

import pytest
from hypothesis import given, settings, strategies as st

from randkol.core import (Alphabet, DirectedStream, LetterFifo, RunEncoding, delta,
                          direct_finite, rle, stream_new, stream_next)
from randkol.errors import DomainError, EndOfSource, InvalidAlphabetError
from randkol.sources import FiniteState, make_source, parse_spec

KOLAKOSKI = (1, 2, 2, 1, 1, 2, 1, 2, 2, 1, 2, 2, 1, 1, 2)


def naive_blocks(T):
    # block-by-block construction with a plain list, no streaming
    X = []
    k = 0
    for x in T:
        X += [x]
        X += [x] * (X[k] - 1)
        k += 1
    return X


@pytest.mark.parametrize("T, expected", [
    ((1, 2) * 4, (1, 2, 2, 1, 1, 2, 1, 2, 2, 1, 2, 2)),
    ((2, 1, 1, 2, 2), (2, 2, 1, 1, 1, 2, 2)),
    ((1, 3) * 4, (1, 3, 3, 3, 1, 1, 1, 3, 3, 3, 1, 3, 1, 3, 3, 3)),
])
def test_direct_finite_examples(T, expected):
    assert direct_finite(T) == expected


def test_direct_finite_rejects_bad_letters():
    with pytest.raises(InvalidAlphabetError):
        direct_finite((1, 0, 2))
    with pytest.raises(InvalidAlphabetError):
        direct_finite((1, 256))
    with pytest.raises(DomainError):
        direct_finite(())


words = st.lists(st.integers(1, 4), min_size=1, max_size=16)


@given(words)
def test_direct_finite_matches_naive(T):
    assert list(direct_finite(T)) == naive_blocks(T)


@given(words, st.integers(1, 4))
def test_prefix_monotone_and_length_bound(T, t):
    small = direct_finite(T)
    assert direct_finite(T + [t])[:len(small)] == small
    assert len(small) >= len(T)


@given(words, words)
def test_first_n_letters_depend_on_first_n_directing_letters(T, tail):
    n = len(T)
    assert direct_finite(T)[:n] == direct_finite(T + tail)[:n]


@given(st.lists(st.integers(1, 3), min_size=1, max_size=16))
def test_block_structure(T):
    # block i has length X[i] and is filled with T[i]
    X = direct_finite(T)
    pos = 0
    for i, t in enumerate(T):
        L = X[i]
        assert X[pos:pos + L] == (t,) * L
        pos += L
    assert pos == len(X)


def test_rle_examples():
    assert rle((1, 2, 2, 1, 1, 2)).runs == ((1, 1), (2, 2), (1, 2), (2, 1))
    assert rle((2, 2, 2)).runs == ((2, 3),)
    assert rle(KOLAKOSKI[:12]).runs == ((1, 1), (2, 2), (1, 2), (2, 1), (1, 1), (2, 2), (1, 1), (2, 2))
    assert rle((1, 2)).last_run_complete is False


def test_rle_complete_runs_drops_last():
    enc = rle((1, 2, 2, 1))
    assert enc.complete_runs() == ((1, 1), (2, 2))
    assert RunEncoding(enc.runs, True).complete_runs() == enc.runs


def test_delta_examples():
    assert delta((1, 2, 2, 1, 1, 2, 1, 2, 2)) == (1, 2, 2, 1, 1, 2)
    assert delta((1,)) == (1,)
    assert delta((3, 3, 3, 1, 1, 1)) == (3, 3)


@given(st.lists(st.integers(1, 5), min_size=1, max_size=50))
def test_rle_invariants(w):
    enc = rle(w)
    assert sum(n for _, n in enc.runs) == len(w)
    assert all(a != b for (a, _), (b, _) in zip(enc.runs, enc.runs[1:]))


def test_alphabet():
    assert Alphabet.of(3, 1) == Alphabet(1, 3)
    assert 3 in Alphabet.of(1, 3)
    with pytest.raises(DomainError):
        Alphabet.of(2, 2)
    with pytest.raises(InvalidAlphabetError):
        Alphabet.of(0, 2)


@given(st.lists(st.one_of(st.tuples(st.just("push"), st.sampled_from([1, 2, 2, 1, 3])),
                          st.tuples(st.just("pop"), st.none())), max_size=400))
def test_fifo_matches_deque(ops):
    fifo, ref = LetterFifo(), deque()
    for op, v in ops:
        if op == "push":
            fifo.append(v)
            ref.append(v)
        elif ref:
            assert fifo.popleft() == ref.popleft()
        assert len(fifo) == len(ref)
    assert [fifo.popleft() for _ in range(len(fifo))] == list(ref)


def test_fifo_is_bit_packed_for_two_letters():
    fifo = LetterFifo()
    for i in range(100_000):
        fifo.append(1 + (i % 3 == 0))
    assert fifo.bits_per_letter == 1
    assert fifo.nbytes <= 100_000 // 8 + 2 * LetterFifo.CHUNK
    fifo.append(3)
    assert fifo.bits_per_letter == 8
    assert len(fifo) == 100_001
    assert fifo.popleft() == 2 and fifo.popleft() == 1


def test_fifo_crosses_chunks():
    fifo = LetterFifo()
    slots = LetterFifo.CHUNK * 8
    seq = [1 + (i * 7 % 5 == 0) for i in range(3 * slots + 11)]
    out = []
    for i, x in enumerate(seq):
        fifo.append(x)
        if i % 3 == 0:
            out.append(fifo.popleft())
    while len(fifo):
        out.append(fifo.popleft())
    assert out == seq
    with pytest.raises(IndexError):
        fifo.popleft()


def test_stream_classic_prefix():
    s = stream_new(make_source(parse_spec("classic:1,2")))
    assert tuple(stream_next(s) for _ in range(15)) == KOLAKOSKI


def test_stream_zero_emissions():
    s = DirectedStream(make_source(parse_spec("classic:1,2")))
    assert s.take(0) == ()
    assert s.emitted == 0 and len(s.pending) == 0


def test_stream_periodic_two():
    assert DirectedStream(make_source(parse_spec("periodic:2"))).take(20) == (2,) * 20


def test_stream_selfref():
    assert DirectedStream(make_source(parse_spec("selfref"))).take(10) == (2, 2, 1, 1, 1, 2, 1, 1, 1, 2)


def test_stream_iid_deterministic_under_seed():
    spec = parse_spec("iid:p=0.5,a=1,b=2")
    a = DirectedStream(make_source(spec, seed=42)).take(2000)
    b = DirectedStream(make_source(spec, seed=42)).take(2000)
    c = DirectedStream(make_source(spec, seed=43)).take(2000)
    assert a == b and a != c


def test_stream_pending_invariant():
    s = DirectedStream(make_source(parse_spec("markov:p=0.3,a=1,b=2"), seed=9))
    out = []
    for _ in range(5000):
        out.append(s.next())
        # pending is exactly positions k+1..emitted
        assert len(s.pending) == s.emitted - s.k
        assert s.remaining >= 0 and s.emitted >= s.k
    snapshot = [s.pending.popleft() for _ in range(len(s.pending))]
    assert tuple(snapshot) == tuple(out[s.k:])


def test_stream_finite_source_ends():
    s = DirectedStream(FiniteState((2, 1, 1)))
    assert s.take(5) == (2, 2, 1, 1, 1)
    with pytest.raises(EndOfSource):
        s.next()
    assert list(DirectedStream(iter((2, 1, 1)))) == [2, 2, 1, 1, 1]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["iid:p=0.3,a=1,b=2", "markov:p=0.6,a=1,b=3", "periodic:2112111", "selfref"]),
       st.integers(0, 2**64 - 1), st.integers(1, 3000))
def test_stream_equals_batch_on_consumed_prefix(text, seed, n):
    source = make_source(parse_spec(text), seed=seed)
    s = DirectedStream(source)
    emitted = s.take(n)
    replay = make_source(parse_spec(text), seed=seed).take(s.k)
    assert direct_finite(replay)[:n] == emitted


def test_stream_equals_batch_large():
    n = 10**5
    T = make_source(parse_spec("iid:p=0.45,a=1,b=2"), seed=2024).take(n)
    s = DirectedStream(iter(T))
    assert s.take(n) == direct_finite(T)[:n]


def test_classic_is_its_own_run_length_encoding():
    m = 10**4
    w = DirectedStream(make_source(parse_spec("classic:1,2"))).take(m)
    lengths = tuple(n for _, n in rle(w).complete_runs())
    assert len(lengths) > m // 2 - 100
    assert w[:len(lengths)] == lengths
