import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from randkol import kernels
from randkol.core import DirectedStream
from randkol.errors import DomainError
from randkol.sources import Periodic, make_source, parse_spec

needs_numba = pytest.mark.skipif("numba" not in kernels.BACKENDS, reason="numba not installed")

SPECS = ["classic:1,2", "classic:3,1", "periodic:122", "periodic:2", "periodic:1", "iid:p=0.3,a=1,b=2",
         "iid:p=0.6,a=3,b=2", "markov:p=0.7,a=1,b=3", "markov:p=0.2,a=2,b=1,start=1", "selfref"]


@pytest.mark.parametrize("text", SPECS)
def test_prefix_matches_python_stream(text, backend):
    spec = parse_spec(text)
    n = 5000
    want = DirectedStream(make_source(spec, seed=123)).take(n)
    got = kernels.prefix(kernels.KernelSource.from_spec(spec), 123, n, name=backend)
    assert tuple(got.tolist()) == want


@needs_numba
@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SPECS), st.integers(0, 2**64 - 1), st.integers(1, 20_000))
def test_backends_bit_identical(text, seed, length):
    src = kernels.KernelSource.from_spec(parse_spec(text))
    cps = sorted({1, length, max(1, length // 3), max(1, length // 2)})
    a_counts, a = kernels.stream_counts(src, seed, length, cps, True, name="numba")
    b_counts, b = kernels.stream_counts(src, seed, length, cps, True, name="numpy")
    assert np.array_equal(a, b)
    assert np.array_equal(a_counts, b_counts)


@needs_numba
def test_ring_growth_long_stream():
    # the bit ring starts at 1024 bits and must double many times here
    src = kernels.KernelSource.from_spec(parse_spec("markov:p=0.4,a=1,b=3"))
    n = 2_000_000
    cps = [n // 7, n // 2, n]
    a, _ = kernels.stream_counts(src, 99, n, cps, name="numba")
    b, _ = kernels.stream_counts(src, 99, n, cps, name="numpy")
    assert np.array_equal(a, b)


def test_counts_at_checkpoints(backend):
    src = kernels.KernelSource.from_spec(parse_spec("classic:1,2"))
    counts, letters = kernels.stream_counts(src, 0, 15, [1, 2, 3, 15], True, name=backend)
    assert counts.tolist() == [1, 1, 1, 7]
    assert "".join(map(str, letters)) == "122112122122112"


def test_zero_length(backend):
    src = kernels.KernelSource.from_spec(parse_spec("selfref"))
    counts, letters = kernels.stream_counts(src, 0, 0, [], True, name=backend)
    assert counts.size == 0 and letters.size == 0


@needs_numba
def test_pointwise_backends_agree():
    for text in ("iid:p=0.5,a=1,b=2", "markov:p=0.9,a=1,b=3"):
        src = kernels.KernelSource.from_spec(parse_spec(text))
        for n in (1, 2, 17):
            assert kernels.pointwise_hits(src, 5, n, 0, 300, name="numba") == \
                kernels.pointwise_hits(src, 5, n, 0, 300, name="numpy")


@pytest.mark.parametrize("n", [1, 2, 3, 50, 12345])
def test_selfref_arrays(n, backend):
    from randkol.sources import selfref_build

    T, O = selfref_build(n)
    kT, kO, total = kernels.selfref_arrays(n, backend)
    assert tuple(kT.tolist()) == T
    assert tuple(kO.tolist()) == O[:n]
    assert total == len(O)


def test_three_letter_pattern_rejected():
    with pytest.raises(DomainError):
        kernels.KernelSource.from_spec(Periodic((1, 2, 3)))


def test_shard_boundaries_do_not_matter(backend):
    src = kernels.KernelSource.from_spec(parse_spec("iid:p=0.5,a=1,b=2"))
    whole = kernels.pointwise_hits(src, 8, 9, 0, 200, name=backend)
    split = sum(kernels.pointwise_hits(src, 8, 9, a, b, name=backend) for a, b in ((0, 13), (13, 150), (150, 200)))
    assert whole == split
