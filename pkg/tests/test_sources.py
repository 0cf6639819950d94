import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from randkol.core import direct_finite
from randkol.errors import DomainError, SpecSyntaxError
from randkol.sources import (IID, Classic, Markov, Periodic, SelfRef, make_source, parse_spec,
                             selfref_build, source_next)


def test_parse_examples():
    assert parse_spec("periodic:122") == Periodic((1, 2, 2))
    assert parse_spec("markov:p=0.99,a=1,b=3") == Markov(0.99, 1, 3, start=1)
    assert parse_spec("classic:1,3") == Classic(1, 3)
    assert parse_spec("iid:p=0.3,a=1,b=2") == IID(0.3, 1, 2)
    assert parse_spec("selfref") == SelfRef()
    assert parse_spec("markov:b=2,a=1,p=0.5,start=2").start == 2
    assert parse_spec("iid:b=1,p=0.5,a=2") == IID(0.5, 2, 1)


@pytest.mark.parametrize("text", [
    "iid:p=1.2,a=1,b=2", "iid:p=0,a=1,b=2", "iid:p=1,a=1,b=2", "markov:p=0.5,a=1,b=1",
    "classic:2,2", "markov:p=0.5,a=1,b=2,start=3", "periodic:102", "classic:0,1",
])
def test_domain_errors(text):
    with pytest.raises(DomainError):
        parse_spec(text)


@pytest.mark.parametrize("text, position", [
    ("", 0), ("foo:1", 0), ("periodic:", 9), ("periodic:12a", 11), ("classic:1", 8),
    ("iid:p=0.5,a=1", 13), ("iid:p=x,a=1,b=2", 6), ("iid:q=0.5,a=1,b=2", 4),
    ("iid:p=0.5,p=0.5,a=1,b=2", 10), ("Iid:p=0.5,a=1,b=2", 0), ("markov:p=0.5,a=1,b=2,start", 21),
    ("iid:p=nan,a=1,b=2", 6), ("selfref:", 8),
])
def test_syntax_errors_report_position(text, position):
    with pytest.raises(SpecSyntaxError) as info:
        parse_spec(text)
    assert info.value.position == position


@pytest.mark.parametrize("text", ["periodic:2112111", "classic:1,3", "iid:p=0.25,a=1,b=2",
                                  "markov:p=0.7,a=1,b=3,start=3", "selfref"])
def test_describe_round_trip(text):
    assert parse_spec(parse_spec(text).describe()) == parse_spec(text)


def test_letters_of_single_letter_pattern_include_one():
    assert Periodic((2,)).letters == (1, 2)
    assert Periodic((1,)).letters == (1,)


def test_markov_first_emission_is_start():
    for seed in range(20):
        assert source_next(make_source(Markov(0.5, 1, 2, start=1), seed)) == 1
        assert source_next(make_source(Markov(0.5, 1, 2, start=2), seed)) == 2


def test_periodic_cycles():
    assert make_source(parse_spec("periodic:12")).take(7) == (1, 2, 1, 2, 1, 2, 1)
    assert make_source(parse_spec("classic:3,1")).take(4) == (3, 1, 3, 1)


def test_iid_frequency():
    n = 10**6
    T = np.array(make_source(parse_spec("iid:p=0.5,a=1,b=2"), seed=1).take(n))
    assert abs((T == 1).mean() - 0.5) <= 0.002


def test_markov_flip_frequency():
    n = 10**6
    p = 0.3
    T = np.array(make_source(Markov(p, 1, 2), seed=4).take(n))
    flips = (T[1:] != T[:-1]).mean()
    assert abs(flips - p) <= 3 * math.sqrt(p * (1 - p) / (n - 1))


@given(st.integers(0, 2**64 - 1))
def test_reproducible_under_seed(seed):
    for spec in (IID(0.4, 1, 2), Markov(0.8, 1, 3)):
        assert make_source(spec, seed).take(200) == make_source(spec, seed).take(200)


def test_position_counts_emissions():
    s = make_source(IID(0.4, 1, 2), 3)
    s.take(17)
    assert s.position == 17 and s.rng.position == 17
    m = make_source(Markov(0.4, 1, 2), 3)
    m.take(17)
    assert m.position == 17 and m.rng.position == 16


def test_selfref_build_examples():
    assert selfref_build(1) == ((2,), (2, 2))
    assert selfref_build(4)[0] == (2, 1, 1, 2)
    assert selfref_build(7) == ((2, 1, 1, 2, 1, 1, 2), (2, 2, 1, 1, 1, 2, 1, 1, 1, 2))
    with pytest.raises(DomainError):
        selfref_build(0)


def test_selfref_source_matches_build():
    T, O = selfref_build(500)
    s = make_source(SelfRef())
    assert s.take(500) == T
    assert tuple(s.O[:len(O)]) == O


@pytest.mark.parametrize("n", [1, 2, 3, 10, 97, 1000, 10**4])
def test_selfref_T_directs_O(n):
    T, O = selfref_build(n)
    assert direct_finite(T) == O


def test_selfref_coupling_every_n():
    T, O = selfref_build(20_000)
    T, O = np.array(T), np.array(O)
    ends = np.cumsum(O[:len(T)])
    T2 = np.cumsum(T == 2)
    O2 = np.cumsum(O == 2)[ends - 1]
    assert np.all(O2 == T2 + 1)
