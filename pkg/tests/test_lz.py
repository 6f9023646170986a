"""LZ78 parsing, bit accounting, and the encode/decode round trip."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdlz import (LzCounter, lz_bits, lz_decode, lz_encode, lz_parse,
                  lz_phrase_count, lz_ratio, random_word)
from pdlz.kernels import make_lz_stream


def test_frozen_binary_cases(expected):
    for case in expected["lz"]["cases"]:
        word = case["word"]
        parse = lz_parse(word)
        assert [[r, l, c] for (r, l, c) in parse.phrases] == case["phrases"], word
        assert lz_bits(word) == case["bits"], word
        assert lz_encode(word) == case["encoded"], word
        if word:
            assert lz_decode(case["encoded"]) == word


def test_frozen_abc_case(expected):
    case = expected["lz"]["abc_case"]
    assert lz_bits(case["word"], alphabet=case["alphabet"]) == case["bits"]
    assert lz_encode(case["word"], alphabet=case["alphabet"]) == case["encoded"]
    assert lz_decode(case["encoded"], alphabet=case["alphabet"]) == case["word"]


def test_frozen_seeded_case(expected):
    case = expected["lz"]["seeded_case"]
    parse = lz_parse(case["word"], seeds=case["seed"])
    assert [[r, l, c] for (r, l, c) in parse.phrases] == case["phrases"]
    assert lz_bits(case["word"], seeds=case["seed"]) == case["bits"]


def test_round_trip_exhaustive_short():
    for n in range(0, 10):
        for x in range(1 << n):
            w = format(x, "0{}b".format(n)) if n else ""
            if not w:
                continue
            assert lz_decode(lz_encode(w)) == w


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="01", min_size=1, max_size=400))
def test_round_trip_binary(w):
    enc = lz_encode(w)
    assert lz_decode(enc) == w
    assert len(enc) == lz_bits(w)


@settings(max_examples=100, deadline=None)
@given(st.text(alphabet="abc", min_size=1, max_size=200))
def test_round_trip_abc(w):
    assert lz_decode(lz_encode(w, alphabet="abc"), alphabet="abc") == w


def test_empty_word():
    assert lz_bits("") == 0
    assert lz_encode("") == ""
    assert lz_phrase_count("") == 0


def test_phrase_count_matches_parse():
    for seed in range(5):
        w = random_word(seed, 300)
        assert lz_phrase_count(w) == len(lz_parse(w).phrases)


def test_ratio_definition():
    w = random_word(3, 1000)
    assert lz_ratio(w) == lz_bits(w) / 1000.0
    t = random_word(4, 500, alphabet="abc")
    assert lz_ratio(t, alphabet="abc") == pytest.approx(
        lz_bits(t, alphabet="abc") / (500 * math.log2(3)))


def test_counter_matches_batch():
    w = random_word(9, 4096)
    counter = LzCounter("01")
    step = 97
    for i in range(0, len(w), step):
        counter.feed(w[i:i + step])
    assert counter.bits() == lz_bits(w)
    assert counter.phrases() == lz_phrase_count(w)
    assert counter.length == len(w)
    assert counter.ratio() == pytest.approx(lz_ratio(w))


def test_incremental_bits_monotone():
    w = random_word(12, 2000)
    stream = make_lz_stream(2)
    prev = 0
    for ch in w:
        stream.feed([int(ch)])
        now = stream.bits_now()
        assert now >= prev
        prev = now
    assert prev == lz_bits(w)


def test_seed_validation():
    with pytest.raises(ValueError, match="prefix-closed"):
        lz_parse("01", seeds=["01"])
    with pytest.raises(ValueError, match="duplicate"):
        lz_parse("01", seeds=["0", "0"])
    with pytest.raises(ValueError, match="empty"):
        lz_parse("01", seeds=[""])


def test_alphabet_validation():
    with pytest.raises(ValueError):
        lz_bits("aaa", alphabet="a")
    with pytest.raises(ValueError):
        lz_parse("012")  # default alphabet is binary


def test_decode_rejects_corrupt_input():
    with pytest.raises(ValueError):
        lz_decode("2")
    with pytest.raises(ValueError):
        lz_decode("0")        # flag without phrase fields
    good = lz_encode("0011010010111010")
    with pytest.raises(ValueError):
        lz_decode(good[:-1])  # truncated
    with pytest.raises(ValueError):
        lz_decode("11")       # incomplete final phrase with root reference


def test_seeded_round_trip():
    seeds = ["0", "00", "1"]
    for seed in range(10):
        w = random_word(seed + 50, 200)
        enc = lz_encode(w, seeds=seeds)
        assert lz_decode(enc, seeds=seeds) == w
        assert len(enc) == lz_bits(w, seeds=seeds)
