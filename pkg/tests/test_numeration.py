"""Numeration systems: encode/decode, validity, and relation automata."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ALL_TAGS, adder_exhaustive, adder_triples_exhaustive, relation_exhaustive, system
from seqlogic.automata import language_upto
from seqlogic.numeration import NumerationSystem, add_dfa, const_dfa, eq_dfa, leq_dfa, less_dfa, valid_dfa
from seqlogic.oracles import zeckendorf_indices


@pytest.mark.parametrize("tag", ALL_TAGS)
def test_encode_decode_roundtrip(tag):
    sys_ = system(tag)
    for n in range(2000):
        digits = sys_.encode(n)
        assert sys_.decode(digits) == n
        assert sys_.is_valid(digits)


@pytest.mark.parametrize("tag", ALL_TAGS)
def test_encoding_is_canonical(tag):
    sys_ = system(tag)
    for n in range(1, 2000):
        digits = sys_.encode(n)
        lead = digits[0] if sys_.lsd is False else digits[-1]
        assert lead != 0, f"{tag} padded encoding for {n}"
    assert sys_.encode(0) == (0,)


def test_zeckendorf_no_adjacent_ones():
    sys_ = system("msd_fib")
    for n in range(5000):
        digits = sys_.encode(n)
        assert all(not (a and b) for a, b in zip(digits, digits[1:]))


def test_zeckendorf_matches_index_oracle():
    sys_ = system("msd_fib")
    for n in range(1, 3000):
        digits = sys_.encode(n)
        lsd = tuple(reversed(digits))
        from_digits = {i + 2 for i, d in enumerate(lsd) if d}  # F_2 = 1 numbering
        assert from_digits == set(zeckendorf_indices(n))


@given(st.integers(0, 10 ** 12), st.sampled_from(ALL_TAGS))
def test_roundtrip_large(n, tag):
    sys_ = system(tag)
    assert sys_.decode(sys_.encode(n)) == n


def test_parse_tag_rejects_unknown():
    for bad in ("msd_1", "msd_11", "lsd_fib", "mid_2", "msd_", "x"):
        with pytest.raises(ValueError):
            NumerationSystem.parse_tag(bad)


def test_digits_needed_covers_bound():
    for tag in ALL_TAGS:
        sys_ = system(tag)
        for bound in (0, 1, 7, 100, 4999):
            width = sys_.digits_needed(bound)
            assert all(len(sys_.encode(n)) <= width for n in range(bound + 1))


@pytest.mark.parametrize("tag", ALL_TAGS)
def test_adder_small_exhaustive(tag):
    sys_ = system(tag)
    assert adder_exhaustive(sys_, 300) is None
    assert adder_triples_exhaustive(sys_, 60) is None


@pytest.mark.parametrize("tag", ALL_TAGS)
def test_order_relations_exhaustive(tag):
    sys_ = system(tag)
    assert relation_exhaustive(sys_, eq_dfa(sys_), 200, lambda x, y: x == y) is None
    assert relation_exhaustive(sys_, less_dfa(sys_), 200, lambda x, y: x < y) is None
    assert relation_exhaustive(sys_, leq_dfa(sys_), 200, lambda x, y: x <= y) is None


@pytest.mark.parametrize("tag", ["msd_2", "lsd_4", "msd_fib", "lsd_10"])
def test_const_dfa(tag):
    sys_ = system(tag)
    for c in (0, 1, 5, 144):
        a = const_dfa(sys_, c)
        for n in range(300):
            width = sys_.digits_needed(max(n, c))
            digits = list(sys_.encode(n))
            pad = [0] * (width - len(digits))
            padded = digits + pad if sys_.lsd else pad + digits
            state = a.initial
            for d in padded:
                state = a.step(state, d)
            assert bool(a.accept[state]) == (n == c), (tag, c, n)


@pytest.mark.parametrize("tag", ["msd_2", "lsd_3", "msd_fib"])
def test_valid_dfa_language(tag):
    sys_ = system(tag)
    a = valid_dfa(sys_)
    for word in sorted(language_upto(a, 6)):
        assert sys_.is_valid(word)
    count = sum(1 for w in _all_strings(sys_.digit_count, 6) if sys_.is_valid(w))
    assert len(language_upto(a, 6)) == count


def _all_strings(k, maxlen):
    from itertools import product as iproduct
    for length in range(maxlen + 1):
        yield from iproduct(range(k), repeat=length)


def test_fib_place_values():
    sys_ = system("msd_fib")
    assert [sys_.place_value(i) for i in range(8)] == [1, 2, 3, 5, 8, 13, 21, 34]
