"""Regex compilation to padded value predicates."""

import math

import pytest

from conftest import system
from seqlogic.automata import enumerate_values, language_upto
from seqlogic.oracles import fib_list
from seqlogic.regex import RegexError, compile_regex


def _values(a, bound, *tags):
    systems = tuple(system(t) for t in tags)
    got = enumerate_values(a, bound, systems)
    return set(got)


def test_powers_of_two():
    a = compile_regex("0*10*", (system("msd_2"),))
    assert _values(a, 4096, "msd_2") == {2 ** j for j in range(13)}


def test_fibonacci_numbers():
    a = compile_regex("0*10*", (system("msd_fib"),))
    assert _values(a, 1000, "msd_fib") == set(fib_list(1000))


def test_binomial_parity_pairs():
    # digitwise domination encodes odd binomial coefficients
    a = compile_regex("([0,0]|[0,1]|[1,1])*", (system("msd_2"), system("msd_2")))
    got = _values(a, 64, "msd_2", "msd_2")
    want = {(k, n) for n in range(65) for k in range(65)
            if math.comb(n, k) % 2 == 1 and k <= n}
    assert got == want


def test_concat_and_literal_digits():
    a = compile_regex("11", (system("msd_3"),))
    assert _values(a, 100, "msd_3") == {4}


def test_alternation_union():
    a = compile_regex("10|101", (system("msd_2"),))
    assert _values(a, 100, "msd_2") == {2, 5}


def test_plus_and_option():
    a = compile_regex("1+0?", (system("msd_2"),))
    # 1, 10, 11, 110, 111, 1110, ...: runs of ones possibly shifted once
    want = set()
    for ones in range(1, 8):
        v = (1 << ones) - 1
        want.add(v)
        want.add(v * 2)
    assert _values(a, 255, "msd_2") == {v for v in want if v <= 255}


def test_lsd_padding_closure():
    # trailing zeros must be absorbed for lsd systems
    a = compile_regex("1", (system("lsd_2"),))
    assert _values(a, 64, "lsd_2") == {1}
    assert (1, 0, 0) in language_upto(a, 3)


def test_msd_padding_closure():
    a = compile_regex("1", (system("msd_2"),))
    assert _values(a, 64, "msd_2") == {1}
    assert (0, 0, 1) in language_upto(a, 3)


def test_multitrack_symbol_arity_checked():
    with pytest.raises(RegexError):
        compile_regex("[0,1]", (system("msd_2"),))
    with pytest.raises(RegexError):
        compile_regex("[0]", (system("msd_2"), system("msd_2")))


def test_digit_range_checked():
    with pytest.raises(RegexError):
        compile_regex("2", (system("msd_2"),))
    with pytest.raises(RegexError):
        compile_regex("[3,0]", (system("msd_3"), system("msd_3"))).alphabet


def test_malformed_rejected():
    for bad in ("(", ")", "(1", "[0,1", "*", "a", "[x]"):
        with pytest.raises(RegexError):
            compile_regex(bad, (system("msd_2"), system("msd_2")))


def test_mixed_direction_rejected():
    with pytest.raises(RegexError):
        compile_regex("[0,0]", (system("msd_2"), system("lsd_2")))


def test_empty_regex_matches_only_zero():
    # the empty string decodes to 0 and padding closure keeps it there
    a = compile_regex("0*", (system("msd_2"),))
    assert _values(a, 32, "msd_2") == {0}
