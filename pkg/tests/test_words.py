"""Automatic words: builtins, guessing, file round-trips, shipped data."""

import numpy as np
import pytest

from conftest import system
from seqlogic.automata import same_structure
from seqlogic.oracles import remainder_sequences, upper_wythoff
from seqlogic.words import (
    GuessError,
    Morphism,
    Word,
    builtin_F,
    builtin_PD,
    fixed_point_dfao,
    guess_dfao,
    load_directory,
    load_word,
    msd_from_lsd,
    save_word,
    word_value,
    words_dir,
)


def _fib_word(length):
    # fixed point of 0 -> 01, 1 -> 0
    word = [0]
    while len(word) < length:
        word = [d for letter in word for d in ((0, 1) if letter == 0 else (0,))]
    return word[:length]


def test_builtin_fib_word_prefix():
    F = builtin_F()
    want = _fib_word(600)
    got = [word_value(F.dfao, F.system, (n,)) for n in range(600)]
    assert got == want


def test_fib_word_marks_upper_wythoff():
    # F[n] = 1 exactly at n = floor(k phi^2) - 1
    F = builtin_F()
    marks = {n for n in range(500) if word_value(F.dfao, F.system, (n,)) == 1}
    assert marks == {upper_wythoff(k) - 1 for k in range(1, 200)
                     if upper_wythoff(k) - 1 < 500}


def test_builtin_period_doubling_prefix():
    PD = builtin_PD()
    want = Morphism(((0, 1), (0, 0))).fixed_point(600)
    got = [word_value(PD.dfao, PD.system, (n,)) for n in range(600)]
    assert got == want
    assert got[0] == 0


def test_fixed_point_dfao_with_coding():
    # Thue-Morse with outputs swapped through a coding
    m = Morphism(((0, 1), (1, 0)), coding=(5, 7))
    dfao = fixed_point_dfao(m)
    sys2 = system("msd_2")
    raw = Morphism(((0, 1), (1, 0))).fixed_point(300)
    for n in range(300):
        assert word_value(dfao, sys2, (n,)) == (5, 7)[raw[n]]


def test_morphism_rejects_bad_shapes():
    with pytest.raises(ValueError):
        Morphism(((0,), (1,)))  # images too short
    with pytest.raises(ValueError):
        Morphism(((1, 0), (0, 0)))  # not prolongable on 0
    with pytest.raises(ValueError):
        Morphism(((0, 1, 1), (0, 0)))  # not uniform


def test_guess_dfao_recovers_period_doubling():
    prefix = Morphism(((0, 1), (0, 0))).fixed_point(512)
    lsd = guess_dfao(prefix, 2, lsd=True)
    sysl = system("lsd_2")
    for n in range(512):
        assert word_value(lsd, sysl, (n,)) == prefix[n]
    msd = msd_from_lsd(lsd)
    PD = builtin_PD()
    for n in range(512):
        assert word_value(msd, PD.system, (n,)) == prefix[n]


def test_guess_dfao_needs_evidence():
    with pytest.raises(GuessError):
        guess_dfao([0, 1, 0], 2)
    rng = np.random.default_rng(3)
    noise = rng.integers(0, 2, size=4096).tolist()
    with pytest.raises(GuessError):
        guess_dfao(noise, 2, max_states=64)


def test_save_load_roundtrip(tmp_path):
    PD = builtin_PD()
    save_word(PD, tmp_path / "PD.txt")
    back = load_word("PD", tmp_path / "PD.txt")
    assert back.name == "PD"
    assert back.system == PD.system
    assert np.array_equal(back.dfao.trans, PD.dfao.trans)
    assert np.array_equal(back.dfao.outputs, PD.dfao.outputs)


def test_shipped_directory_loads():
    words = load_directory(words_dir())
    names = set(words)
    assert {"F", "PD", "co3", "co4"} <= names
    assert {"xkimber", "ykimber", "zkimber", "wkimber"} <= names
    assert {"xxkimber", "yykimber", "zzkimber", "vvkimber", "wwkimber"} <= names


KIMBER3 = {"A": "xkimber", "B": "ykimber", "C": "zkimber", "D": "wkimber"}
KIMBER4 = {"A": "xxkimber", "B": "yykimber", "C": "zzkimber",
           "D": "vvkimber", "E": "wwkimber"}


@pytest.mark.parametrize("k,mapping", [(3, KIMBER3), (4, KIMBER4)])
def test_shipped_remainder_words_match_oracle(k, mapping):
    words = load_directory(words_dir())
    rems = remainder_sequences(k, 2000)
    for row, wname in mapping.items():
        w = words[wname]
        got = [word_value(w.dfao, w.system, (i,)) for i in range(2000)]
        assert got == rems[row], f"{wname} diverges from row {row}"


def test_word_value_pads_tracks():
    words = load_directory(words_dir())
    co3 = words["co3"]
    # mixed-magnitude arguments exercise the digit padding
    assert word_value(co3.dfao, co3.system, (0, 0, 0)) == 1
    v = word_value(co3.dfao, co3.system, (1, 80, 2))
    assert 0 <= v < 3
