"""Automatic words: DFAOs indexed through a numeration system.

A word maps n (or a tuple, for multi-track words) to a finite output by
feeding the padded digit representation to a DFAO.  Besides file-backed
words this module builds fixed points of uniform morphisms, carries the
two builtins F (Fibonacci word, Zeckendorf indexing) and PD (period
doubling, base 2), and guesses k-DFAOs from sequence prefixes by merging
kernel subsequences that agree on their shared evidence.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .automata import (Alphabet, Dfa, Dfao, determinize_with_alphabet, from_text, minimize,
                       reverse, to_text)
from .numeration import NumerationSystem


@dataclass(frozen=True)
class Word:
    name: str
    system: NumerationSystem
    dfao: Dfao

    @property
    def tracks(self):
        return self.dfao.alphabet.tracks

    def __getitem__(self, args):
        if not isinstance(args, tuple):
            args = (args,)
        return word_value(self.dfao, self.system, args)


def word_value(dfao, system, args):
    """Output for a tuple of naturals, one per track, padded to equal length."""
    digs = [system.encode(a) for a in args]
    length = max(len(d) for d in digs)
    pad = (0,) * length
    if system.lsd:
        digs = [d + pad[len(d):] for d in digs]
    else:
        digs = [pad[len(d):] + d for d in digs]
    return dfao.output_for(zip(*digs))


@dataclass(frozen=True)
class Morphism:
    """Uniform morphism over letters 0..L-1 with an optional output coding."""

    images: tuple
    coding: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(tuple(im) for im in self.images))
        k = len(self.images[0])
        if k < 2 or any(len(im) != k for im in self.images):
            raise ValueError("morphism must be uniform of length >= 2")
        if self.images[0][0] != 0:
            raise ValueError("morphism must be prolongable on letter 0")
        if self.coding is not None:
            object.__setattr__(self, "coding", tuple(self.coding))

    @property
    def k(self):
        return len(self.images[0])

    def fixed_point(self, length):
        word = [0]
        while len(word) < length:
            word = [c for letter in word for c in self.images[letter]]
        return word[:length]


def fixed_point_dfao(m: Morphism):
    """DFAO over msd base-k whose output at encode(n) is letter n of the
    fixed point.  Leading zeros are absorbed by prolongability."""
    trans = np.array(m.images, dtype=np.int32)
    outputs = m.coding if m.coding is not None else tuple(range(len(m.images)))
    return Dfao(Alphabet((m.k,)), trans, outputs, 0)


def builtin_F():
    """The Fibonacci word, output 1 on letter b: F[n] is the last Zeckendorf
    digit of n, with a dead state guarding adjacent 1s."""
    sysF = NumerationSystem.parse_tag("msd_fib")
    trans = np.array([[0, 1], [0, 2], [2, 2]], dtype=np.int32)
    return Word("F", sysF, Dfao(Alphabet((2,)), trans, [0, 1, 0], 0))


def builtin_PD():
    """Period-doubling word: fixed point of 0 -> 01, 1 -> 00."""
    sys2 = NumerationSystem.parse_tag("msd_2")
    return Word("PD", sys2, fixed_point_dfao(Morphism(((0, 1), (0, 0)))))


# ---------------------------------------------------------------------------
# Files


def words_dir():
    return os.path.join(os.path.dirname(__file__), "words_data")


def save_word(word, path):
    with open(path, "w") as fh:
        fh.write(to_text(word.dfao, (word.system.tag,) * word.tracks))


def load_word(name, path):
    with open(path) as fh:
        loaded = from_text(fh.read())
    systems = {tag for tag in loaded.tags}
    if len(systems) != 1:
        raise ValueError(f"word {name}: all tracks must share one numeration, got {loaded.tags}")
    system = NumerationSystem.parse_tag(loaded.tags[0])
    return Word(name, system, loaded.as_dfao())


def load_directory(directory):
    out = {}
    for fn in sorted(os.listdir(directory)):
        if fn.endswith(".txt"):
            name = fn[:-4]
            out[name] = load_word(name, os.path.join(directory, fn))
    return out


# ---------------------------------------------------------------------------
# DFAO guessing from prefixes


class GuessError(ValueError):
    pass


def guess_dfao(prefix, k, lsd=True, max_states=1024, min_window=8):
    """Candidate k-DFAO reproducing the prefix.

    States are kernel classes (m, r) ~ the subsequence prefix[r::m]; reading
    lsd digit d maps (m, r) to (m*k, r+d*m).  Classes merge with the earliest
    discovered class whose evidence agrees on the overlap, which is a guess:
    the caller must verify the result beyond the prefix.  The prefix itself
    is reproduced exactly (asserted below).
    """
    seq = np.asarray(list(prefix), dtype=np.int64)
    n = len(seq)
    if n < k * min_window:
        raise GuessError("prefix too short to support any evidence")

    reps = []      # per state: its evidence subsequence
    rows = []
    key_of = {}

    def classify(m, r):
        ev = seq[r::m]
        if len(ev) < min_window:
            raise GuessError(f"evidence window below {min_window} at modulus {m}")
        for i, known in enumerate(reps):
            span = min(len(known), len(ev))
            if np.array_equal(known[:span], ev[:span]):
                return i, False
        reps.append(ev)
        if len(reps) > max_states:
            raise GuessError("no consistent machine within the state budget")
        return len(reps) - 1, True

    sid, _ = classify(1, 0)
    key_of[(1, 0)] = sid
    i = 0
    pending = [(1, 0)]
    while i < len(pending):
        m, r = pending[i]
        i += 1
        row = []
        for d in range(k):
            child = (m * k, r + d * m)
            if child not in key_of:
                cid, fresh = classify(*child)
                key_of[child] = cid
                if fresh:
                    pending.append(child)
            row.append(key_of[child])
        rows.append(row)

    outputs = [int(ev[0]) for ev in reps]
    dfao = Dfao(Alphabet((k,)), np.array(rows, dtype=np.int32), outputs, 0)
    dfao = minimize(dfao)
    system = NumerationSystem.parse_tag(f"lsd_{k}")
    for j in range(n):
        assert word_value(dfao, system, (j,)) == seq[j], f"guess broke its own prefix at {j}"
    if lsd:
        return dfao
    return msd_from_lsd(dfao)


def msd_from_lsd(dfao):
    """Equivalent msd-reading DFAO for a base-k lsd DFAO."""
    alph = dfao.alphabet
    values = sorted(set(np.unique(dfao.outputs).tolist()))
    parts = [minimize(determinize_with_alphabet(reverse(dfao.preimage(c)), alph)) for c in values]
    start = tuple(p.initial for p in parts)
    ids = {start: 0}
    queue = [start]
    rows = []
    outs = []
    while queue:
        cur = queue.pop(0)
        hits = [c for c, p, s in zip(values, parts, cur) if p.accept[s]]
        assert len(hits) == 1, "padded representations must land in exactly one preimage"
        outs.append(hits[0])
        row = []
        for e in range(alph.num_symbols):
            nxt = tuple(int(p.trans[s, e]) for p, s in zip(parts, cur))
            if nxt not in ids:
                ids[nxt] = len(ids)
                queue.append(nxt)
            row.append(ids[nxt])
        rows.append(row)
    return minimize(Dfao(alph, np.array(rows, dtype=np.int32), outs, 0))
