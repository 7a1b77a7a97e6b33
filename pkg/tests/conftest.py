"""Shared strategies and brute-force helpers for the test suite."""

import numpy as np
from hypothesis import settings
from hypothesis import strategies as st

from seqlogic.automata import Alphabet, Dfa, language_upto
from seqlogic.numeration import NumerationSystem, add_dfa

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")

BASE_TAGS = [f"{order}_{k}" for k in range(2, 11) for order in ("msd", "lsd")]
ALL_TAGS = BASE_TAGS + ["msd_fib"]


def system(tag):
    return NumerationSystem.parse_tag(tag)


@st.composite
def dfa_st(draw, sizes=(2,), max_states=5):
    """Random total DFA over the given track sizes."""
    alph = Alphabet(sizes)
    m = alph.num_symbols
    n = draw(st.integers(1, max_states))
    rows = draw(st.lists(
        st.lists(st.integers(0, n - 1), min_size=m, max_size=m),
        min_size=n, max_size=n))
    accept = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    initial = draw(st.integers(0, n - 1))
    return Dfa(alph, np.array(rows, dtype=np.int32), accept, initial)


def random_dfa(rng, n, sizes=(2,)):
    """Seeded random DFA for deterministic battery checks."""
    alph = Alphabet(sizes)
    trans = rng.integers(0, n, size=(n, alph.num_symbols), dtype=np.int32)
    accept = rng.integers(0, 2, size=n).astype(bool)
    return Dfa(alph, trans, accept, int(rng.integers(0, n)))


def lang(a, maxlen):
    return language_upto(a, maxlen)


# ---------------------------------------------------------------------------
# Vectorized exhaustive checks of the arithmetic relation automata.  One
# batched DFA run per digit position covers every operand pair at once.


def digit_matrix(sys_, hi):
    """Digits of 0..hi in reading order, padded to a common width."""
    width = sys_.digits_needed(hi)
    if sys_.kind == "base":
        v = np.arange(hi + 1, dtype=np.int64)
        cols = []
        for _ in range(width):
            cols.append(v % sys_.base)
            v = v // sys_.base
        digs = np.stack(cols, axis=1)  # lsd order; high positions are zero
        if not sys_.lsd:
            digs = digs[:, ::-1]
    else:
        digs = np.zeros((hi + 1, width), dtype=np.int64)
        for n in range(hi + 1):
            enc = sys_.encode(n)
            digs[n, width - len(enc):] = enc  # msd: pad on the left
    return np.ascontiguousarray(digs)


def run_batch(dfa, digit_tracks):
    """Final states for a batch of equal-length multi-track strings.

    digit_tracks lists one digit array per track, all of shape
    (..., width); mixed-radix symbol packing matches Alphabet.index.
    """
    sizes = dfa.alphabet.sizes
    width = digit_tracks[0].shape[-1]
    state = np.full(digit_tracks[0].shape[:-1], dfa.initial, dtype=np.int32)
    trans = dfa.trans
    for i in range(width):
        sym = digit_tracks[0][..., i]
        for t in range(1, len(sizes)):
            sym = sym * sizes[t] + digit_tracks[t][..., i]
        state = trans[state, sym]
    return state


def adder_exhaustive(sys_, limit, chunk=1024, seed=0):
    """Check x + y = z over all pairs x, y <= limit: the true sum is
    accepted while off-by-one and random wrong sums are rejected."""
    a = add_dfa(sys_)
    k = sys_.digit_count
    digs = digit_matrix(sys_, 2 * limit + 1).astype(np.int32)
    scaled_x = digs * (k * k)
    scaled_y = digs * k
    trans = a.trans
    accept = np.asarray(a.accept)
    width = digs.shape[1]
    rng = np.random.default_rng(seed)
    ys = np.arange(limit + 1)
    for start in range(0, limit + 1, chunk):
        xs = np.arange(start, min(start + chunk, limit + 1))
        S = xs[:, None] + ys[None, :]
        dx = scaled_x[xs][:, None, :]
        dy = scaled_y[ys][None, :, :]
        noise = rng.integers(0, 2 * limit + 2, size=S.shape)
        for Z in (S, S + 1, np.maximum(S - 1, 0), noise):
            expected = Z == S
            state = np.full(S.shape, a.initial, dtype=np.int32)
            for i in range(width):
                sym = dx[:, :, i] + dy[:, :, i] + digs[Z, i]
                state = trans[state, sym]
            got = accept[state]
            if not np.array_equal(got, expected):
                bad = tuple(np.argwhere(got != expected)[0])
                x, y, z = int(xs[bad[0]]), int(ys[bad[1]]), int(Z[bad])
                return f"{sys_.tag}: ({x}, {y}, {z}) misjudged"
    return None


def adder_triples_exhaustive(sys_, limit):
    """Check x + y = z against every triple with x, y, z <= limit."""
    a = add_dfa(sys_)
    k = sys_.digit_count
    digs = digit_matrix(sys_, limit).astype(np.int32)
    width = digs.shape[1]
    vals = np.arange(limit + 1)
    dx = (digs * (k * k))[:, None, None, :]
    dy = (digs * k)[None, :, None, :]
    dz = digs[None, None, :, :]
    state = np.full((limit + 1,) * 3, a.initial, dtype=np.int32)
    trans = a.trans
    for i in range(width):
        state = trans[state, dx[..., i] + dy[..., i] + dz[..., i]]
    expected = vals[:, None, None] + vals[None, :, None] == vals[None, None, :]
    got = np.asarray(a.accept)[state]
    if not np.array_equal(got, expected):
        bad = tuple(int(v) for v in np.argwhere(got != expected)[0])
        return f"{sys_.tag}: triple {bad} misjudged"
    return None


def relation_exhaustive(sys_, dfa, limit, predicate):
    """Check a two-track relation automaton against predicate(x, y) for all
    x, y <= limit."""
    digs = digit_matrix(sys_, limit)
    xs = np.arange(limit + 1, dtype=np.int64)
    X = np.broadcast_to(xs[:, None], (len(xs), len(xs)))
    Y = np.broadcast_to(xs[None, :], X.shape)
    state = run_batch(dfa, [digs[X], digs[Y]])
    expected = predicate(X, Y)
    got = np.asarray(dfa.accept)[state]
    if not np.array_equal(got, expected):
        bad = tuple(np.argwhere(got != expected)[0])
        return f"{sys_.tag}: ({int(X[bad])}, {int(Y[bad])}) misjudged"
    return None
