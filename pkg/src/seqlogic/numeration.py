"""Positional numeration systems and their arithmetic automata.

Supported systems: base k for 2 <= k <= 10 read msd-first or lsd-first, and
the Fibonacci (Zeckendorf) system read msd-first.  In the Fibonacci system
the digit at lsd position i weighs F(i+2) with F(1)=F(2)=1, digits are 0/1
and no two adjacent 1s may occur.

The relation builders return total DFAs over tuple tracks that accept every
padded representation of the relation's solutions, so they compose directly
under product/projection without ad hoc padding fixes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .automata import Alphabet, Dfa, cylindrify, determinize_with_alphabet, minimize, product, reverse

_FIB_PLACES = [1, 2]  # F(2), F(3), ...


def _fib_place(i):
    while len(_FIB_PLACES) <= i:
        _FIB_PLACES.append(_FIB_PLACES[-1] + _FIB_PLACES[-2])
    return _FIB_PLACES[i]


@dataclass(frozen=True)
class NumerationSystem:
    kind: str  # "base" or "fib"
    base: int  # radix for kind "base", 0 for "fib"
    lsd: bool

    def __post_init__(self):
        if self.kind == "base":
            if not 2 <= self.base <= 10:
                raise ValueError(f"base {self.base} out of supported range 2..10")
        elif self.kind == "fib":
            if self.lsd:
                raise ValueError("the Fibonacci system is msd-first only")
        else:
            raise ValueError(f"unknown numeration kind {self.kind!r}")

    @staticmethod
    def parse_tag(tag):
        head, _, rest = tag.partition("_")
        if head not in ("msd", "lsd") or not rest:
            raise ValueError(f"unknown numeration tag {tag!r}")
        lsd = head == "lsd"
        if rest == "fib":
            return NumerationSystem("fib", 0, lsd)
        if not rest.isdigit():
            raise ValueError(f"unknown numeration tag {tag!r}")
        return NumerationSystem("base", int(rest), lsd)

    @property
    def tag(self):
        suffix = "fib" if self.kind == "fib" else str(self.base)
        return ("lsd_" if self.lsd else "msd_") + suffix

    @property
    def digit_count(self):
        return 2 if self.kind == "fib" else self.base

    def place_value(self, i):
        if self.kind == "fib":
            return _fib_place(i)
        return self.base ** i

    def encode(self, n):
        """Canonical digits of n in reading order; 0 encodes as a single 0."""
        if n < 0:
            raise ValueError("only nonnegative integers are representable")
        if n == 0:
            return (0,)
        if self.kind == "base":
            digits = []
            while n:
                n, d = divmod(n, self.base)
                digits.append(d)
        else:
            i = 0
            while _fib_place(i + 1) <= n:
                i += 1
            digits = [0] * (i + 1)
            while n:
                while _fib_place(i) > n:
                    i -= 1
                digits[i] = 1
                n -= _fib_place(i)
                i -= 2  # no adjacent 1s in a greedy expansion
        return tuple(digits) if self.lsd else tuple(reversed(digits))

    def decode(self, digits):
        seq = digits if self.lsd else tuple(reversed(digits))
        return sum(d * self.place_value(i) for i, d in enumerate(seq))

    def is_valid(self, digits):
        if any(not 0 <= d < self.digit_count for d in digits):
            return False
        if self.kind == "fib":
            return all(not (a and b) for a, b in zip(digits, digits[1:]))
        return True

    def digits_needed(self, bound):
        """Length sufficient to represent every value up to bound."""
        return len(self.encode(max(bound, 0)))


def _relation_alphabet(system, tracks):
    return Alphabet((system.digit_count,) * tracks)


def _table_dfa(alphabet, rows, accept, initial=0):
    return Dfa(alphabet, np.array(rows, dtype=np.int32), accept, initial)


@lru_cache(maxsize=None)
def valid_dfa(system):
    """All padded representations that are digitwise legal."""
    k = system.digit_count
    alph = _relation_alphabet(system, 1)
    if system.kind == "base":
        return _table_dfa(alph, [[0] * k], [True])
    # Fibonacci: reject adjacent 1s
    rows = [[0, 1], [0, 2], [2, 2]]
    return _table_dfa(alph, rows, [True, True, False])


def _with_validity(dfa, system, tracks):
    if system.kind != "fib":
        return minimize(dfa)
    v = valid_dfa(system)
    alph = dfa.alphabet
    for t in range(tracks):
        dfa = product(dfa, cylindrify(v, alph, (t,)), "and")
    return minimize(dfa)


@lru_cache(maxsize=None)
def eq_dfa(system):
    """x = y over two tracks."""
    k = system.digit_count
    alph = _relation_alphabet(system, 2)
    rows = [[0 if alph.symbol(e)[0] == alph.symbol(e)[1] else 1 for e in range(k * k)],
            [1] * (k * k)]
    d = _table_dfa(alph, rows, [True, False])
    return _with_validity(d, system, 2)


@lru_cache(maxsize=None)
def less_dfa(system):
    """x < y over two tracks, respecting the reading order."""
    k = system.digit_count
    alph = _relation_alphabet(system, 2)
    EQ, LT, GT = 0, 1, 2

    def cmp_target(state, d1, d2):
        if system.lsd:
            # later digits are more significant, so they override
            if d1 < d2:
                return LT
            if d1 > d2:
                return GT
            return state
        # msd-first: the first difference decides
        if state != EQ:
            return state
        return LT if d1 < d2 else GT if d1 > d2 else EQ

    rows = [[cmp_target(s, *alph.symbol(e)) for e in range(k * k)] for s in range(3)]
    d = _table_dfa(alph, rows, [False, True, False])
    return _with_validity(d, system, 2)


@lru_cache(maxsize=None)
def leq_dfa(system):
    d = product(less_dfa(system), eq_dfa(system), "or")
    return minimize(d)


def _base_add_lsd(k):
    """Carry automaton for x + y = z read least significant digit first."""
    alph = Alphabet((k, k, k))
    m = alph.num_symbols
    DEAD = 2
    rows = np.full((3, m), DEAD, dtype=np.int32)
    for e in range(m):
        x, y, z = alph.symbol(e)
        for c in (0, 1):
            s = x + y + c
            if s % k == z:
                rows[c, e] = s // k
    return Dfa(alph, rows, [True, False, False])


def _fib_add():
    """x + y = z in the Fibonacci system, msd-first.

    State (a, b) asserts the running value difference of the prefixes equals
    a*F(r+2) + b*F(r+1) where r digits remain; reading digit triple with
    d = x + y - z maps (a, b) to (a+b+d, a) and the final test is a+b = 0.
    A state survives only if some suffix length r could still cancel it:
    -2*(F(r+3)-2) <= a*F(r+2) + b*F(r+1) <= F(r+3)-2 for some r <= 50.
    """
    alph = Alphabet((2, 2, 2))

    def viable(a, b):
        if a + b == 0:
            return True  # r = 0: an immediate stop already balances
        for r in range(1, 51):
            t = a * _fib_place(r) + b * _fib_place(r - 1)
            hi = _fib_place(r + 1) - 2
            if -2 * hi <= t <= hi:
                return True
        return False

    ids = {(0, 0): 0}
    states = [(0, 0)]
    rows = []
    i = 0
    while i < len(states):
        a, b = states[i]
        row = []
        for e in range(8):
            x, y, z = alph.symbol(e)
            na, nb = a + b + x + y - z, a
            key = (na, nb)
            if not viable(na, nb):
                row.append(-1)
                continue
            if key not in ids:
                ids[key] = len(states)
                states.append(key)
                assert len(states) < 10000, "window pruning failed to bound the state space"
            row.append(ids[key])
        rows.append(row)
        i += 1
    dead = len(states)
    trans = np.array([[dead if t < 0 else t for t in row] for row in rows] + [[dead] * 8],
                     dtype=np.int32)
    accept = np.array([a + b == 0 for a, b in states] + [False])
    return Dfa(alph, trans, accept, 0)


@lru_cache(maxsize=None)
def add_dfa(system):
    """x + y = z over three tracks."""
    if system.kind == "fib":
        return _with_validity(_fib_add(), system, 3)
    lsd_add = _base_add_lsd(system.base)
    if system.lsd:
        return minimize(lsd_add)
    rev = determinize_with_alphabet(reverse(lsd_add), lsd_add.alphabet)
    return minimize(rev)


@lru_cache(maxsize=None)
def const_dfa(system, c):
    """Single track accepting exactly the padded representations of c."""
    k = system.digit_count
    alph = _relation_alphabet(system, 1)
    digits = system.encode(c)
    L = len(digits)
    if c == 0:
        # one or more zero digits
        rows = [[1] + [2] * (k - 1), [1] + [2] * (k - 1), [2] * k]
        return _table_dfa(alph, rows, [False, True, False])
    dead = L + 1
    rows = []
    for i in range(L):
        row = [dead] * k
        if not system.lsd and i == 0:
            row[0] = 0  # leading padding zeros
        row[digits[i]] = i + 1
        rows.append(row)
    final = [dead] * k
    if system.lsd:
        final[0] = L  # trailing padding zeros
    rows.append(final)
    rows.append([dead] * k)
    accept = [False] * L + [True, False]
    return minimize(_table_dfa(alph, rows, accept))
