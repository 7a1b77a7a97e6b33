"""Brute-force reference computations.

Everything here is plain integer arithmetic on explicitly generated
sequences.  None of it touches the automata engine, so these functions can
sit on the other side of every regression check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fields import FqField


# ---------------------------------------------------------------------------
# Fibonacci / Beatty groundwork


def fib_list(limit_value):
    """Fibonacci numbers F_1..F_m as [0, 1, 1, 2, 3, ...], F[i] subscripted,
    extended until the last entry exceeds limit_value."""
    f = [0, 1]
    while f[-1] <= limit_value:
        f.append(f[-1] + f[-2])
    return f


def zeckendorf_indices(n):
    """Indices i (all >= 2, no two adjacent) with n = sum of F_i."""
    if n < 0:
        raise ValueError("negative value")
    f = fib_list(n)
    out = []
    i = len(f) - 1
    while n > 0:
        while f[i] > n:
            i -= 1
        out.append(i)
        n -= f[i]
        i -= 2
    return out


def floor_phi(n):
    """floor(n*phi) by shifting the Zeckendorf expansion one index up.

    floor(n*phi) = sum F_{i+1} over the expansion, minus one exactly when
    the lowest index used is even (the (-1/phi)^i error terms telescope).
    """
    if n == 0:
        return 0
    idx = zeckendorf_indices(n)
    f = fib_list(4 * n + 4)
    total = sum(f[i + 1] for i in idx)
    return total - 1 if idx[-1] % 2 == 0 else total


def floor_phi_sqrt(n):
    """floor(n*phi) via integer square roots, as an independent cross-check."""
    return (n + math.isqrt(5 * n * n)) // 2


def upper_wythoff(n):
    """floor(n*phi^2) = n + floor(n*phi)."""
    return n + floor_phi(n)


def upper_wythoff_upto(limit):
    out = []
    n = 1
    while True:
        v = upper_wythoff(n)
        if v > limit:
            return out
        out.append(v)
        n += 1


# ---------------------------------------------------------------------------
# Sums of two distinct upper Wythoff numbers, and the gap structure


def unsums_upto(limit):
    """All n in 1..limit that are not a+b with a < b both upper Wythoff."""
    uw = upper_wythoff_upto(limit)
    # Pack the indicator into 32-bit fields of one big integer; squaring then
    # counts ordered pairs (a, b) with a+b = s.  Counts stay far below 2^32.
    packed = 0
    for v in uw:
        packed |= 1 << (32 * v)
    sq = packed * packed
    uwset = set(uw)
    out = []
    for n in range(1, limit + 1):
        pairs = (sq >> (32 * n)) & 0xFFFFFFFF
        if n % 2 == 0 and n // 2 in uwset:
            pairs -= 1  # a = b = n/2 is not a pair of distinct terms
        if pairs == 0:
            out.append(n)
    return out


def gaps(seq):
    return [b - a for a, b in zip(seq, seq[1:])]


_IRREGULAR_GAP_PREFIX = 10  # gaps before the first 2-marker block structure


def palindrome_blocks(gapseq):
    """Split the gap sequence at the 2 markers (past the irregular prefix)
    and return the distinct blocks W_1, W_2, ... in order of appearance.

    The stream looks like 2 W1 2 W1 2 W2 2 W2 2 ...; each block is returned
    once and the doubling is checked by the caller's tests.
    """
    tail = gapseq[_IRREGULAR_GAP_PREFIX:]
    if not tail or tail[0] != 2:
        raise ValueError("gap stream does not start a 2-marker after prefix")
    blocks = []
    cur = []
    for g in tail[1:]:
        if g == 2:
            blocks.append(cur)
            cur = []
        else:
            cur.append(g)
    out = []
    for b in blocks:
        if not out or b != out[-1]:
            out.append(b)
    return out


def paired_blocks(gapseq):
    """The raw block stream between 2 markers, duplicates kept."""
    tail = gapseq[_IRREGULAR_GAP_PREFIX:]
    blocks = []
    cur = None
    for g in tail:
        if g == 2:
            if cur is not None:
                blocks.append(cur)
            cur = []
        else:
            if cur is not None:
                cur.append(g)
    return blocks


# ---------------------------------------------------------------------------
# Mex-defined anti-recurrence sequences


def anti_nacci(k, terms):
    """k rows built by successive mex plus the row of their sums.

    Returns (rows, sums) where rows is a list of k lists of length `terms`.
    Row values and sums are all pairwise distinct; the occupancy array is the
    definition, not an optimisation.
    """
    cap = (k * k + 1) * (terms + 2) + 16
    used = bytearray(cap + 1)
    rows = [[] for _ in range(k)]
    sums = []
    frontier = 1
    for _ in range(terms):
        picked = []
        for j in range(k):
            while used[frontier]:
                frontier += 1
            v = frontier
            used[v] = 1
            rows[j].append(v)
            picked.append(v)
        s = sum(picked)
        assert not used[s], "sum collided with an existing term"
        used[s] = 1
        sums.append(s)
    return rows, sums


# The affine remainder expressions observed for the anti-Tribonacci and
# anti-Teranacci rows: rem = c1*n + c0 - mult*row_n.
REMAINDER_EXPRS = {
    3: (("A", 10, -6, 3), ("B", 10, -2, 3), ("C", 10, 1, 3), ("D", 10, -3, 1)),
    4: (
        ("A", 17, -11, 4),
        ("B", 17, -7, 4),
        ("C", 17, -3, 4),
        ("D", 17, 1, 4),
        ("E", 17, -5, 1),
    ),
}


def remainder_sequences(k, terms):
    """dict row-name -> list of remainders (n is 1-based)."""
    rows, sums = anti_nacci(k, terms)
    series = rows + [sums]
    out = {}
    for (name, c1, c0, mult), seq in zip(REMAINDER_EXPRS[k], series):
        out[name] = [c1 * (n + 1) + c0 - mult * v for n, v in enumerate(seq)]
    return out

def remainder_bounds(k, terms=100_000):
    """Observed (min, max) per row of the affine remainder expressions."""
    return {name: (min(r), max(r)) for name, r in remainder_sequences(k, terms).items()}


# ---------------------------------------------------------------------------
# Greedy sum-of-three-distinct-terms-free sequences


def subsumfree(x, y, z, count):
    """Greedy S_{x,y,z}: starts x, y, z; each later term is the least integer
    above the previous one that is not a sum of three distinct earlier terms."""
    if not (0 < x < y < z):
        raise ValueError("seeds must be increasing positive integers")
    seq = []
    elems = pairs = triples = 0
    def push(v):
        nonlocal elems, pairs, triples
        triples |= pairs << v
        pairs |= elems << v
        elems |= 1 << v
        seq.append(v)
    for v in (x, y, z):
        push(v)
    while len(seq) < count:
        free = ~triples >> (seq[-1] + 1)
        step = (free & -free).bit_length() - 1
        push(seq[-1] + 1 + step)
    return seq[:count]


@dataclass(frozen=True)
class Periodicity:
    modulus: int
    preperiod: int
    period: int
    residues: tuple
    head: tuple


def detect_periodicity(seq, modulus, min_repeats=3):
    """Minimal (period, preperiod) for seq mod modulus.

    Requires the prefix to cover at least min_repeats full periods past the
    preperiod; returns None when nothing qualifies.
    """
    r = [v % modulus for v in seq]
    n = len(r)
    for p in range(1, n // max(min_repeats, 1) + 1):
        pre = 0
        for i in range(n - p - 1, -1, -1):
            if r[i] != r[i + p]:
                pre = i + 1
                break
        if pre + min_repeats * p <= n:
            return Periodicity(
                modulus=modulus,
                preperiod=pre,
                period=p,
                residues=tuple(r[pre:pre + p]),
                head=tuple(seq[:pre]),
            )
    return None


def search_periodicity(seq, max_modulus, min_repeats=3):
    """Scan moduli for the smallest (modulus, period) with period <= modulus."""
    best = None
    for m in range(1, max_modulus + 1):
        found = detect_periodicity(seq, m, min_repeats)
        if found and found.period <= m:
            if best is None or found.period < best.period:
                best = found
    return best


# ---------------------------------------------------------------------------
# Polynomial expansion over F_q


def expand_poly_fq(f: FqField, exps):
    """Coefficients of prod_{i=1}^{q-1} (x - i)^{exps[i-1]} over F_q.

    exps lists one exponent per nonzero field element in encoding order.
    """
    if len(exps) != f.q - 1:
        raise ValueError("need one exponent per nonzero element")
    coeffs = [1]
    for root, e in zip(range(1, f.q), exps):
        for _ in range(e):
            nxt = [0] * (len(coeffs) + 1)
            for j, c in enumerate(coeffs):
                nxt[j + 1] = f.add(nxt[j + 1], c)
                nxt[j] = f.sub(nxt[j], f.mul(root, c))
            coeffs = nxt
    return coeffs


# ---------------------------------------------------------------------------
# k-kernel evidence for conjectured automaticity


def kernel_evidence(seq, k, min_window=8, max_states=512):
    """Number of pairwise-distinct k-kernel subsequences of seq, where two
    are considered equal when they agree on their overlapping evidence.

    Exploration stops at moduli whose windows get shorter than min_window,
    so the count is a lower-confidence estimate that stabilises (as the
    prefix grows) exactly when the sequence looks k-automatic.
    """
    n = len(seq)
    classes = []  # list of (modulus, residue) representatives
    queue = [(1, 0)]
    while queue:
        m, r = queue.pop(0)
        vec = seq[r::m]
        matched = False
        for cm, cr in classes:
            cvec = seq[cr::cm]
            overlap = min(len(vec), len(cvec))
            if vec[:overlap] == cvec[:overlap]:
                matched = True
                break
        if matched:
            continue
        classes.append((m, r))
        if len(classes) >= max_states:
            break
        if m * k * min_window <= n:
            for d in range(k):
                queue.append((m * k, r + d * m))
    return len(classes)


def _gf3_add(alo, ahi, blo, bhi):
    """Bitsliced mod-3 addition: each coefficient is two bits, 1=(lo) 2=(hi)."""
    za = ~(alo | ahi)
    zb = ~(blo | bhi)
    return ((alo & zb) | (blo & za) | (ahi & bhi),
            (ahi & zb) | (bhi & za) | (alo & blo))


def f3_all_nonzero_ns(bound):
    """Sorted n < bound such that (x-1)^c (x-2)^d over F_3 has every
    coefficient nonzero for some c, d with c + d + 1 = n.

    Walks the degree levels: row c of level lvl holds (x-1)^c (x-2)^(lvl-c),
    obtained from level lvl-1 by one multiplication per row.  Coefficients
    are bitsliced into two uint64 planes (64 per word) so a level step is a
    handful of vectorized boolean operations; with -1 = 2 mod 3 the (x-1)
    step is shift plus plane swap, and the (x-2) step is shift plus identity.
    """
    import numpy as np

    hits = [1]                        # c = d = 0: the constant 1
    words = (bound + 63) // 64
    lo = np.zeros((1, words), dtype=np.uint64)
    hi = np.zeros((1, words), dtype=np.uint64)
    lo[0, 0] = 1
    for lvl in range(1, bound - 1):
        n = lvl + 1
        shlo = (lo << np.uint64(1))
        shhi = (hi << np.uint64(1))
        shlo[:, 1:] |= lo[:, :-1] >> np.uint64(63)
        shhi[:, 1:] |= hi[:, :-1] >> np.uint64(63)
        nlo = np.empty((lvl + 1, words), dtype=np.uint64)
        nhi = np.empty_like(nlo)
        nlo[1:], nhi[1:] = _gf3_add(shlo, shhi, hi, lo)           # times (x-1)
        nlo[0], nhi[0] = _gf3_add(shlo[0], shhi[0], lo[0], hi[0])  # times (x-2)
        lo, hi = nlo, nhi
        nz = lo | hi
        full, rem = divmod(lvl + 1, 64)
        ok = np.ones(lvl + 1, dtype=bool)
        if full:
            ok &= (nz[:, :full] == np.uint64(0xFFFFFFFFFFFFFFFF)).all(axis=1)
        if rem:
            mask = np.uint64((1 << rem) - 1)
            ok &= (nz[:, full] & mask) == mask
        if bool(ok.any()):
            hits.append(n)
    return hits
