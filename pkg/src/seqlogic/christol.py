"""Digit automata for coefficients of products of linear polynomials over F_q.

co(q) maps the synchronized lsd base-q digits of (a, c_1, ..., c_{q-1}) to
the coefficient of x^a in prod_{i=1}^{q-1} (x - alpha_i)^{c_i} over F_q,
where alpha_i is the field element encoded by i.  The generating series

    G = sum over all exponent tuples of that product times y_1^c_1 ... =
      = 1 / Q,   Q = prod_i (1 - y_i * (x - alpha_i)),

is rational, so its coefficients form a q-automatic family.  States are the
numerator polynomials P over the fixed denominator Q: since Q^q equals
Q evaluated at q-th powers of the variables (Frobenius), the digit-section
operator acts by P -> section_e(P * Q^(q-1)), which preserves the finite box
deg_x <= q-1, deg_{y_i} <= 1.  The machine's output at P is P(0,...,0).
"""

from __future__ import annotations

import itertools

import numpy as np

from .automata import Alphabet, Dfao, minimize
from .fields import FqField

SUPPORTED_Q = (2, 3, 4, 5)


def _poly_mul(field, a, b):
    """Dense product of multivariate polynomials with matching rank."""
    q = field.q
    out_shape = tuple(x + y - 1 for x, y in zip(a.shape, b.shape))
    if field.char == 2 and q == 4:
        out = np.zeros(out_shape, dtype=np.int8)
        luts = [np.array([field.mul(c, v) for v in range(q)], dtype=np.int8) for c in range(q)]
        for idx in np.argwhere(a):
            c = int(a[tuple(idx)])
            sl = tuple(slice(i, i + s) for i, s in zip(idx, b.shape))
            out[sl] ^= luts[c][b]
        return out
    out = np.zeros(out_shape, dtype=np.int64)
    for idx in np.argwhere(a):
        c = int(a[tuple(idx)])
        sl = tuple(slice(i, i + s) for i, s in zip(idx, b.shape))
        out[sl] += c * b.astype(np.int64)
    return (out % q).astype(np.int8)


def _denominator(field):
    """Q = prod over nonzero alpha of (1 - y_alpha * (x - alpha))."""
    q = field.q
    rank = q  # axes: x, y_1, ..., y_{q-1}
    poly = np.zeros((1,) * rank, dtype=np.int8)
    poly[(0,) * rank] = 1
    for i in range(1, q):
        shape = [1] * rank
        shape[0] = 2
        shape[i] = 2
        f = np.zeros(shape, dtype=np.int8)
        ix = [0] * rank
        f[tuple(ix)] = 1
        ix[i] = 1
        f[tuple(ix)] = i  # + alpha_i * y_i
        ix[0] = 1
        f[tuple(ix)] = field.neg(1)  # - x * y_i
        poly = _poly_mul(field, poly, f)
    return poly


def build_co(q, max_states=100000):
    """DFAO over q lsd base-q tracks; track 0 is the coefficient index."""
    if q not in SUPPORTED_Q:
        raise ValueError(f"q must be one of {SUPPORTED_Q}")
    field = FqField(q)
    rank = q
    den = _denominator(field)
    qq1 = den
    for _ in range(q - 2):
        qq1 = _poly_mul(field, qq1, den)
    # scaled copies c * Q^(q-1) for the shifted accumulation below
    if q == 4:
        luts = [np.array([field.mul(c, v) for v in range(q)], dtype=np.int8) for c in range(q)]
        scaled = [luts[c][qq1] for c in range(q)]
    else:
        scaled = [((c * qq1.astype(np.int64)) % q).astype(np.int16) for c in range(q)]

    box = (q,) + (2,) * (q - 1)
    # R = P * Q^(q-1) lives in x-degree <= q^2 - q, y-degree <= q; pad the
    # buffer so every axis splits evenly into (block, digit) pairs
    buf_shape = (q * q,) + (2 * q,) * (q - 1)
    perm = tuple(2 * t for t in range(rank)) + tuple(2 * t + 1 for t in range(rank))

    def transition_slabs(p):
        if q == 4:
            buf = np.zeros(buf_shape, dtype=np.int8)
            for idx in np.argwhere(p):
                c = int(p[tuple(idx)])
                sl = tuple(slice(i, i + s) for i, s in zip(idx, qq1.shape))
                buf[sl] ^= scaled[c]
        else:
            buf = np.zeros(buf_shape, dtype=np.int16)
            for idx in np.argwhere(p):
                c = int(p[tuple(idx)])
                sl = tuple(slice(i, i + s) for i, s in zip(idx, qq1.shape))
                buf[sl] += scaled[c]
            buf %= q
        # split each axis of size m*q into (m, q) and gather digit axes last
        split = buf.reshape((q, q) + (2, q) * (rank - 1))
        return split.transpose(perm)

    start = np.zeros(box, dtype=np.int8)
    start[(0,) * rank] = 1
    ids = {start.tobytes(): 0}
    states = [start]
    rows = []
    symbols = list(itertools.product(range(q), repeat=rank))
    i = 0
    while i < len(states):
        slab = transition_slabs(states[i])
        row = []
        for e in symbols:
            nxt = np.ascontiguousarray(slab[(Ellipsis,) + e].astype(np.int8))
            key = nxt.tobytes()
            if key not in ids:
                if len(states) >= max_states:
                    raise RuntimeError("state budget exhausted while building co automaton")
                ids[key] = len(states)
                states.append(nxt)
            row.append(ids[key])
        rows.append(row)
        i += 1
    outputs = [int(p[(0,) * rank]) for p in states]
    dfao = Dfao(Alphabet((q,) * rank), np.array(rows, dtype=np.int32), outputs, 0)
    return minimize(dfao)


def co_tags(q):
    return (f"lsd_{q}",) * q


def _sum_bounded_tuples(rank, bound):
    if rank == 0:
        yield ()
        return
    for head in range(bound + 1):
        for rest in _sum_bounded_tuples(rank - 1, bound - head):
            yield (head,) + rest


def verify_co(co, field, bound, identities=True, samples=None, rng=None):
    """Check a co automaton against direct expansion and shift identities.

    Two independent checks: (a) every coefficient of every product with
    exponent sum <= bound equals the expansion oracle (or, when samples is
    given, that many random exponent tuples instead of the full simplex);
    (b) for each factor (x - alpha) and each value pair, the coefficient
    recurrence co(a+1, ..c_i+1..) = co(a, c) - alpha*co(a+1, c) holds
    universally, decided through the logic engine.  Returns a dict with
    "ok" and a list of "failures" naming the first offending tuple.
    """
    from .logic import Session
    from .numeration import NumerationSystem
    from .oracles import expand_poly_fq
    from .words import Word, word_value

    q = field.q
    system = NumerationSystem.parse_tag(f"lsd_{q}")
    failures = []

    if samples is None:
        tuples = _sum_bounded_tuples(q - 1, bound)
    else:
        rng = np.random.default_rng(0xC0) if rng is None else rng
        tuples = []
        while len(tuples) < samples:
            t = tuple(int(v) for v in rng.integers(0, bound + 1, size=q - 1))
            if sum(t) <= bound:
                tuples.append(t)
    for exps in tuples:
        coeffs = expand_poly_fq(field, exps)
        for a, c in enumerate(coeffs):
            if word_value(co, system, (a,) + exps) != c:
                failures.append(f"co{q}{(a,) + exps} = "
                                f"{word_value(co, system, (a,) + exps)}, "
                                f"expansion says {c}")
                break
        if failures:
            break

    if identities and not failures:
        session = Session(builtin_words=False, words_dirs=())
        session.words["co"] = Word("co", system, co)
        vars_all = "abcde"[:q]
        head = ",".join(vars_all)

        def idx(bumped):
            return "".join(f"[{v}+1]" if v == bumped else f"[{v}]"
                           for v in vars_all[1:])

        plain = idx(None)
        for ti, t in enumerate(vars_all[1:]):
            alpha = ti + 1  # factor (x - alpha), alpha the encoded element
            for v0 in range(q):
                for v1 in range(q):
                    w = field.sub(v1, field.mul(alpha, v0))
                    body = (f"?lsd_{q} A{head} "
                            f"(co[a+1]{plain}=@{v0} & co[a]{plain}=@{v1})"
                            f" => co[a+1]{idx(t)}=@{w}")
                    r = session.run_command("eval", f"id_{t}_{v0}{v1}", (), body)
                    if r.verdict is not True:
                        failures.append(f"identity {t} {v0}{v1} is FALSE")
    return {"ok": not failures, "failures": failures}
