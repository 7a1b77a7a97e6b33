"""Deterministic automata over tuples of digits, one tuple component per track.

Symbols are tuples of digits; internally a symbol is its mixed-radix index,
so a transition table is a dense (states x symbols) integer matrix.  All
public DFAs are total; minimization renumbers states in BFS discovery order
(symbols taken in lexicographic tuple order), which makes minimal automata
structurally canonical: language-equal inputs minimize to identical tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

INFINITE = math.inf


@dataclass(frozen=True)
class Alphabet:
    """Per-track digit counts; track digits are 0..size-1."""

    sizes: tuple

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        assert all(s >= 1 for s in self.sizes)

    @property
    def tracks(self):
        return len(self.sizes)

    @property
    def num_symbols(self):
        n = 1
        for s in self.sizes:
            n *= s
        return n

    def index(self, symbol):
        i = 0
        for d, s in zip(symbol, self.sizes):
            if not 0 <= d < s:
                raise ValueError(f"digit {d} out of range for track size {s}")
            i = i * s + d
        return i

    def symbol(self, index):
        out = []
        for s in reversed(self.sizes):
            out.append(index % s)
            index //= s
        return tuple(reversed(out))

    def symbols(self):
        return [self.symbol(i) for i in range(self.num_symbols)]

    def drop_track(self, track):
        return Alphabet(self.sizes[:track] + self.sizes[track + 1:])


def _frozen(arr, dtype):
    a = np.ascontiguousarray(arr, dtype=dtype)
    a.flags.writeable = False
    return a


class Dfa:
    """Total deterministic automaton with a boolean accepting set."""

    def __init__(self, alphabet, trans, accept, initial=0):
        self.alphabet = alphabet
        self.trans = _frozen(trans, np.int32)
        self.accept = _frozen(accept, bool)
        self.initial = int(initial)
        n, m = self.trans.shape
        assert m == alphabet.num_symbols and self.accept.shape == (n,)
        assert 0 <= self.initial < n

    @property
    def n(self):
        return self.trans.shape[0]

    def step(self, state, symbol_index):
        return int(self.trans[state, symbol_index])

    def accepts_indices(self, idxs):
        s = self.initial
        for e in idxs:
            s = self.trans[s, e]
        return bool(self.accept[s])

    def accepts(self, symbols):
        return self.accepts_indices(self.alphabet.index(t) for t in symbols)

    def __repr__(self):
        return f"Dfa({self.n} states, {self.alphabet.num_symbols} symbols)"


class Dfao:
    """Total deterministic automaton with an output per state."""

    def __init__(self, alphabet, trans, outputs, initial=0):
        self.alphabet = alphabet
        self.trans = _frozen(trans, np.int32)
        self.outputs = _frozen(outputs, np.int32)
        self.initial = int(initial)
        n, m = self.trans.shape
        assert m == alphabet.num_symbols and self.outputs.shape == (n,)

    @property
    def n(self):
        return self.trans.shape[0]

    def output_for_indices(self, idxs):
        s = self.initial
        for e in idxs:
            s = self.trans[s, e]
        return int(self.outputs[s])

    def output_for(self, symbols):
        return self.output_for_indices(self.alphabet.index(t) for t in symbols)

    def preimage(self, value):
        """Dfa accepting the inputs whose output equals value."""
        return minimize(Dfa(self.alphabet, self.trans, self.outputs == value, self.initial))

    def __repr__(self):
        return f"Dfao({self.n} states, {self.alphabet.num_symbols} symbols)"


class Nfa:
    """Nondeterministic automaton, used between projection/reversal and
    determinization.  steps[q] maps a symbol index to a set of states."""

    def __init__(self, num_symbols, steps, initials, finals):
        self.num_symbols = num_symbols
        self.steps = steps
        self.initials = set(initials)
        self.finals = set(finals)

    @property
    def n(self):
        return len(self.steps)


# ---------------------------------------------------------------------------
# Reachability and minimization


def _reachable_mask(trans, initial):
    n = trans.shape[0]
    seen = np.zeros(n, dtype=bool)
    frontier = np.array([initial], dtype=np.int64)
    seen[initial] = True
    while frontier.size:
        succ = np.unique(trans[frontier])
        new = succ[~seen[succ]]
        seen[new] = True
        frontier = new
    return seen


def _coreachable_mask(trans, targets):
    n, m = trans.shape
    rev = [[] for _ in range(n)]
    src = np.repeat(np.arange(n), m)
    dst = trans.ravel()
    for s, d in zip(src.tolist(), dst.tolist()):
        rev[d].append(s)
    seen = np.zeros(n, dtype=bool)
    stack = [i for i in range(n) if targets[i]]
    for i in stack:
        seen[i] = True
    while stack:
        q = stack.pop()
        for p in rev[q]:
            if not seen[p]:
                seen[p] = True
                stack.append(p)
    return seen


def _trim_reachable(trans, labels, initial):
    mask = _reachable_mask(trans, initial)
    idx = np.flatnonzero(mask)
    remap = np.full(trans.shape[0], -1, dtype=np.int64)
    remap[idx] = np.arange(idx.size)
    return remap[trans[idx]], labels[idx], int(remap[initial])


_HASH = {"mult": np.empty(0, dtype=np.uint64)}


def _hash_mult(w):
    # Deterministic random odd multipliers; regrowing from the same seed
    # keeps earlier entries stable.
    if len(_HASH["mult"]) < w:
        size = 64
        while size < w:
            size *= 2
        rng = np.random.default_rng(0x5EED)
        _HASH["mult"] = rng.integers(1, 1 << 62, size=size, dtype=np.uint64) * 2 + 1
    return _HASH["mult"][:w]


def _group_rows(mat):
    """Group identical rows of a 2D integer array.

    Returns (first, inverse): indices of the first occurrence of each
    distinct row, and for every row the position of its group in first.
    Rows are grouped by a 64-bit hash and the grouping is then verified
    exactly; a hash collision falls back to lexicographic np.unique.
    """
    m, w = mat.shape
    if m == 0 or w == 0:
        first = np.zeros(min(m, 1), dtype=np.int64)
        return first, np.zeros(m, dtype=np.int64)
    h = mat.astype(np.uint64) @ _hash_mult(w)
    _, first, inv = np.unique(h, return_index=True, return_inverse=True)
    if np.array_equal(mat, mat[first[inv]]):
        return first, inv
    _, first, inv = np.unique(mat, axis=0, return_index=True, return_inverse=True)
    return first, inv.ravel()


def _renumber_by_first_occurrence(block, nblocks):
    first = np.unique(block, return_index=True)[1]
    rank = np.empty(nblocks, dtype=np.int64)
    rank[np.argsort(first)] = np.arange(nblocks)
    return rank[block]


def _moore_blocks_exact(trans, labels):
    _, block = np.unique(labels, return_inverse=True)
    nblocks = block.max(initial=0) + 1
    while True:
        key = np.column_stack([block, block[trans]])
        _, newblock = np.unique(key, axis=0, return_inverse=True)
        newn = newblock.max(initial=0) + 1
        if newn == nblocks:
            return newblock, nblocks
        block, nblocks = newblock, newn


def _moore_blocks(trans, labels):
    """Partition refinement from the output/accept partition.

    Each round groups states by hashed (block, successor blocks) signature.
    Hash merges only ever coarsen the exact refinement chain and the chain
    never descends below the Nerode partition, so a stable partition that
    passes the exact congruence check below is exactly the Nerode partition.
    """
    n, m = trans.shape
    _, block = np.unique(labels, return_inverse=True)
    nblocks = block.max(initial=0) + 1
    block = _renumber_by_first_occurrence(block, nblocks)
    mult = _hash_mult(m + 1)
    for _ in range(n + 1):
        bu = block.astype(np.uint64)
        h = bu * mult[0]
        chunk = max(1, (1 << 24) // max(m, 1))
        for lo in range(0, n, chunk):
            hi = min(lo + chunk, n)
            h[lo:hi] += bu[trans[lo:hi]] @ mult[1:]
        _, newblock = np.unique(h, return_inverse=True)
        newn = newblock.max(initial=0) + 1
        newblock = _renumber_by_first_occurrence(newblock, newn)
        if np.array_equal(newblock, block):
            break
        block, nblocks = newblock, newn
    else:
        return _moore_blocks_exact(trans, labels)
    reps = np.zeros(nblocks, dtype=np.int64)
    reps[block] = np.arange(n)
    rep_of = reps[block]
    ok = np.array_equal(labels, labels[rep_of])
    chunk = max(1, (1 << 24) // max(m, 1))
    for lo in range(0, n, chunk):
        if not ok:
            break
        hi = min(lo + chunk, n)
        ok = np.array_equal(block[trans[lo:hi]], block[trans[rep_of[lo:hi]]])
    if not ok:
        return _moore_blocks_exact(trans, labels)
    return block, nblocks


def _bfs_order(trans, initial):
    n = trans.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[initial] = True
    order = [np.array([initial], dtype=np.int64)]
    frontier = order[0]
    while frontier.size:
        succ = trans[frontier].ravel()
        fresh = succ[~seen[succ]]
        if fresh.size:
            uq, first = np.unique(fresh, return_index=True)
            fresh = uq[np.argsort(first)]
            seen[fresh] = True
        else:
            fresh = fresh[:0]
        order.append(fresh)
        frontier = fresh
    return np.concatenate(order)


def _minimize_table(trans, labels, initial):
    trans, labels, initial = _trim_reachable(trans, labels, initial)
    block, nblocks = _moore_blocks(trans, labels)
    reps = np.zeros(nblocks, dtype=np.int64)
    reps[block] = np.arange(trans.shape[0])  # any representative per block
    qtrans = block[trans[reps]]
    qlabels = labels[reps]
    qinit = int(block[initial])
    order = _bfs_order(qtrans, qinit)
    pos = np.empty(nblocks, dtype=np.int64)
    pos[order] = np.arange(nblocks)
    return pos[qtrans[order]], qlabels[order], 0


def minimize(a):
    """Canonical minimal machine; works for Dfa and Dfao alike."""
    if isinstance(a, Dfao):
        t, lab, init = _minimize_table(a.trans, a.outputs.astype(np.int64), a.initial)
        return Dfao(a.alphabet, t, lab, init)
    t, lab, init = _minimize_table(a.trans, a.accept.astype(np.int64), a.initial)
    return Dfa(a.alphabet, t, lab.astype(bool), init)


def same_structure(a, b):
    return (
        a.alphabet == b.alphabet
        and a.n == b.n
        and a.initial == b.initial
        and np.array_equal(a.trans, b.trans)
        and np.array_equal(
            a.accept if isinstance(a, Dfa) else a.outputs,
            b.accept if isinstance(b, Dfa) else b.outputs,
        )
    )


def language_equal(a, b):
    return same_structure(minimize(a), minimize(b))


# ---------------------------------------------------------------------------
# Boolean algebra


def product(a, b, mode="and"):
    """Synchronous product; mode 'and' or 'or'."""
    assert a.alphabet == b.alphabet
    n2 = b.n
    start = a.initial * n2 + b.initial
    ids = {start: 0}
    flats = [start]
    rows = []
    frontier = np.array([start], dtype=np.int64)
    while frontier.size:
        s1, s2 = np.divmod(frontier, n2)
        succ = a.trans[s1].astype(np.int64) * n2 + b.trans[s2]
        rows.append(succ)
        fresh = []
        for f in np.unique(succ).tolist():
            if f not in ids:
                ids[f] = len(ids)
                fresh.append(f)
        flats.extend(fresh)
        frontier = np.array(fresh, dtype=np.int64)
    allrows = np.vstack(rows)
    keys = np.array(flats, dtype=np.int64)
    sorter = np.argsort(keys)
    # keys[sorter[j]] is sorted; id of flat keys[i] is i by construction
    trans = sorter[np.searchsorted(keys, allrows, sorter=sorter)]
    s1, s2 = np.divmod(keys, n2)
    acc1, acc2 = a.accept[s1], b.accept[s2]
    accept = acc1 & acc2 if mode == "and" else acc1 | acc2
    return Dfa(a.alphabet, trans, accept, 0)


def complement(a):
    return Dfa(a.alphabet, a.trans, ~a.accept, a.initial)


def _determinize_packed(packed, initials, finals_mask):
    """Subset construction over a -1-padded successor tensor.

    packed[s, e] lists the NFA successors of state s on symbol e, right-padded
    with -1.  For each frontier subset one gather + two sorts produce all
    successor subsets in canonical form (sorted, deduplicated, -1 padded on
    the left), and np.unique collapses repeats before they touch the queue.
    """
    m = packed.shape[1]
    start = np.unique(np.asarray(sorted(initials), dtype=np.int32))
    ids = {start.tobytes(): 0}
    members = [start]
    rows = []
    accept = []
    i = 0
    while i < len(members):
        cur = members[i]
        i += 1
        accept.append(bool(finals_mask[cur].any()) if len(cur) else False)
        if len(cur) == 0:
            rows.append(np.full(m, ids[b""], dtype=np.int32))
            continue
        flat = packed[cur].transpose(1, 0, 2).reshape(m, -1)
        flat = np.sort(flat, axis=1)
        dup = flat[:, 1:] == flat[:, :-1]
        flat[:, 1:][dup] = -1
        flat = np.sort(flat, axis=1)
        first, inv = _group_rows(flat)
        local = np.empty(len(first), dtype=np.int32)
        for j, fi in enumerate(first):
            urow = flat[fi]
            sub = urow[urow >= 0]
            key = sub.tobytes()
            if key not in ids:
                ids[key] = len(members)
                members.append(sub.astype(np.int32))
            local[j] = ids[key]
        rows.append(local[inv])
    return np.stack(rows), np.array(accept, dtype=bool)


def determinize(nfa):
    m = nfa.num_symbols
    n = len(nfa.steps)
    deg = 1
    for st in nfa.steps:
        for targets in st.values():
            deg = max(deg, len(targets))
    packed = np.full((max(n, 1), m, deg), -1, dtype=np.int32)
    for s, st in enumerate(nfa.steps):
        for e, targets in st.items():
            packed[s, e, :len(targets)] = sorted(targets)
    finals_mask = np.zeros(max(n, 1), dtype=bool)
    for f in nfa.finals:
        finals_mask[f] = True
    trans, accept = _determinize_packed(packed, nfa.initials, finals_mask)
    return Dfa(_alphabet_for(m), trans, accept, 0)


def _alphabet_for(m):
    # Placeholder single-track alphabet when only symbol count is known.
    return Alphabet((m,))


def determinize_with_alphabet(nfa, alphabet):
    d = determinize(nfa)
    return Dfa(alphabet, d.trans, d.accept, d.initial)


def reverse(a):
    """NFA for the reversed language."""
    steps = [dict() for _ in range(a.n)]
    for s in range(a.n):
        for e in range(a.alphabet.num_symbols):
            steps[int(a.trans[s, e])].setdefault(e, set()).add(s)
    finals = {a.initial}
    initials = set(np.flatnonzero(a.accept).tolist())
    return Nfa(a.alphabet.num_symbols, steps, initials, finals)


def cylindrify(a, alphabet, track_map):
    """Reinterpret a machine inside a wider alphabet.

    track_map[i] names the target track that carries a's track i; all other
    target tracks are left unconstrained.  Also serves as track permutation
    when the alphabets have equal width.
    """
    tracks = alphabet.tracks
    msz = alphabet.num_symbols
    digit_cols = np.empty((msz, tracks), dtype=np.int64)
    idx = np.arange(msz)
    for t in reversed(range(tracks)):
        digit_cols[:, t] = idx % alphabet.sizes[t]
        idx = idx // alphabet.sizes[t]
    old_idx = np.zeros(msz, dtype=np.int64)
    for t, tgt in enumerate(track_map):
        assert alphabet.sizes[tgt] == a.alphabet.sizes[t]
        old_idx = old_idx * a.alphabet.sizes[t] + digit_cols[:, tgt]
    trans = a.trans[:, old_idx]
    if isinstance(a, Dfao):
        return Dfao(alphabet, trans, a.outputs, a.initial)
    return Dfa(alphabet, trans, a.accept, a.initial)


# ---------------------------------------------------------------------------
# Projection with padding closure


def project(a, track, lsd=False):
    """Existentially quantify one track away.

    The witness digits on the removed track may extend past the canonical
    length of the remaining tracks, so the result is re-closed under padding:
    extra leading zeros for msd reading, trailing zeros for lsd.
    """
    alph = a.alphabet
    red = alph.drop_track(track)
    m_red = red.num_symbols
    k = alph.sizes[track]
    stride = 1
    for sz in alph.sizes[track + 1:]:
        stride *= sz
    # orig[e] lists the full-symbol indices compatible with reduced symbol e
    r_all = np.arange(m_red, dtype=np.int64)
    orig = ((r_all // stride) * (k * stride))[:, None] \
        + (np.arange(k, dtype=np.int64) * stride)[None, :] \
        + (r_all % stride)[:, None]
    packed = a.trans[:, orig].astype(np.int32)
    succ0 = packed[:, 0, :]
    finals_mask = np.asarray(a.accept, dtype=bool).copy()
    if lsd:
        # accept once an accepting state is reachable through padding symbols
        while True:
            grown = finals_mask | finals_mask[succ0].any(axis=1)
            if grown.tobytes() == finals_mask.tobytes():
                break
            finals_mask = grown
        initials = [a.initial]
    else:
        seen = np.zeros(a.n, dtype=bool)
        seen[a.initial] = True
        while True:
            grown = seen.copy()
            grown[succ0[seen].ravel()] = True
            if grown.tobytes() == seen.tobytes():
                break
            seen = grown
        initials = np.flatnonzero(seen).tolist()
    trans, accept = _determinize_packed(packed, initials, finals_mask)
    return minimize(Dfa(red, trans, accept, 0))


# ---------------------------------------------------------------------------
# Decision procedures


def is_empty(a):
    return not bool(a.accept[_reachable_mask(a.trans, a.initial)].any())


def decide(a):
    """Verdict for a zero-track (closed) machine: nonempty means TRUE."""
    return not is_empty(a)


def shortest_accepted(a):
    """Lexicographically-first shortest accepted string, as symbol tuples."""
    if a.accept[a.initial]:
        return []
    parent = {a.initial: None}
    frontier = [a.initial]
    while frontier:
        nxt = []
        for s in frontier:
            row = a.trans[s]
            for e in range(a.alphabet.num_symbols):
                t = int(row[e])
                if t not in parent:
                    parent[t] = (s, e)
                    if a.accept[t]:
                        path = []
                        cur = t
                        while parent[cur] is not None:
                            cur, sym = parent[cur]
                            path.append(sym)
                        return [a.alphabet.symbol(e) for e in reversed(path)]
                    nxt.append(t)
        frontier = nxt
    return None


def _sccs(adj, nodes):
    """Iterative Tarjan over the given node subset; returns node -> scc id."""
    index = {}
    low = {}
    on = set()
    stack = []
    comp = {}
    counter = [0]
    cid = [0]
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(adj.get(root, ())))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on.add(w)
                    work.append((w, iter(adj.get(w, ()))))
                    advanced = True
                    break
                elif w in on:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on.discard(w)
                    comp[w] = cid[0]
                    if w == v:
                        break
                cid[0] += 1
    return comp


def max_nonzero_symbols(a):
    """Largest count of non-all-zero symbols along any accepted string,
    or INFINITE when a useful cycle consumes one."""
    useful = _reachable_mask(a.trans, a.initial) & _coreachable_mask(a.trans, a.accept)
    if not useful.any() or not useful[a.initial]:
        return None
    weights = np.array([1 if any(d != 0 for d in a.alphabet.symbol(e)) else 0
                        for e in range(a.alphabet.num_symbols)])
    nodes = np.flatnonzero(useful).tolist()
    nodeset = set(nodes)
    adj = {}
    edges = []
    for s in nodes:
        row = a.trans[s]
        outs = []
        for e in range(a.alphabet.num_symbols):
            t = int(row[e])
            if t in nodeset:
                outs.append(t)
                edges.append((s, t, int(weights[e])))
        adj[s] = outs
    comp = _sccs(adj, nodes)
    for s, t, w in edges:
        if w and comp[s] == comp[t]:
            return INFINITE
    # condensation longest path from the initial component
    ncomp = max(comp.values()) + 1
    cadj = [set() for _ in range(ncomp)]
    cedges = {}
    for s, t, w in edges:
        if comp[s] != comp[t]:
            key = (comp[s], comp[t])
            cadj[comp[s]].add(comp[t])
            cedges[key] = max(cedges.get(key, 0), w)
    # topological order via DFS finish times
    seen = [False] * ncomp
    topo = []
    for c in range(ncomp):
        if seen[c]:
            continue
        stack = [(c, iter(cadj[c]))]
        seen[c] = True
        while stack:
            v, it = stack[-1]
            moved = False
            for w in it:
                if not seen[w]:
                    seen[w] = True
                    stack.append((w, iter(cadj[w])))
                    moved = True
                    break
            if not moved:
                topo.append(stack.pop()[0])
    topo.reverse()
    dist = [None] * ncomp
    dist[comp[a.initial]] = 0
    for c in topo:
        if dist[c] is None:
            continue
        for d in cadj[c]:
            cand = dist[c] + cedges[(c, d)]
            if dist[d] is None or cand > dist[d]:
                dist[d] = cand
    best = 0
    for s in nodes:
        if a.accept[s] and dist[comp[s]] is not None:
            best = max(best, dist[comp[s]])
    return best


# ---------------------------------------------------------------------------
# Value enumeration


def enumerate_values(a, bound, systems):
    """Accepted value tuples with every component <= bound, sorted.

    systems supplies one numeration per track (all same reading order);
    single-track machines yield plain integers.
    """
    alph = a.alphabet
    tracks = alph.tracks
    if tracks == 0:
        return [()] if decide(a) else []
    assert len(systems) == tracks
    lsd = systems[0].lsd
    assert all(s.lsd == lsd for s in systems)
    maxlen = max(s.digits_needed(bound) for s in systems)
    useful = _coreachable_mask(a.trans, a.accept)
    syms = alph.symbols()
    found = set()

    def weights_at(depth, length):
        pos = depth if lsd else length - 1 - depth
        return [s.place_value(pos) for s in systems]

    def dfs(state, depth, length, values):
        if depth == length:
            if a.accept[state]:
                found.add(tuple(values))
            return
        w = weights_at(depth, length)
        row = a.trans[state]
        for e, sym in enumerate(syms):
            nxt = int(row[e])
            if not useful[nxt]:
                continue
            ok = True
            nv = list(values)
            for t in range(tracks):
                nv[t] += sym[t] * w[t]
                if nv[t] > bound:
                    ok = False
                    break
            if ok:
                dfs(nxt, depth + 1, length, nv)

    if lsd:
        # one tree: every depth is a potential end of string
        def dfs_lsd(state, depth, values, all_zero_tail):
            if depth > 0 and a.accept[state] and not all_zero_tail:
                found.add(tuple(values))
            if depth == maxlen:
                return
            w = [s.place_value(depth) for s in systems]
            row = a.trans[state]
            for e, sym in enumerate(syms):
                nxt = int(row[e])
                if not useful[nxt]:
                    continue
                ok = True
                nv = list(values)
                for t in range(tracks):
                    nv[t] += sym[t] * w[t]
                    if nv[t] > bound:
                        ok = False
                        break
                if ok:
                    dfs_lsd(nxt, depth + 1, nv, all(d == 0 for d in sym))
        if a.n and useful[a.initial]:
            dfs_lsd(a.initial, 0, [0] * tracks, True)
            if a.accepts_indices([0]):
                found.add((0,) * tracks)
    else:
        for length in range(1, maxlen + 1):
            if useful[a.initial]:
                dfs(a.initial, 0, length, [0] * tracks)
    out = sorted(found)
    if tracks == 1:
        return [v[0] for v in out]
    return out


# ---------------------------------------------------------------------------
# DOT and the text format


def export_dot(a, name="m"):
    is_dfao = isinstance(a, Dfao)
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  node [fontname="monospace"];']
    for s in range(a.n):
        if is_dfao:
            lines.append(f'  q{s} [shape=circle label="{s}/{int(a.outputs[s])}"];')
        else:
            shape = "doublecircle" if a.accept[s] else "circle"
            lines.append(f'  q{s} [shape={shape} label="{s}"];')
    lines.append(f"  start [shape=point]; start -> q{a.initial};")
    grouped = {}
    for s in range(a.n):
        for e in range(a.alphabet.num_symbols):
            t = int(a.trans[s, e])
            grouped.setdefault((s, t), []).append(a.alphabet.symbol(e))
    for (s, t), symlist in sorted(grouped.items()):
        if len(symlist) <= 6:
            label = ", ".join("".join(map(str, sym)) for sym in symlist)
        else:
            label = f"{len(symlist)} symbols"
        lines.append(f'  q{s} -> q{t} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass
class LoadedAutomaton:
    tags: tuple
    sizes: tuple
    trans: np.ndarray
    outputs: np.ndarray
    initial: int = 0

    def as_dfa(self):
        assert set(np.unique(self.outputs)) <= {0, 1}
        return Dfa(Alphabet(self.sizes), self.trans, self.outputs.astype(bool), self.initial)

    def as_dfao(self):
        return Dfao(Alphabet(self.sizes), self.trans, self.outputs, self.initial)


def to_text(a, tags):
    """Serialize in the plain interchange format.

    Line 1 carries one numeration tag or digit set per track; each state block
    is `STATE OUTPUT` followed by `d1 d2 ... -> TARGET` lines in symbol order.
    """
    alph = a.alphabet
    assert len(tags) == alph.tracks
    out = [" ".join(tags)]
    outputs = a.outputs if isinstance(a, Dfao) else a.accept.astype(int)
    assert a.initial == 0, "serialize canonical machines (initial state 0)"
    for s in range(a.n):
        out.append(f"{s} {int(outputs[s])}")
        row = a.trans[s]
        for e in range(alph.num_symbols):
            digits = " ".join(str(d) for d in alph.symbol(e))
            out.append(f"{digits} -> {int(row[e])}")
    return "\n".join(out) + "\n"


def _parse_track_spec(tok):
    if tok.startswith("{"):
        digits = sorted(int(x) for x in tok.strip("{}").split(",") if x != "")
        assert digits == list(range(len(digits))), "digit sets must be 0..d"
        return None, len(digits)
    return tok, None


def from_text(text):
    """Parse the interchange format; returns a LoadedAutomaton."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty automaton file")
    tags = []
    sizes = []
    for tok in lines[0].split():
        tag, size = _parse_track_spec(tok)
        tags.append(tag)
        sizes.append(size)
    # numeration tags are resolved by the caller; fill sizes it knows
    from .numeration import NumerationSystem  # local to avoid import cycles

    for i, (tag, size) in enumerate(zip(tags, sizes)):
        if size is None:
            sizes[i] = NumerationSystem.parse_tag(tag).digit_count
            continue
        tags[i] = "{" + ",".join(str(d) for d in range(sizes[i])) + "}"
    alph = Alphabet(tuple(sizes))
    m = alph.num_symbols
    states = {}
    cur = None
    for ln in lines[1:]:
        if "->" in ln:
            if cur is None:
                raise ValueError("transition before any state header")
            left, right = ln.split("->")
            digits = tuple(int(x) for x in left.split())
            states[cur][1][alph.index(digits)] = int(right.strip())
        else:
            parts = ln.split()
            if len(parts) != 2:
                raise ValueError(f"bad state header: {ln!r}")
            cur = int(parts[0])
            if cur in states:
                raise ValueError(f"duplicate state {cur}")
            states[cur] = (int(parts[1]), {})
    n = max(states) + 1
    assert sorted(states) == list(range(n)), "states must be 0..n-1"
    sink = None
    trans = np.zeros((n, m), dtype=np.int32)
    outputs = np.zeros(n, dtype=np.int32)
    missing = []
    for s in range(n):
        outputs[s] = states[s][0]
        row = states[s][1]
        for e in range(m):
            if e in row:
                trans[s, e] = row[e]
            else:
                missing.append((s, e))
    if missing:
        sink = n
        trans = np.vstack([trans, np.full((1, m), sink, dtype=np.int32)])
        outputs = np.append(outputs, 0)
        for s, e in missing:
            trans[s, e] = sink
    return LoadedAutomaton(tuple(tags), tuple(sizes), trans, outputs, 0)


# ---------------------------------------------------------------------------
# Testing helpers


def language_upto(a, maxlen):
    """Set of accepted strings (as tuples of symbol indices) up to maxlen."""
    out = set()
    frontier = {(): a.initial}
    for length in range(maxlen + 1):
        for word, state in frontier.items():
            if a.accept[state]:
                out.add(word)
        nxt = {}
        for word, state in frontier.items():
            row = a.trans[state]
            for e in range(a.alphabet.num_symbols):
                nxt[word + (e,)] = int(row[e])
        frontier = nxt
    return out
