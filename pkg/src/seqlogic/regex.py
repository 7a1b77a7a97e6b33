"""Regular expressions over digit-tuple alphabets.

Symbols are bracketed tuples like [0,1]; a bare digit is sugar for the
1-track tuple.  Supported operators: concatenation, alternation |,
Kleene * and +, optional ?, grouping.  Compilation goes Thompson NFA ->
subset construction -> minimize, then closes the language under padding
zeros on the side the numeration systems read last (leading zeros for
msd, trailing for lsd), so the automaton can serve as a value predicate.
"""

from __future__ import annotations

import numpy as np

from .automata import Alphabet, Dfa, Nfa, determinize_with_alphabet, minimize


class RegexError(ValueError):
    pass


def _tokenize(text):
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "|*+?()":
            toks.append((ch, None))
            i += 1
        elif ch == "[":
            j = text.find("]", i)
            if j < 0:
                raise RegexError("unterminated symbol tuple")
            parts = text[i + 1:j].split(",")
            try:
                toks.append(("sym", tuple(int(p.strip()) for p in parts)))
            except ValueError:
                raise RegexError(f"bad symbol tuple {text[i:j + 1]!r}") from None
            i = j + 1
        elif ch.isdigit():
            toks.append(("sym", (int(ch),)))
            i += 1
        else:
            raise RegexError(f"unexpected character {ch!r} in regex")
    return toks


# AST: ("sym", tuple) | ("cat", [..]) | ("alt", [..]) | ("star"|"plus"|"opt", node)


def _parse(toks):
    pos = 0

    def alt():
        nonlocal pos
        branches = [cat()]
        while pos < len(toks) and toks[pos][0] == "|":
            pos += 1
            branches.append(cat())
        return branches[0] if len(branches) == 1 else ("alt", branches)

    def cat():
        nonlocal pos
        items = []
        while pos < len(toks) and toks[pos][0] in ("sym", "("):
            items.append(rep())
        return ("cat", items)

    def rep():
        nonlocal pos
        kind, payload = toks[pos]
        if kind == "sym":
            node = ("sym", payload)
            pos += 1
        else:
            pos += 1
            node = alt()
            if pos >= len(toks) or toks[pos][0] != ")":
                raise RegexError("unbalanced parenthesis")
            pos += 1
        while pos < len(toks) and toks[pos][0] in ("*", "+", "?"):
            node = ({"*": "star", "+": "plus", "?": "opt"}[toks[pos][0]], node)
            pos += 1
        return node

    node = alt()
    if pos != len(toks):
        raise RegexError(f"trailing regex input at token {pos}")
    return node


def _thompson(node, alphabet, eps, sym, new_state):
    """Return (start, accept) over the growing eps/sym transition tables."""
    kind = node[0]
    if kind == "sym":
        digits = node[1]
        if len(digits) != alphabet.tracks:
            raise RegexError(f"symbol {list(digits)} has {len(digits)} tracks, "
                             f"expected {alphabet.tracks}")
        for t, d in enumerate(digits):
            if not 0 <= d < alphabet.sizes[t]:
                raise RegexError(f"digit {d} out of range for track {t}")
        s, a = new_state(), new_state()
        sym.setdefault(s, {}).setdefault(alphabet.index(digits), set()).add(a)
        return s, a
    if kind == "cat":
        s = a = new_state()
        for item in node[1]:
            s2, a2 = _thompson(item, alphabet, eps, sym, new_state)
            eps.setdefault(a, set()).add(s2)
            a = a2
        return s, a
    if kind == "alt":
        s, a = new_state(), new_state()
        for item in node[1]:
            s2, a2 = _thompson(item, alphabet, eps, sym, new_state)
            eps.setdefault(s, set()).add(s2)
            eps.setdefault(a2, set()).add(a)
        return s, a
    s2, a2 = _thompson(node[1], alphabet, eps, sym, new_state)
    s, a = new_state(), new_state()
    eps.setdefault(s, set()).add(s2)
    eps.setdefault(a2, set()).add(a)
    if kind in ("star", "opt"):
        eps.setdefault(s, set()).add(a)
    if kind in ("star", "plus"):
        eps.setdefault(a2, set()).add(s2)
    return s, a


def _eps_close(states, eps):
    out = set(states)
    stack = list(states)
    while stack:
        q = stack.pop()
        for r in eps.get(q, ()):
            if r not in out:
                out.add(r)
                stack.append(r)
    return frozenset(out)


def _nfa_to_dfa(alphabet, start, accept, eps, sym):
    init = _eps_close({start}, eps)
    ids = {init: 0}
    queue = [init]
    rows = []
    acc = []
    while queue:
        cur = queue.pop(0)
        acc.append(accept in cur)
        row = []
        for e in range(alphabet.num_symbols):
            nxt = set()
            for q in cur:
                nxt |= sym.get(q, {}).get(e, set())
            cl = _eps_close(nxt, eps)
            if cl not in ids:
                ids[cl] = len(ids)
                queue.append(cl)
            row.append(ids[cl])
        rows.append(row)
    return minimize(Dfa(alphabet, np.array(rows, dtype=np.int32), acc, 0))


def _pad_closure(dfa, lsd):
    """Close the language under padding zeros: 0*L for msd, L0* for lsd."""
    alph = dfa.alphabet
    n = dfa.n
    z = n
    steps = [dict() for _ in range(n + 1)]
    for s in range(n):
        for e in range(alph.num_symbols):
            steps[s].setdefault(e, set()).add(int(dfa.trans[s, e]))
    if lsd:
        steps[z][0] = {z}
        finals = {s for s in range(n) if dfa.accept[s]}
        for f in list(finals):
            steps[f].setdefault(0, set()).add(z)
        nfa = Nfa(alph.num_symbols, steps, {dfa.initial}, finals | {z})
    else:
        steps[z][0] = {z, dfa.initial}
        nfa = Nfa(alph.num_symbols, steps, {z, dfa.initial},
                  {s for s in range(n) if dfa.accept[s]})
    return minimize(determinize_with_alphabet(nfa, alph))


def compile_regex(text, systems):
    """Minimized DFA for the regex over the given per-track systems.

    All tracks must read in the same direction; the padding closure is
    applied on that side so every representation of a matched value is
    accepted.
    """
    if not systems:
        raise RegexError("at least one numeration system required")
    orientations = {s.lsd for s in systems}
    if len(orientations) != 1:
        raise RegexError("all tracks of a regex must share one reading direction")
    alphabet = Alphabet(tuple(s.digit_count for s in systems))
    toks = _tokenize(text)
    node = _parse(toks)
    eps, sym = {}, {}
    counter = [0]

    def new_state():
        counter[0] += 1
        return counter[0] - 1

    start, accept = _thompson(node, alphabet, eps, sym, new_state)
    dfa = _nfa_to_dfa(alphabet, start, accept, eps, sym)
    return _pad_closure(dfa, systems[0].lsd)
