"""First-order queries over automatic sequences, compiled to automata.

A session holds named predicates and words and executes commands:

    def NAME "FORMULA":     store the formula's automaton as a predicate
    eval NAME "FORMULA":    decide the formula (TRUE/FALSE)
    reg NAME TAG... "RE":   compile a digit regex as a predicate
    load NAME "PATH":       register a word automaton from a file
    export NAME "PATH":     write a stored predicate or word to a file

Formulas use one numeration context (optional ?TAG prefix, default
msd_2), quantifiers A/E over comma-separated variable lists with maximal
scope, connectives ~ & | => <=>, relations = != < <= > >=, linear terms
with numeral-only * and floor / by a numeral, word indexing W[t]...[t],
output literals @c, and predicate calls $name(terms).  Every automaton
is kept minimized and restricted to valid representations, so emptiness
and universality coincide with logical falsity and truth.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass

import numpy as np

from . import regex as regex_mod
from .automata import (Alphabet, Dfa, complement, cylindrify, language_equal,
                       minimize, product, project, shortest_accepted, to_text)
from .numeration import (NumerationSystem, add_dfa, const_dfa, eq_dfa, leq_dfa,
                         less_dfa, valid_dfa)
from .words import Word, builtin_F, builtin_PD, load_word, load_directory, words_dir


class LogicError(ValueError):
    pass


class ParseError(LogicError):
    pass


class UnknownNameError(LogicError):
    pass


class BudgetError(RuntimeError):
    pass


class DeadlineError(RuntimeError):
    pass


TWO_VARS_MSG = "operator not applicable to two variables"


# ---------------------------------------------------------------------------
# Tokenizer

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<sys>\?[A-Za-z_][A-Za-z0-9_]*)
  | (?P<out>@\d+)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<call>\$[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><=>|=>|<=|>=|!=|[=<>&|~+\-*/(),\[\]])
""", re.VERBOSE)


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r} at position {pos}")
        pos = m.end()
        kind = m.lastgroup
        if kind == "ws":
            continue
        val = m.group()
        if kind == "num":
            toks.append(("num", int(val), m.start()))
        elif kind == "out":
            toks.append(("out", int(val[1:]), m.start()))
        elif kind == "sys":
            toks.append(("sys", val[1:], m.start()))
        elif kind == "call":
            toks.append(("call", val[1:], m.start()))
        elif kind == "name":
            toks.append(("name", val, m.start()))
        else:
            toks.append((val, None, m.start()))
    return toks


# ---------------------------------------------------------------------------
# Parser.  AST nodes are tuples tagged by their first element.
#
# terms:    ("var", x) ("num", c) ("out", c) ("add", a, b) ("sub", a, b)
#           ("mul", c, t) ("div", t, c) ("word", name, [terms])
# formulas: ("rel", op, t1, t2) ("call", name, [terms]) ("not", f)
#           ("and", a, b) ("or", a, b) ("imp", a, b) ("iff", a, b)
#           ("forall", [vars], f) ("exists", [vars], f)

_REL_OPS = ("=", "!=", "<", "<=", ">", ">=")


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None, -1)

    def take(self, kind=None):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of formula")
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, got {tok[0]!r} at position {tok[2]}")
        self.pos += 1
        return tok

    # formulas -------------------------------------------------------------

    def formula(self):
        if self._at_quantifier():
            return self._quantified()
        return self.iff()

    def _at_quantifier(self):
        kind, val, _ = self.peek()
        return kind == "name" and val[0] in ("A", "E")

    def _quantified(self):
        # quantifier head; the first variable may be fused, as in "An"
        val = self.take()[1]
        names = [val[1:]] if len(val) > 1 else [self.take("name")[1]]
        while self.peek()[0] == ",":
            self.take()
            names.append(self.take("name")[1])
        body = self.formula()
        return ("forall" if val[0] == "A" else "exists", names, body)

    def iff(self):
        node = self.imp()
        while self.peek()[0] == "<=>":
            self.take()
            node = ("iff", node, self.imp())
        return node

    def imp(self):
        node = self.disj()
        if self.peek()[0] == "=>":
            self.take()
            return ("imp", node, self.imp())
        return node

    def disj(self):
        node = self.conj()
        while self.peek()[0] == "|":
            self.take()
            node = ("or", node, self.conj())
        return node

    def conj(self):
        node = self.neg()
        while self.peek()[0] == "&":
            self.take()
            node = ("and", node, self.neg())
        return node

    def neg(self):
        if self.peek()[0] == "~":
            self.take()
            return ("not", self.neg())
        return self.primary()

    def primary(self):
        kind, val, at = self.peek()
        if self._at_quantifier():
            # a quantifier may open any operand; its scope runs maximally
            # right, to the end of the enclosing group
            return self._quantified()
        if kind == "call":
            self.take()
            self.take("(")
            args = [self.term()]
            while self.peek()[0] == ",":
                self.take()
                args.append(self.term())
            self.take(")")
            return ("call", val, args)
        if kind == "(":
            # a parenthesis may open a grouped formula or a term; try the
            # relational reading first and fall back on the formula one
            save = self.pos
            try:
                return self.relational()
            except ParseError:
                self.pos = save
            self.take("(")
            node = self.formula()
            self.take(")")
            return node
        return self.relational()

    def relational(self):
        t1 = self.term()
        op = self.peek()[0]
        if op not in _REL_OPS:
            raise ParseError(f"expected relation after term at position {self.peek()[2]}")
        self.take()
        t2 = self.term()
        for side, other in ((t1, t2), (t2, t1)):
            if side[0] == "out":
                if op not in ("=", "!="):
                    raise ParseError("output literal only allowed with = or !=")
                if other[0] != "word":
                    raise ParseError("output literal only allowed against word indexing")
        return ("rel", op, t1, t2)

    # terms ---------------------------------------------------------------

    def term(self):
        node = self.muldiv()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.muldiv()
            node = self._fold(("add" if op == "+" else "sub"), node, rhs)
        return node

    def muldiv(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            rhs = self.unary()
            if op == "*":
                if node[0] == "num" and rhs[0] == "num":
                    node = ("num", node[1] * rhs[1])
                elif node[0] == "num":
                    node = ("mul", node[1], rhs)
                elif rhs[0] == "num":
                    node = ("mul", rhs[1], node)
                else:
                    raise LogicError(TWO_VARS_MSG)
            else:
                if rhs[0] != "num":
                    raise LogicError(TWO_VARS_MSG)
                if rhs[1] == 0:
                    raise LogicError("division by zero")
                if node[0] == "num":
                    node = ("num", node[1] // rhs[1])
                else:
                    node = ("div", node, rhs[1])
        return node

    def _fold(self, op, a, b):
        if a[0] == "num" and b[0] == "num":
            if op == "add":
                return ("num", a[1] + b[1])
            if a[1] < b[1]:
                raise LogicError(f"numeral subtraction {a[1]}-{b[1]} underflows")
            return ("num", a[1] - b[1])
        return (op, a, b)

    def unary(self):
        kind, val, at = self.peek()
        if kind == "num":
            self.take()
            return ("num", val)
        if kind == "out":
            self.take()
            return ("out", val)
        if kind == "(":
            self.take()
            node = self.term()
            self.take(")")
            return node
        if kind == "name":
            if val[0] in ("A", "E"):
                raise ParseError(f"name {val!r} is reserved for quantifiers "
                                 f"(position {at})")
            self.take()
            if self.peek()[0] == "[":
                idxs = []
                while self.peek()[0] == "[":
                    self.take()
                    idxs.append(self.term())
                    self.take("]")
                return ("word", val, idxs)
            return ("var", val)
        raise ParseError(f"unexpected token {kind!r} at position {at}")


def parse_formula(text):
    """Parse a formula string, returning (system_tag_or_None, ast)."""
    toks = _tokenize(text)
    tag = None
    if toks and toks[0][0] == "sys":
        tag = toks[0][1]
        toks = toks[1:]
    p = _Parser(toks)
    node = p.formula()
    if p.pos != len(p.toks):
        tok = p.peek()
        raise ParseError(f"trailing input {tok[0]!r} at position {tok[2]}")
    _check_scopes(node, frozenset())
    return tag, node


def _check_scopes(node, bound):
    # An inner quantifier may rebind an outer name (the inner binding wins,
    # as in `Ek ... | Ek ...` chains); only same-list duplicates are errors.
    kind = node[0]
    if kind in ("forall", "exists"):
        names = node[1]
        if len(set(names)) != len(names):
            raise ParseError(f"duplicate variable in quantifier list {names}")
        _check_scopes(node[2], bound | set(names))
    elif kind in ("not",):
        _check_scopes(node[1], bound)
    elif kind in ("and", "or", "imp", "iff"):
        _check_scopes(node[1], bound)
        _check_scopes(node[2], bound)


def free_vars_ordered(node, bound=frozenset(), order=None):
    """Free variables in first-occurrence order."""
    if order is None:
        order = []
    kind = node[0]
    if kind == "var":
        if node[1] not in bound and node[1] not in order:
            order.append(node[1])
    elif kind in ("num", "out"):
        pass
    elif kind in ("add", "sub"):
        free_vars_ordered(node[1], bound, order)
        free_vars_ordered(node[2], bound, order)
    elif kind == "mul":
        free_vars_ordered(node[2], bound, order)
    elif kind == "div":
        free_vars_ordered(node[1], bound, order)
    elif kind == "word":
        for t in node[2]:
            free_vars_ordered(t, bound, order)
    elif kind == "rel":
        free_vars_ordered(node[2], bound, order)
        free_vars_ordered(node[3], bound, order)
    elif kind == "call":
        for t in node[2]:
            free_vars_ordered(t, bound, order)
    elif kind == "not":
        free_vars_ordered(node[1], bound, order)
    elif kind in ("and", "or", "imp", "iff"):
        free_vars_ordered(node[1], bound, order)
        free_vars_ordered(node[2], bound, order)
    else:
        free_vars_ordered(node[2], bound | set(node[1]), order)
    return order


# ---------------------------------------------------------------------------
# Compilation context


@dataclass
class Limits:
    max_states: int = 10_000_000
    deadline: float = None

    def charge(self, dfa):
        if dfa.n > self.max_states:
            raise BudgetError(f"automaton grew to {dfa.n} states (budget {self.max_states})")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise DeadlineError("command exceeded its time budget")
        return dfa


class _Ctx:
    """Per-command compilation state: the numeration system, the session's
    registries, and resource limits."""

    def __init__(self, session, system, limits):
        self.session = session
        self.system = system
        self.limits = limits
        self._validity_cache = {}

    def charge(self, dfa):
        return self.limits.charge(dfa)

    def validity(self, tracks):
        if self.system.kind != "fib":
            return None
        if tracks not in self._validity_cache:
            alph = Alphabet((self.system.digit_count,) * tracks)
            v = valid_dfa(self.system)
            out = Dfa(alph, np.zeros((1, alph.num_symbols), dtype=np.int32), [True], 0)
            for t in range(tracks):
                out = product(out, cylindrify(v, alph, (t,)))
            self._validity_cache[tracks] = minimize(out)
        return self._validity_cache[tracks]

    def restrict(self, dfa):
        """Clip to valid representations (no-op for base systems)."""
        v = self.validity(dfa.alphabet.tracks)
        if v is None:
            return dfa
        return self.charge(minimize(product(dfa, v)))

    def alphabet(self, tracks):
        return Alphabet((self.system.digit_count,) * tracks)

    def embed(self, dfa, positions, tracks):
        """Cylindrify onto the wider alphabet, keeping validity everywhere."""
        out = cylindrify(dfa, self.alphabet(tracks), tuple(positions))
        return self.restrict(self.charge(out))

    def conj(self, dfas):
        out = None
        for d in dfas:
            out = d if out is None else self.charge(minimize(product(out, d)))
        return out

    def project_out(self, dfa, track):
        return self.charge(project(dfa, track, lsd=self.system.lsd))


# ---------------------------------------------------------------------------
# Term compilation: automaton over (sorted free vars) + result track (last)


def _compile_term(term, ctx):
    kind = term[0]
    sysm = ctx.system

    if kind == "var":
        return ctx.restrict(eq_dfa(sysm)), (term[1],)

    if kind in ("num", "out"):
        return ctx.restrict(const_dfa(sysm, term[1])), ()

    if kind in ("add", "sub"):
        a1, u1 = _compile_term(term[1], ctx)
        a2, u2 = _compile_term(term[2], ctx)
        vs = sorted(set(u1) | set(u2))
        nv = len(vs)
        total = nv + 3          # aux a, aux b, result
        e1 = ctx.embed(a1, [vs.index(x) for x in u1] + [nv], total)
        e2 = ctx.embed(a2, [vs.index(x) for x in u2] + [nv + 1], total)
        if kind == "add":
            rel = ctx.embed(add_dfa(sysm), (nv, nv + 1, nv + 2), total)
        else:
            rel = ctx.embed(add_dfa(sysm), (nv + 1, nv + 2, nv), total)
        out = ctx.conj([e1, e2, rel])
        out = ctx.project_out(out, nv)      # drop aux a
        out = ctx.project_out(out, nv)      # drop aux b (now at nv)
        return out, tuple(vs)

    if kind == "mul":
        c, sub = term[1], term[2]
        base, u = _compile_term(sub, ctx)
        vs = tuple(sorted(set(u)))
        nv = len(vs)
        base = ctx.embed(base, [vs.index(x) for x in u] + [nv], nv + 1)
        if c == 0:
            # keep the definedness of the subterm, force result 0
            total = nv + 2
            e = ctx.embed(base, list(range(nv)) + [nv + 1], total)
            z = ctx.embed(const_dfa(sysm, 0), (nv,), total)
            out = ctx.project_out(ctx.conj([e, z]), nv + 1)
            return out, vs
        acc = base
        for bit in bin(c)[3:]:
            acc = _combine_linear(acc, acc, ctx, nv)
            if bit == "1":
                acc = _combine_linear(acc, base, ctx, nv)
        return acc, vs

    if kind == "div":
        sub, c = term[1], term[2]
        a, u = _compile_term(sub, ctx)
        vs = sorted(set(u))
        nv = len(vs)
        # tracks: vs, v (=subterm), p (=c*result), w (=p+c), result
        total = nv + 4
        ea = ctx.embed(a, [vs.index(x) for x in u] + [nv], total)
        mul_auto, mu = _compile_term(("mul", c, ("var", "q")), ctx)
        ep = ctx.embed(mul_auto, (nv + 3, nv + 1), total)       # q -> result track
        add_auto, au = _compile_term(("add", ("var", "q"), ("num", c)), ctx)
        ew = ctx.embed(add_auto, (nv + 1, nv + 2), total)
        le = ctx.embed(leq_dfa(sysm), (nv + 1, nv), total)      # p <= v
        lt = ctx.embed(less_dfa(sysm), (nv, nv + 2), total)     # v < w
        out = ctx.conj([ea, ep, ew, le, lt])
        for _ in range(3):
            out = ctx.project_out(out, nv)
        return out, tuple(vs)

    if kind == "word":
        name, idx_terms = term[1], term[2]
        word = ctx.session._word(name)
        if word.system != ctx.system:
            raise LogicError(f"word {name} reads {word.system.tag}, "
                             f"but the context is {ctx.system.tag}")
        m = word.tracks
        if len(idx_terms) != m:
            raise LogicError(f"word {name} takes {m} indices, got {len(idx_terms)}")
        rel = ctx.session._word_relation(name, word, ctx)
        parts = [_compile_term(t, ctx) for t in idx_terms]
        vs = sorted(set(x for _, u in parts for x in u))
        nv = len(vs)
        total = nv + m + 1
        embedded = [ctx.embed(a, [vs.index(x) for x in u] + [nv + j], total)
                    for j, (a, u) in enumerate(parts)]
        embedded.append(ctx.embed(rel, tuple(range(nv, nv + m)) + (total - 1,), total))
        out = ctx.conj(embedded)
        for _ in range(m):
            out = ctx.project_out(out, nv)
        return out, tuple(vs)

    raise LogicError(f"unknown term node {kind!r}")


def _combine_linear(acc, base, ctx, nv):
    """acc' = acc + base over shared variable tracks 0..nv-1 (result last)."""
    total = nv + 3
    ea = ctx.embed(acc, list(range(nv)) + [nv], total)
    eb = ctx.embed(base, list(range(nv)) + [nv + 1], total)
    rel = ctx.embed(add_dfa(ctx.system), (nv, nv + 1, nv + 2), total)
    out = ctx.conj([ea, eb, rel])
    out = ctx.project_out(out, nv)
    return ctx.project_out(out, nv)


# ---------------------------------------------------------------------------
# Formula compilation: automaton over sorted free-variable tracks


def _rel_automaton(op, ctx):
    sysm = ctx.system
    if op == "=":
        return ctx.restrict(eq_dfa(sysm)), False
    if op == "!=":
        return ctx.restrict(complement(eq_dfa(sysm))), False
    if op == "<":
        return ctx.restrict(less_dfa(sysm)), False
    if op == "<=":
        return ctx.restrict(leq_dfa(sysm)), False
    if op == ">":
        return ctx.restrict(less_dfa(sysm)), True
    return ctx.restrict(leq_dfa(sysm)), True


def _compile_formula(node, ctx):
    kind = node[0]

    if kind == "rel":
        _, op, t1, t2 = node
        a1, u1 = _compile_term(t1, ctx)
        a2, u2 = _compile_term(t2, ctx)
        vs = sorted(set(u1) | set(u2))
        nv = len(vs)
        total = nv + 2
        e1 = ctx.embed(a1, [vs.index(x) for x in u1] + [nv], total)
        e2 = ctx.embed(a2, [vs.index(x) for x in u2] + [nv + 1], total)
        rel, swap = _rel_automaton(op, ctx)
        tracks = (nv + 1, nv) if swap else (nv, nv + 1)
        er = ctx.embed(rel, tracks, total)
        out = ctx.conj([e1, e2, er])
        out = ctx.project_out(out, nv)
        out = ctx.project_out(out, nv)
        return out, tuple(vs)

    if kind == "call":
        name, args = node[1], node[2]
        pred = ctx.session._predicate(name)
        if pred.system != ctx.system:
            raise LogicError(f"predicate {name} was defined over {pred.system.tag}, "
                             f"but the context is {ctx.system.tag}")
        if len(args) != len(pred.params):
            raise LogicError(f"predicate {name} takes {len(pred.params)} arguments, "
                             f"got {len(args)}")
        if all(a[0] == "var" for a in args) and len({a[1] for a in args}) == len(args):
            vs = sorted(a[1] for a in args)
            track_map = tuple(vs.index(a[1]) for a in args)
            out = ctx.embed(pred.dfa, track_map, len(vs))
            return out, tuple(vs)
        parts = [_compile_term(t, ctx) for t in args]
        vs = sorted(set(x for _, u in parts for x in u))
        nv = len(vs)
        m = len(args)
        total = nv + m
        embedded = [ctx.embed(a, [vs.index(x) for x in u] + [nv + j], total)
                    for j, (a, u) in enumerate(parts)]
        embedded.append(ctx.embed(pred.dfa, tuple(range(nv, nv + m)), total))
        out = ctx.conj(embedded)
        for _ in range(m):
            out = ctx.project_out(out, nv)
        return out, tuple(vs)

    if kind == "not":
        a, vs = _compile_formula(node[1], ctx)
        return ctx.restrict(ctx.charge(minimize(complement(a)))), vs

    if kind in ("and", "or"):
        a1, u1 = _compile_formula(node[1], ctx)
        a2, u2 = _compile_formula(node[2], ctx)
        return _bool_join(a1, u1, a2, u2, kind, ctx)

    if kind == "imp":
        return _compile_formula(("or", ("not", node[1]), node[2]), ctx)

    if kind == "iff":
        f, g = node[1], node[2]
        return _compile_formula(("or", ("and", f, g), ("and", ("not", f), ("not", g))),
                                ctx)

    if kind in ("forall", "exists"):
        names, body = node[1], node[2]
        if kind == "forall":
            a, vs = _compile_formula(("exists", names, ("not", body)), ctx)
            return ctx.restrict(ctx.charge(minimize(complement(a)))), vs
        a, vs = _compile_formula(body, ctx)
        left = list(vs)
        for x in names:
            if x in left:
                a = ctx.project_out(a, left.index(x))
                left.remove(x)
        return a, tuple(left)

    raise LogicError(f"unknown formula node {kind!r}")


def _bool_join(a1, u1, a2, u2, mode, ctx):
    vs = sorted(set(u1) | set(u2))
    nv = len(vs)
    e1 = ctx.embed(a1, [vs.index(x) for x in u1], nv)
    e2 = ctx.embed(a2, [vs.index(x) for x in u2], nv)
    out = ctx.charge(minimize(product(e1, e2, mode)))
    if mode == "or":
        out = ctx.restrict(out)
    return out, tuple(vs)


# ---------------------------------------------------------------------------
# Session and commands


@dataclass(frozen=True)
class Predicate:
    name: str
    params: tuple
    system: NumerationSystem
    dfa: Dfa


@dataclass
class CommandResult:
    kind: str
    name: str
    verdict: bool = None
    automaton: Dfa = None
    params: tuple = ()
    system: NumerationSystem = None
    counterexample: dict = None
    seconds: float = 0.0

    @property
    def verdict_text(self):
        return "TRUE" if self.verdict else "FALSE"


_COMMAND_RE = re.compile(
    r'\s*(?P<kw>def|eval|reg|load|export)\s+(?P<name>[A-Za-z_][A-Za-z0-9_]*)'
    r'(?P<tags>(\s+[A-Za-z_][A-Za-z0-9_]*)*)\s*'
    r'"(?P<body>[^"]*)"\s*:', re.DOTALL)


def split_commands(text):
    """Split a script into command tuples (kw, name, tags, body)."""
    text = re.sub(r"#[^\n]*", "", text)
    out = []
    pos = 0
    while True:
        rest = text[pos:]
        if not rest.strip():
            return out
        m = _COMMAND_RE.match(text, pos)
        if m is None:
            snippet = rest.strip().splitlines()[0][:60]
            raise ParseError(f"malformed command near {snippet!r}")
        tags = tuple(m.group("tags").split())
        out.append((m.group("kw"), m.group("name"), tags, m.group("body")))
        pos = m.end()


DEFAULT_SYSTEM = NumerationSystem.parse_tag("msd_2")


class Session:
    """Holds named predicates and words; executes commands one at a time."""

    def __init__(self, words_dirs=None, max_states=10_000_000, timeout=None,
                 builtin_words=True):
        self.predicates = {}
        self.words = {}
        self.max_states = max_states
        self.timeout = timeout
        self._word_rel_cache = {}
        if builtin_words:
            for w in (builtin_F(), builtin_PD()):
                self.words[w.name] = w
        for d in ([words_dir()] if words_dirs is None else list(words_dirs)):
            try:
                self.words.update(load_directory(d))
            except FileNotFoundError:
                pass

    # registry lookups ------------------------------------------------------

    def _word(self, name):
        if name not in self.words:
            raise UnknownNameError(f"unknown word {name}")
        return self.words[name]

    def _predicate(self, name):
        if name not in self.predicates:
            raise UnknownNameError(f"unknown predicate {name}")
        return self.predicates[name]

    def _word_relation(self, name, word, ctx):
        """Dfa over (index tracks..., value track): W[i] = value."""
        key = (name, ctx.system)
        if key not in self._word_rel_cache:
            m = word.tracks
            total = m + 1
            parts = []
            for c in sorted(set(np.unique(word.dfao.outputs).tolist())):
                pre = ctx.embed(word.dfao.preimage(c), tuple(range(m)), total)
                cc = ctx.embed(const_dfa(ctx.system, c), (m,), total)
                parts.append(minimize(product(pre, cc)))
            out = parts[0]
            for p in parts[1:]:
                out = minimize(product(out, p, "or"))
            self._word_rel_cache[key] = ctx.restrict(out)
        return self._word_rel_cache[key]

    # commands --------------------------------------------------------------

    def _limits(self):
        deadline = None if self.timeout is None else time.monotonic() + self.timeout
        return Limits(self.max_states, deadline)

    def run_command(self, kw, name, tags, body):
        start = time.monotonic()
        if kw in ("def", "eval"):
            result = self._run_formula(kw, name, body)
        elif kw == "reg":
            result = self._run_reg(name, tags, body)
        elif kw == "load":
            self.words[name] = load_word(name, body)
            result = CommandResult("load", name)
        elif kw == "export":
            result = self._run_export(name, body)
        else:
            raise ParseError(f"unknown command {kw!r}")
        if result.kind in ("def", "reg"):
            self.predicates[name] = Predicate(name, result.params, result.system,
                                              result.automaton)
        result.seconds = time.monotonic() - start
        return result

    def _run_formula(self, kw, name, body):
        if kw == "def" and name in self.predicates:
            raise LogicError(f"predicate {name} is already defined")
        tag, ast = parse_formula(body)
        system = NumerationSystem.parse_tag(tag) if tag else DEFAULT_SYSTEM
        ctx = _Ctx(self, system, self._limits())
        dfa, vs = _compile_formula(ast, ctx)
        if kw == "def":
            params = tuple(free_vars_ordered(ast))
            if set(params) != set(vs):
                raise LogicError("internal: free variable mismatch")
            track_map = tuple(params.index(x) for x in vs)
            stored = ctx.embed(dfa, track_map, len(params))
            return CommandResult("def", name, automaton=minimize(stored),
                                 params=params, system=system)
        full = ctx.validity(len(vs))
        if full is None:
            alph = ctx.alphabet(len(vs))
            n = np.zeros((1, alph.num_symbols), dtype=np.int32)
            full = Dfa(alph, n, [True], 0)
        verdict = language_equal(dfa, full)
        ce = None
        if not verdict and ast[0] == "forall" and not free_vars_ordered(ast):
            ce = self._counterexample(ast, ctx)
        return CommandResult("eval", name, verdict=verdict, automaton=dfa,
                             params=tuple(vs), system=system, counterexample=ce)

    def _counterexample(self, ast, ctx):
        names, body = ast[1], ast[2]
        wit, vs = _compile_formula(("not", body), ctx)
        path = shortest_accepted(wit)
        if path is None:
            return None
        values = {}
        for t, x in enumerate(vs):
            digits = tuple(sym[t] for sym in path)
            values[x] = ctx.system.decode(digits)
        return values

    def _run_reg(self, name, tags, body):
        if name in self.predicates:
            raise LogicError(f"predicate {name} is already defined")
        if not tags:
            raise ParseError("reg needs at least one numeration tag")
        systems = [NumerationSystem.parse_tag(t) for t in tags]
        if len(set(systems)) != 1:
            raise LogicError("reg tracks must share one numeration system")
        try:
            dfa = regex_mod.compile_regex(body, systems)
        except regex_mod.RegexError as e:
            raise ParseError(str(e)) from None
        params = tuple(f"t{i}" for i in range(len(systems)))
        return CommandResult("reg", name, automaton=dfa, params=params,
                             system=systems[0])

    def _run_export(self, name, path):
        if name in self.predicates:
            pred = self.predicates[name]
            text = to_text(pred.dfa, (pred.system.tag,) * len(pred.params))
        elif name in self.words:
            w = self.words[name]
            text = to_text(w.dfao, (w.system.tag,) * w.tracks)
        else:
            raise UnknownNameError(f"unknown name {name}")
        with open(path, "w") as fh:
            fh.write(text)
        return CommandResult("export", name)

    def run(self, text):
        """Run a script; returns the list of CommandResults."""
        return [self.run_command(*cmd) for cmd in split_commands(text)]

    # inspection ------------------------------------------------------------

    def enumerate_predicate(self, name, bound):
        """All parameter tuples with every component <= bound."""
        from .automata import enumerate_values
        pred = self._predicate(name)
        return enumerate_values(pred.dfa, bound,
                                [pred.system] * len(pred.params))
