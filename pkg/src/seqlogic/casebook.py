"""Regression corpus: scripts with pinned verdicts and oracle cross-checks.

Cases live in casebook_data/ as plain-text script files plus a manifest of
one stanza per case.  Each case runs in a fresh session, so the suite is
order-independent; stretch cases are skipped unless asked for.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import oracles
from .automata import max_nonzero_symbols
from .christol import build_co
from .fields import FqField
from .logic import BudgetError, DeadlineError, LogicError, Session
from .numeration import NumerationSystem
from .words import Word, word_value

DATA_DIR = Path(__file__).parent / "casebook_data"


@dataclass
class Case:
    name: str
    tags: tuple = ()
    script: str = None  # script text, None for oracle-only cases
    expects: tuple = ()  # (command name, True/False)
    states: tuple = ()  # (predicate name, state count)
    maxnonzero: tuple = ()  # (predicate name, count)
    accepts: tuple = ()  # (predicate name, value)
    checks: tuple = ()  # (oracle check name, args)

    @property
    def stretch(self):
        return "stretch" in self.tags


@dataclass
class CaseResult:
    name: str
    failures: list = field(default_factory=list)
    skipped: bool = False
    stretch: bool = False
    seconds: float = 0.0

    @property
    def ok(self):
        return not self.failures


def load_manifest(data_dir=DATA_DIR):
    """Parse manifest stanzas into Case objects."""
    cases = []
    cur = None

    def flush():
        if cur is not None:
            cases.append(Case(**{k: tuple(v) if isinstance(v, list) else v
                                 for k, v in cur.items()}))

    for raw in (Path(data_dir) / "manifest.txt").read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kw, rest = line.split(None, 1)
        if kw == "case":
            flush()
            cur = {"name": rest, "tags": [], "expects": [], "states": [],
                   "maxnonzero": [], "accepts": [], "checks": []}
        elif kw == "tags":
            cur["tags"] = rest.split()
        elif kw == "script":
            cur["script"] = (Path(data_dir) / rest).read_text()
        elif kw == "expect":
            name, verdict = rest.split()
            cur["expects"].append((name, verdict == "TRUE"))
        elif kw in ("states", "maxnonzero", "accepts"):
            name, num = rest.split()
            cur[kw].append((name, int(num)))
        elif kw == "oracle":
            parts = rest.split()
            cur["checks"].append((parts[0], tuple(int(a) for a in parts[1:])))
        else:
            raise ValueError(f"unknown manifest keyword {kw!r}")
    flush()
    return cases


# ---------------------------------------------------------------------------
# Oracle cross-checks.  Each takes the case's session and returns a list of
# failure strings (empty = pass).


def _enumerate_set(session, name, bound):
    return set(session.enumerate_predicate(name, bound))


def _check_a260317_sieve(session, bound):
    got = _enumerate_set(session, "a260317", bound)
    want = set(oracles.unsums_upto(bound))
    if got != want:
        return [f"a260317 vs sieve <= {bound}: "
                f"missing {sorted(want - got)[:5]}, extra {sorted(got - want)[:5]}"]
    return []


def _check_gap_alphabet(session, bound):
    gs = set(oracles.gaps(oracles.unsums_upto(bound)))
    if not gs <= {1, 2, 3, 5}:
        return [f"gap alphabet {sorted(gs)} not within {{1,2,3,5}}"]
    return []


def _check_palindrome_blocks(session, count):
    blocks = oracles.palindrome_blocks(
        oracles.gaps(oracles.unsums_upto(8000)))[:count]
    fails = []
    if len(blocks) < count:
        return [f"only {len(blocks)} palindrome blocks below bound"]
    fib = [1, 1]
    while len(fib) < count + 4:
        fib.append(fib[-1] + fib[-2])
    for i, b in enumerate(blocks, start=1):
        if b != b[::-1]:
            fails.append(f"W_{i} not palindromic")
        if len(b) != fib[i]:  # |W_i| = F_{i+1} with F_1 = F_2 = 1
            fails.append(f"|W_{i}| = {len(b)}, expected F_{i + 1} = {fib[i]}")
        if sum(b) + 2 != fib[i + 3]:  # digit sums 3, 6, 11, ... = F_{i+4} - 2
            fails.append(f"digit sum of W_{i} is {sum(b)}, "
                         f"expected F_{i + 4} - 2 = {fib[i + 3] - 2}")
    return fails


def _check_bincoef_parity(session, bound):
    got = _enumerate_set(session, "bincoef", bound)
    want = {(k, n) for n in range(bound + 1) for k in range(n + 1)
            if math.comb(n, k) % 2 == 1}
    if got != want:
        return [f"bincoef vs binomial parity <= {bound}: differs"]
    return []


def _check_co_expansion(session, q, bound):
    word = session.words[f"co{q}"]
    f = FqField(q)
    fails = []
    for exps in _tuples_with_sum_at_most(q - 1, bound):
        coeffs = oracles.expand_poly_fq(f, exps)
        for a, c in enumerate(coeffs):
            if word_value(word.dfao, word.system, (a,) + exps) != c:
                fails.append(f"co{q}{(a,) + exps} != expansion coefficient {c}")
                return fails
    return fails


def _tuples_with_sum_at_most(rank, bound):
    if rank == 0:
        yield ()
        return
    for head in range(bound + 1):
        for rest in _tuples_with_sum_at_most(rank - 1, bound - head):
            yield (head,) + rest


def _check_co3no0_set(session, bound):
    got = _enumerate_set(session, "co3no0", bound - 1)
    want = set(oracles.f3_all_nonzero_ns(bound))
    if got != want:
        return [f"co3no0 vs brute force < {bound}: "
                f"missing {sorted(want - got)[:5]}, extra {sorted(got - want)[:5]}"]
    return []


def _check_co4_deg100(session):
    f = FqField(4)
    coeffs = oracles.expand_poly_fq(f, (28, 35, 37))
    nonzero = sum(1 for c in coeffs if c != 0)
    if len(coeffs) != 101 or nonzero != 101:
        return [f"(x+1)^28 (x+g)^35 (x+g^2)^37: {nonzero} nonzero of {len(coeffs)}"]
    return []


def _check_antinacci_sync(session, k, bound):
    rows, sums = oracles.anti_nacci(k, bound)
    fails = []
    if k == 2:
        want_anti = {(n + 1, v) for n, v in enumerate(sums) if v <= bound}
        inter = {}
        for j, row in enumerate(rows):
            for n, v in enumerate(row):
                inter[2 * n + 1 + j] = v
        want_nona = {(i, v) for i, v in inter.items() if v <= bound}
        pairs = {"antifib": want_anti, "nonafib": want_nona}
    else:
        names = {3: ("seqa", "seqb", "seqc", "seqd"),
                 4: ("seq4A", "seq4B", "seq4C", "seq4D", "seq4E")}[k]
        series = rows + [sums]
        pairs = {nm: {(n + 1, v) for n, v in enumerate(sq) if v <= bound}
                 for nm, sq in zip(names, series)}
    for nm, want in pairs.items():
        # index 0 can slip in as a definitional artifact (Ek n=4*k & x=5*k
        # at k=0); the sequences themselves are 1-indexed
        got = {t for t in _enumerate_set(session, nm, bound) if t[0] >= 1}
        if got != want:
            fails.append(f"{nm} vs mex oracle <= {bound}: differs "
                         f"(missing {sorted(want - got)[:3]}, extra {sorted(got - want)[:3]})")
    return fails


def _check_remainder_c_bound(session, k, expected_max):
    got = oracles.remainder_bounds(k)["C"][1]
    if got != expected_max:
        return [f"remainder C max {got}, expected {expected_max}"]
    return []


def _check_subsumfree_set(session, x, y, z, bound):
    if "isinG" in session.predicates:
        name = "isinG"
    else:
        name = {(1, 2, 3): "seq123", (1, 3, 4): "seq134",
                (1, 4, 5): "seq145", (1, 4, 8): "seq148"}[(x, y, z)]
    seq = oracles.subsumfree(x, y, z, 700)
    cap = min(bound, seq[-1])
    got = _enumerate_set(session, name, cap)
    want = {v for v in seq if v <= cap}
    if got != want:
        return [f"{name} vs greedy oracle <= {cap}: "
                f"missing {sorted(want - got)[:5]}, extra {sorted(got - want)[:5]}"]
    return []


def _check_subsumfree_period(session, x, y, z, modulus, period):
    p = oracles.detect_periodicity(oracles.subsumfree(x, y, z, 3000), modulus)
    if p is None or p.period != period:
        return [f"S_{{{x},{y},{z}}} mod {modulus}: period "
                f"{None if p is None else p.period}, expected {period}"]
    return []


def _check_stephan(session, terms):
    seq = oracles.subsumfree(1, 2, 3, terms)
    for n in range(6, terms - 6):
        if seq[n + 6] - seq[n + 5] != seq[n + 1] - seq[n]:
            return [f"difference relation fails at n={n}"]
    return []


_CO5 = {}


def co5_word():
    """Cached co5 DFAO wrapped as a loadable word."""
    if "word" not in _CO5:
        dfao = build_co(5)
        system = NumerationSystem.parse_tag("lsd_5")
        _CO5["word"] = Word("co5", system, dfao)
    return _CO5["word"]


def _check_co5_build(session, samples):
    word = co5_word()
    fails = []
    if word.dfao.n > 5 ** 4:
        fails.append(f"co5 has {word.dfao.n} states, bound {5 ** 4}")
    f = FqField(5)
    rng = np.random.default_rng(17)
    for _ in range(samples):
        exps = tuple(int(v) for v in rng.integers(0, 11, size=4))
        coeffs = oracles.expand_poly_fq(f, exps)
        a = int(rng.integers(0, len(coeffs)))
        if word_value(word.dfao, word.system, (a,) + exps) != coeffs[a]:
            fails.append(f"co5{(a,) + exps} != expansion")
            return fails
    return fails


CHECKS = {
    "a260317_sieve": _check_a260317_sieve,
    "gap_alphabet": _check_gap_alphabet,
    "palindrome_blocks": _check_palindrome_blocks,
    "bincoef_parity": _check_bincoef_parity,
    "co_expansion": _check_co_expansion,
    "co3no0_set": _check_co3no0_set,
    "co4_deg100": _check_co4_deg100,
    "antinacci_sync": _check_antinacci_sync,
    "remainder_c_bound": _check_remainder_c_bound,
    "subsumfree_set": _check_subsumfree_set,
    "subsumfree_period": _check_subsumfree_period,
    "stephan": _check_stephan,
    "co5_build": _check_co5_build,
}


# ---------------------------------------------------------------------------
# Runner


def run_case(case, max_states=10_000_000, timeout=None):
    start = time.monotonic()
    result = CaseResult(case.name, stretch=case.stretch)
    session = Session(max_states=max_states, timeout=timeout)
    if "needs_co5" in case.tags:
        session.words["co5"] = co5_word()
    verdicts = {}
    if case.script is not None:
        try:
            for r in session.run(case.script):
                if r.kind == "eval":
                    verdicts[r.name] = r.verdict
        except (LogicError, BudgetError, DeadlineError) as e:
            result.failures.append(f"script aborted: {e}")
            result.seconds = time.monotonic() - start
            return result
    for name, want in case.expects:
        if name not in verdicts:
            result.failures.append(f"{name}: no verdict produced")
        elif verdicts[name] is not want:
            result.failures.append(
                f"{name}: {'TRUE' if verdicts[name] else 'FALSE'}, "
                f"expected {'TRUE' if want else 'FALSE'}")
    for name, want in case.states:
        got = session.predicates[name].dfa.n
        if got != want:
            result.failures.append(f"{name}: {got} states, expected {want}")
    for name, want in case.maxnonzero:
        got = max_nonzero_symbols(session.predicates[name].dfa)
        if got != want:
            result.failures.append(f"{name}: max {got} nonzero symbols, "
                                   f"expected {want}")
    for name, value in case.accepts:
        pred = session.predicates[name]
        digits = pred.system.encode(value)
        state = pred.dfa.initial
        for d in digits:
            state = int(pred.dfa.trans[state, d])
        if not pred.dfa.accept[state]:
            result.failures.append(f"{name} rejects {value}")
    for check, args in case.checks:
        result.failures.extend(CHECKS[check](session, *args))
    result.seconds = time.monotonic() - start
    return result


def run_suite(filter=None, stretch=False, data_dir=DATA_DIR,
              max_states=10_000_000, timeout=None, log=None):
    """Run matching cases, each in a fresh session; returns CaseResults.

    filter selects by case name or tag; stretch cases are skipped (reported
    but never failing) unless stretch=True or the filter names them.
    """
    results = []
    for case in load_manifest(data_dir):
        selected = filter is None or filter == case.name or filter in case.tags
        if not selected:
            continue
        if case.stretch and not stretch and filter != case.name:
            results.append(CaseResult(case.name, skipped=True))
            continue
        r = run_case(case, max_states=max_states, timeout=timeout)
        results.append(r)
        if log is not None:
            status = "ok" if r.ok else "FAIL"
            log(f"{case.name:<12} {status}  {r.seconds:7.2f}s"
                + ("".join("\n  " + f for f in r.failures)))
    return results
