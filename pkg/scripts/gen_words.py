"""Regenerate the word automata shipped in seqlogic/words_data.

Builtins (F, PD) are written from their closed-form DFAOs.  The remainder
words for the anti-Tribonacci and anti-Teranacci rows are guessed from
oracle prefixes and cross-checked against a longer stretch of the oracle
before anything is written.  The Christol kernels co3 and co4 are built
exactly; co5 is large and is left to `seqlogic gen-co 5` on demand.
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from seqlogic import christol
from seqlogic.numeration import NumerationSystem
from seqlogic.oracles import remainder_sequences
from seqlogic.words import (Word, builtin_F, builtin_PD, guess_dfao, save_word, word_value,
                            words_dir)

# row name -> shipped word name, per anti-recurrence order k
KIMBER_NAMES = {
    3: {"A": "xkimber", "B": "ykimber", "C": "zkimber", "D": "wkimber"},
    4: {"A": "xxkimber", "B": "yykimber", "C": "zzkimber", "D": "vvkimber", "E": "wwkimber"},
}
KIMBER_BASE = {3: 3, 4: 2}

GUESS_TERMS = 30_000
CHECK_TERMS = 120_000


def gen_kimber(order, out_dir):
    base = KIMBER_BASE[order]
    system = NumerationSystem.parse_tag(f"lsd_{base}")
    short = remainder_sequences(order, GUESS_TERMS)
    long = remainder_sequences(order, CHECK_TERMS)
    for row, name in KIMBER_NAMES[order].items():
        dfao = guess_dfao(short[row], base, lsd=True)
        seq = long[row]
        for n in range(len(seq)):
            got = word_value(dfao, system, (n,))
            if got != seq[n]:
                raise SystemExit(f"{name}: guessed machine disagrees with oracle at n={n}")
        save_word(Word(name, system, dfao), os.path.join(out_dir, name + ".txt"))
        print(f"{name}: {dfao.n} states, checked {len(seq)} terms")


def gen_christol(q, out_dir):
    name = f"co{q}"
    system = NumerationSystem.parse_tag(f"lsd_{q}")
    dfao = christol.build_co(q)
    save_word(Word(name, system, dfao), os.path.join(out_dir, name + ".txt"))
    print(f"{name}: {dfao.n} states, {dfao.alphabet.tracks} tracks")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=words_dir(), help="target directory")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    for w in (builtin_F(), builtin_PD()):
        save_word(w, os.path.join(args.out, w.name + ".txt"))
        print(f"{w.name}: {w.dfao.n} states (builtin)")
    for order in (3, 4):
        gen_kimber(order, args.out)
    for q in (3, 4):
        gen_christol(q, args.out)


if __name__ == "__main__":
    main()
