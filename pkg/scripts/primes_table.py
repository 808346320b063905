"""Primes-family table: size, period P, synthesized minimum-rank word and monoid facts.

For small m the monoid is enumerated to find the shortest word producing
M(b1 a^P); its length grows with P while n grows only with the sum of primes.
"""

import argparse
import time

from killingwords.core import evaluate, rank
from killingwords.general_synthesis import synthesize
from killingwords.generators import primes_family
from killingwords.oracle import enumerate_monoid


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=4)
    ap.add_argument("--monoid-up-to", type=int, default=3, help="enumerate the monoid for m <= this")
    args = ap.parse_args()

    print(f"{'m':>2} {'n':>4} {'P':>6} {'|w|':>5} {'rank':>4} {'|monoid|':>9} {'|b1 a^P|*':>10} {'secs':>6}")
    for m in range(1, args.max_m + 1):
        t0 = time.perf_counter()
        inst = primes_family(m)
        mor = inst.morphism
        word, cert = synthesize(mor)
        assert rank(evaluate(mor, word)) == cert.rank
        size = shortest = "-"
        if m <= args.monoid_up_to:
            table = enumerate_monoid(mor)
            target = evaluate(mor, mor.alphabet.parse(["b1"] + ["a"] * inst.P))
            size = len(table) if table.complete else f">{len(table)}"
            w = table.witness(target)
            shortest = len(w) if w is not None else "?"
        secs = time.perf_counter() - t0
        print(f"{m:>2} {inst.n:>4} {inst.P:>6} {len(word):>5} {cert.rank:>4} {size!s:>9} {shortest!s:>10} {secs:>6.2f}")
    print("* shortest word with the same matrix as b1 a^P (monoid enumeration)")


if __name__ == "__main__":
    main()
