"""Uncompletable words for random finite codes: synthesized length, the
closed-form bound and the brute-force shortest uncompletable word."""

import argparse

from killingwords.codes import is_uncompletable, uncompletable_word
from killingwords.generators import random_code
from killingwords.oracle import shortest_uncompletable_brute


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=30)
    ap.add_argument("--alphabet-size", type=int, default=2)
    ap.add_argument("--max-words", type=int, default=5)
    ap.add_argument("--max-len", type=int, default=4)
    ap.add_argument("--oracle-len", type=int, default=10)
    args = ap.parse_args()

    print(f"{'seed':>4} {'k':>2} {'m':>3} {'|w|':>5} {'bound':>7} {'shortest':>8}  code")
    for seed in range(args.count):
        code = random_code(args.alphabet_size, args.max_words, args.max_len, seed)
        word, cert = uncompletable_word(code)
        best = shortest_uncompletable_brute(code, args.oracle_len)
        if word is None:
            length = "none"
        else:
            assert is_uncompletable(code, word)
            length = len(word)
        shortest = len(best) if best is not None else f">{args.oracle_len}"
        print(f"{seed:>4} {code.k_code:>2} {code.m_code:>3} {length!s:>5} {cert.bound:>7} {shortest!s:>8}  "
              f"{{{', '.join(code.render())}}}")


if __name__ == "__main__":
    main()
