"""Killing-word lengths on random mortal instances against the worst-case bound
and against the shortest killing word found by subset BFS."""

import argparse
import statistics
from collections import defaultdict

from killingwords.analysis import mortality
from killingwords.core import evaluate, is_zero, killing_bound
from killingwords.general_synthesis import synthesize
from killingwords.generators import random_ufa
from killingwords.oracle import shortest_killing_word_bfs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--per-n", type=int, default=30)
    ap.add_argument("--letters", type=int, default=2)
    ap.add_argument("--sc", action="store_true", help="strongly connected instances only")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rows = defaultdict(list)
    for n in range(2, args.n_max + 1):
        seed = args.seed * 100_000 + n * 1000
        while len(rows[n]) < args.per_n:
            seed += 1
            density = min(0.9, (1.0 if args.sc else 3.2) / (n * args.letters))
            m = random_ufa(n, density, seed, letters=args.letters, strongly_connected=args.sc)
            if not mortality(m):
                continue
            word, _ = synthesize(m)
            assert is_zero(evaluate(m, word))
            best = shortest_killing_word_bfs(m)
            rows[n].append((len(word), len(best)))

    print(f"{'n':>3} {'bound':>7} {'mean|w|':>8} {'max|w|':>7} {'mean opt':>9} {'max |w|/opt':>11}")
    for n, data in rows.items():
        lens = [w for w, _ in data]
        opts = [o for _, o in data]
        ratio = max(w / o for w, o in data)
        print(f"{n:>3} {killing_bound(n):>7} {statistics.mean(lens):>8.1f} {max(lens):>7} "
              f"{statistics.mean(opts):>9.1f} {ratio:>11.2f}")


if __name__ == "__main__":
    main()
