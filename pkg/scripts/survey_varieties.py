"""Tabulate solver outcomes for short injective endomorphisms of F(a, b).

    python3 scripts/survey_varieties.py --max-len 3
"""

import argparse
import collections
import itertools

from hnnkit.subgroups import is_injective
from hnnkit.variety import Solved, build_system, solve_triangular
from hnnkit.words import Endomorphism, FreeWord


def reduced_words(max_len):
    letters = [("a", 1), ("a", -1), ("b", 1), ("b", -1)]
    seen = set()
    for n in range(1, max_len + 1):
        for combo in itertools.product(letters, repeat=n):
            w = FreeWord.from_letters(combo)
            if len(w) == n and w not in seen:
                seen.add(w)
                yield w


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-len", type=int, default=3)
    ap.add_argument("--show", type=int, default=10, help="print this many solved examples")
    args = ap.parse_args()

    words = list(reduced_words(args.max_len))
    tally = collections.Counter()
    shown = 0
    for u, v in itertools.product(words, repeat=2):
        phi = Endomorphism(("a", "b"), (u, v))
        if not is_injective(phi):
            tally["not injective"] += 1
            continue
        result = solve_triangular(build_system(phi))
        kind = "solved" if isinstance(result, Solved) else "unsolved"
        tally[(kind, result.dimension)] += 1
        if isinstance(result, Solved) and result.dimension < 2 and shown < args.show:
            shown += 1
            print(f"{phi}:  " + " | ".join(map(str, result.components)))
    print()
    for key, count in sorted(tally.items(), key=str):
        label = key if isinstance(key, str) else f"{key[0]}, dimension {key[1]}"
        print(f"{label:28s} {count}")


if __name__ == "__main__":
    main()
