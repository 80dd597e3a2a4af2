"""Find finite-quotient witnesses for many elements of < a, t | t^2 a t^-2 = a^2 >.

Each nontrivial element tested gets an affine (or, failing that, permutation)
quotient in which it survives.

    python3 scripts/separate_elements.py --count 50 --affine 13 --perm 5
"""

import argparse
import random

from hnnkit.hnn import FinitePresentation, magnus_rewrite, normal_form
from hnnkit.quotients import affine_witness, is_witness, perm_witness
from hnnkit.words import FreeWord, parse_word


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=30)
    ap.add_argument("--max-len", type=int, default=6)
    ap.add_argument("--affine", type=int, default=13)
    ap.add_argument("--perm", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    pres = FinitePresentation.parse("a t", ["t^2 a t^-2 = a^2"])
    hnn = magnus_rewrite(2, parse_word("a^2"))
    rng = random.Random(args.seed)
    found = missing = trivial = 0
    for _ in range(args.count):
        w = FreeWord.from_letters([(rng.choice("at"), rng.choice((1, -1)))
                                   for _ in range(rng.randint(1, args.max_len))])
        if str(normal_form(hnn, hnn.translate(w.syllables))) == "1":
            trivial += 1
            continue
        A = affine_witness(pres, w, args.affine) or perm_witness(pres, w, args.perm)
        if A is None:
            missing += 1
            print(f"{w}: no witness within the search bounds")
        else:
            assert is_witness(A, pres, w)
            found += 1
            print(f"{w}: {A}")
    print(f"\nwitnessed {found}, unresolved {missing}, trivial {trivial}")


if __name__ == "__main__":
    main()
