"""Trace polynomials of short words restricted to the two solution curves
of a -> a, b -> [a, b].

Useful for inspecting which words have constant or low-degree traces on a
curve, e.g. whether some power of a^2 b could be forced trivial.

    python3 scripts/curve_traces.py --max-len 4
"""

import argparse
import itertools

from hnnkit.polyring import X, Polynomial
from hnnkit.trace import TraceContext
from hnnkit.words import FreeWord, parse_word

CURVES = {
    "y=2, z=x": {"y": Polynomial.const(2), "z": X},
    "y=x^2-1, z=x^3-2*x": {"y": X ** 2 - 1, "z": X ** 3 - 2 * X},
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-len", type=int, default=3)
    ap.add_argument("--word", action="append", default=[], help="extra word(s) to show, e.g. 'a^2 b'")
    args = ap.parse_args()

    ctx = TraceContext()
    words = {FreeWord.from_letters(c)
             for n in range(1, args.max_len + 1)
             for c in itertools.product([("a", 1), ("a", -1), ("b", 1), ("b", -1)], repeat=n)}
    words = {w for w in words if not w.is_identity}
    keys = {}
    for w in sorted(words, key=lambda w: (len(w), str(w))):
        keys.setdefault(ctx.canonical_key(w), w)
    chosen = list(keys.values()) + [parse_word(s) for s in args.word]
    for name, sigma in CURVES.items():
        print(f"== {name}")
        for w in chosen:
            print(f"  tr({w}) = {ctx(w).substitute(sigma)}")


if __name__ == "__main__":
    main()
