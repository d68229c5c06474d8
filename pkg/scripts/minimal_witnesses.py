"""Smallest class sizes at which N1 and N2 have counterexamples.

Sweeps shapes (|X|, |Y|, |E|, |E'|) in order of total size and prints the
first witness for each refutation target.  Pass --min 0 to allow empty
universes or attribute spaces.
"""

import argparse

from softclass.codec import serialize_document
from softclass.oracle import Bounds, search_counterexample


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max", type=int, default=3)
    parser.add_argument("--min", type=int, default=1)
    args = parser.parse_args()
    bounds = Bounds(args.max, args.max, args.max, args.max, args.min)
    for law in ("N1", "N2"):
        w = search_counterexample(law, bounds=bounds)
        if w is None:
            print(f"{law}: no witness up to size {args.max}")
            continue
        f = w.mapping
        shape = (len(f.source.universe), len(f.target.universe),
                 len(f.source.attributes), len(f.target.attributes))
        print(f"{law}: first witness at |X|,|Y|,|E|,|E'| = {shape}")
        print(serialize_document(w).decode(), end="")


if __name__ == "__main__":
    main()
