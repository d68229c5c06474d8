"""Exhaustive law check at bound 3 (slow: several minutes on a desktop).

Runs L1-L10 plus the sampled three-argument family laws over every pair of
soft classes with all sides at most --bound, and prints one line per law.
"""

import argparse
import time

from softclass.oracle import FAMILY_LAWS, THEOREM_LAWS, Bounds, run_bounded


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--bound", type=int, default=3)
    parser.add_argument("--samples", type=int, default=64)
    args = parser.parse_args()
    b = args.bound
    start = time.perf_counter()
    reports = run_bounded(Bounds(b, b, b, b), THEOREM_LAWS + FAMILY_LAWS,
                          family_samples=args.samples)
    for rep in reports:
        print(f"{rep.law:4s} instances={rep.instances:>12d} violations={rep.violation_count}")
    print(f"elapsed {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
