#!/usr/bin/env python3
"""Probe the sharpness of the decision level.

For p in {2, 3} the level that settles minimality is 3, and it cannot
be lowered: this script hunts the standard boxes for maps whose full
cycle survives level 2 but breaks at level 3.  For p in {5, 7} the
decision level is 2, and random sampling confirms that the level-2
verdict persists at deeper levels.
"""

import argparse
import random
import sys
from itertools import product

from padicdyn.dynamics import IntPolynomial, is_full_cycle


def hunt_level3_breakers(prime, bound, degree, limit):
    found = []
    for tail in product(range(bound), repeat=degree):
        if not any(tail):
            continue
        f = IntPolynomial(prime, (1, *tail))
        if is_full_cycle(f, 2) and not is_full_cycle(f, 3):
            found.append(f)
            if len(found) >= limit:
                break
    return found


def sample_persistence(prime, samples, depth, rng):
    agreements = 0
    for _ in range(samples):
        while True:
            coeffs = tuple(rng.randrange(prime * prime) for _ in range(5))
            if any(coeffs[1:]):
                break
        f = IntPolynomial(prime, coeffs)
        fc2 = is_full_cycle(f, 2)
        if all(is_full_cycle(f, n) == fc2 for n in range(3, depth + 1)):
            agreements += 1
    return agreements


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--limit", type=int, default=5,
                        help="level-3 breakers to list per small prime")
    parser.add_argument("--samples", type=int, default=300,
                        help="random maps per large prime")
    parser.add_argument("--depth", type=int, default=4,
                        help="deepest level checked for persistence")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    ok = True
    for prime, bound, degree in ((2, 8, 3), (3, 9, 5)):
        breakers = hunt_level3_breakers(prime, bound, degree, args.limit)
        print(f"p={prime}: full at level 2 but not 3 "
              f"(so level 2 cannot decide):")
        for f in breakers:
            print(f"  {f}")
        if not breakers:
            ok = False
            print("  none found, which contradicts the known witnesses")

    rng = random.Random(args.seed)
    for prime in (5, 7):
        hits = sample_persistence(prime, args.samples, args.depth, rng)
        status = "all" if hits == args.samples else f"only {hits} of"
        print(f"p={prime}: {status} {args.samples} sampled maps kept their "
              f"level-2 verdict through level {args.depth}")
        ok = ok and hits == args.samples
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
