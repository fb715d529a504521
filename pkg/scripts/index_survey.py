"""Index sequences of random p-adic images.

Draws seeded random generator sets mod p^depth, computes u_k = i_{k+1}/i_k,
and tallies the vertical coincidences and any ratio-check failures.
"""

from __future__ import annotations

import argparse
import random
from collections import Counter

from coincidence.matgroup import MatGroup
from coincidence.modmat import Mat2
from coincidence.padic import PAdicImage, check_ratio_sequence, detect_vertical_coincidences, index_profile


def random_image(rng: random.Random, p: int, depth: int, ngens: int) -> PAdicImage:
    n = p**depth
    gens = []
    while len(gens) < ngens:
        g = Mat2(n, tuple(rng.randrange(n) for _ in range(4)))
        if g.is_invertible():
            gens.append(g)
    return PAdicImage(p, depth, MatGroup(n, gens))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--gens", type=int, default=2)
    ap.add_argument("--seed", type=int, default=20240521)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    kmax = args.depth + 2
    shapes: Counter = Counter()
    levels: Counter = Counter()
    failures = 0
    for _ in range(args.count):
        X = random_image(rng, args.p, args.depth, args.gens)
        prof = index_profile(X, kmax)
        shapes[prof.u] += 1
        for k in detect_vertical_coincidences(X, kmax):
            levels[k] += 1
        failures += not check_ratio_sequence(args.p, prof.u).passed
    print(f"p = {args.p}, depth {args.depth}, {args.count} images, ratio-check failures: {failures}")
    print("coincidences by level:", dict(sorted(levels.items())) or "none")
    print("most common u sequences:")
    for u, c in shapes.most_common(10):
        print(f"  {c:>5}  {u}")


if __name__ == "__main__":
    main()
