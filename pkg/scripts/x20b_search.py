"""Search small-height rational points of the genus-0 curve X_20b for given j-invariants.

By default the targets are the thirteen rational CM j-invariants.
"""

from __future__ import annotations

import argparse
import time

from coincidence.xmodular import cm_j_invariants, parse_rational, search_preimages


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--height", type=int, default=30)
    ap.add_argument("--targets", nargs="*", help="j-values as a/b; default: rational CM j-invariants")
    args = ap.parse_args(argv)

    targets = [parse_rational(t) for t in args.targets] if args.targets else cm_j_invariants()
    start = time.perf_counter()
    found = search_preimages(targets, args.height)
    took = time.perf_counter() - start
    for j, ts in found.items():
        print(f"j = {j}: {', '.join(map(str, ts)) if ts else 'no parameter'}")
    print(f"height <= {args.height}, {took:.2f}s")


if __name__ == "__main__":
    main()
