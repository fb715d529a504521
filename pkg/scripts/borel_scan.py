"""Which T = (1,1;0,1) mod p^k have a lift of order p^k modulo p^(k+1)?

Only (p, k) = (2, 1) and (3, 1) should come out liftable.
"""

from __future__ import annotations

import argparse
import time

from coincidence.lifting import element_split_liftable
from coincidence.modmat import Mat2


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5, 7])
    ap.add_argument("--kmax", type=int, default=3)
    ap.add_argument("--max-fiber", type=int, default=2401, help="skip (p, k) whose fiber is larger")
    args = ap.parse_args(argv)

    print(f"{'p':>3} {'k':>2} {'fiber':>6} {'tried':>6}  status")
    for p in args.primes:
        for k in range(1, args.kmax + 1):
            if p**4 > args.max_fiber:
                continue
            start = time.perf_counter()
            res = element_split_liftable(Mat2(p**k, (1, 1, 0, 1)), p ** (k + 1))
            took = time.perf_counter() - start
            print(f"{p:>3} {k:>2} {p**4:>6} {res.search_count:>6}  {res.status.value}  ({took:.3f}s)")


if __name__ == "__main__":
    main()
