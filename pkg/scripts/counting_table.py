"""Simplex counts for the complex generated by one n-simplex.

Prints the closed form next to a direct generation of the complex for
small n.  Generation grows quickly; n = 6 takes a few seconds.
"""
import argparse
import math
import time

from composer_kit.scomplex import Relation, minimal_simplex
from composer_kit.verify import generate_complex, simplex_count


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--generate-up-to", type=int, default=6)
    args = ap.parse_args()

    print(f"{'n':>2} {'formula':>8} {'binomial':>9} {'generated':>10} {'nondeg':>7} {'secs':>6}")
    for n in range(1, args.max_n + 1):
        gen, nondeg, secs = "-", "-", ""
        if n <= args.generate_up_to:
            t0 = time.perf_counter()
            C = generate_complex(minimal_simplex(Relation.from_rows([tuple(range(n + 1))])))
            gen, nondeg = C.total(), C.nondegenerate_count()
            secs = f"{time.perf_counter() - t0:.2f}"
        print(f"{n:>2} {simplex_count(n):>8} {math.comb(2 * n + 2, n + 1) - 1:>9} "
              f"{gen:>10} {nondeg:>7} {secs:>6}")


if __name__ == "__main__":
    main()
