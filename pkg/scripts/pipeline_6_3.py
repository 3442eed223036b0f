"""Enlarge the (6,3) seed, then verify the result as a truncated composer.

    python3 scripts/pipeline_6_3.py [--anchor 0|1|2] [--jobs N]
"""
import argparse
import time

from composer_kit.modelgen import enlarge_with_trace, required_conditions
from composer_kit.scomplex import Relation, minimal_simplex
from composer_kit.verify import check_truncated_composer, generate_complex, relation_complex

SEED = [(0, 1, 2, 3, 4, 5, 6), (0, 7, 2, 3, 8, 5, 6), (0, 9, 2, 10, 4, 5, 6)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--anchor", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    t0 = time.perf_counter()
    conds = required_conditions(6, 3)
    print("conditions:", ", ".join(conds.strings()))
    res = enlarge_with_trace(Relation.from_rows(SEED), SEED[args.anchor], conds)
    for row, cond, img, _ in res.added:
        print(f"  + {row}  ({cond} on image {img})")
    R = res.relation
    print(f"{len(SEED)} -> {len(R)} rows")
    for r in R:
        print("  ", r)

    S = generate_complex(minimal_simplex(R))
    print(f"generated complex: {S.total()} simplices, {S.nondegenerate_count()} non-degenerate")

    rep = check_truncated_composer(relation_complex(R, 7), 6, 3, depth=1, jobs=args.jobs)
    for r in rep["records"]:
        name = r["check"] + (" " + r["condition"] if "condition" in r else "")
        print(f"  {r['status']:<4} {name:<18} dim {r['dimension']}  {r['counts']}")
    print(f"verdict: {rep['status']}  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
