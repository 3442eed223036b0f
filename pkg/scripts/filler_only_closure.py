"""Close the (6,3) seed under filler rows only, and show what breaks.

Two rows are added by hand, the ones a filler-only pass produces.  The
relation then fails four determinacy conditions; witnesses are printed
with the operator words that name their maps.
"""
from composer_kit.delta import MonotoneMap, standard_form
from composer_kit.modelgen import check_conditions, required_conditions

ROWS = [(0, 1, 2, 3, 4, 5, 6), (0, 7, 2, 3, 8, 5, 6), (0, 9, 2, 10, 4, 5, 6),
        (0, 7, 2, 3, 4, 5, 6), (0, 1, 2, 3, 8, 5, 6)]


def word(g):
    faces, degens = standard_form(MonotoneMap(g, 7))
    # operators act on simplices, so the map's factors appear reversed
    parts = [f"s_{j}" for j in reversed(degens)] + [f"d_{j}" for j in sorted(faces)]
    return "".join(parts) or "id"


def main():
    fails = check_conditions(ROWS, required_conditions(6, 3))
    for cond, bad in sorted(fails.items(), key=lambda kv: (-len(kv[1]), kv[0])):
        if not bad:
            continue
        degenerate = sum(d for _, d in bad)
        print(f"{cond}: {len(bad)} failing images, {degenerate} degenerate")
        for g, d in bad:
            print(f"    {word(g):<14} {g}{'  (degenerate)' if d else ''}")


if __name__ == "__main__":
    main()
