"""Compare the two membership routes over an exhaustive family of small categories."""
import argparse
import sys

from regulus.generate import FAMILY, coherence_sweep, enumerate_categories


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-objects", type=int, default=FAMILY["max_objects"])
    ap.add_argument("--max-morphisms", type=int, default=FAMILY["max_morphisms"])
    ap.add_argument("--max-endo", type=int, default=FAMILY["max_endo"],
                    help="cap on endomorphism monoid sizes (0 for none)")
    args = ap.parse_args()
    cats = enumerate_categories(args.max_objects, args.max_morphisms, args.max_endo or None)

    def progress(rep):
        if rep.categories % 250 == 0:
            print(f"  {rep.categories} categories, {len(rep.contradictions)} contradictions", file=sys.stderr)

    rep = coherence_sweep(cats, progress)
    print(f"categories {rep.categories}, comparisons {rep.comparisons}, seconds {rep.seconds:.1f}")
    for (name, a, b), n in sorted(rep.tally.items()):
        print(f"  {name:<12} search={a:<10} elements={b:<10} {n}")
    for C, X, name, a, b in rep.contradictions:
        print(f"CONTRADICTION {name}: {a} vs {b} on {C} with sizes {X.sizes}")
    return 1 if rep.contradictions else 0


if __name__ == "__main__":
    sys.exit(main())
