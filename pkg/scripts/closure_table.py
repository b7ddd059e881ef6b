"""Regular-closure verdicts for every corpus category against a few shape classes."""
import argparse
import time

from regulus.completion import Bounds, regular_closure_member
from regulus.corpus import corpus_files, load_corpus_file
from regulus.fincat import discrete, idem, span, terminal_category
from regulus.recipe import ShapeClass

CLASSES = {
    "point": ShapeClass((terminal_category(),)),
    "binary": ShapeClass((discrete(2),)),
    "idempotents": ShapeClass((idem(),)),
    "span+pair": ShapeClass((span(), discrete(2))),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-stage", type=int, default=3)
    ap.add_argument("--max-diagrams", type=int, default=10000)
    args = ap.parse_args()
    bounds = Bounds(max_stage=args.max_stage, max_diagrams=args.max_diagrams)
    print(f"{'category':<22}" + "".join(f"{c:>16}" for c in CLASSES) + f"{'seconds':>10}")
    for f in corpus_files():
        for name, C in load_corpus_file(f).categories.items():
            start = time.perf_counter()
            cells = []
            for F in CLASSES.values():
                v = regular_closure_member(C, F, bounds)
                depth = f"@{v.certificate.depth()}" if v.certificate else ""
                cells.append(v.status.value + depth)
            row = f"{f[:-4] + ':' + name:<22}" + "".join(f"{c:>16}" for c in cells)
            print(row + f"{time.perf_counter() - start:>10.2f}")


if __name__ == "__main__":
    main()
