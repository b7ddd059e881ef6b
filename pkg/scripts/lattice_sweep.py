"""Colimit preservation by monotone lattice maps: direct check against the path criterion."""
import argparse
import itertools
from collections import Counter

from regulus.cofinality import path_criterion_check, preserves_colimits_direct
from regulus.fincat import chain, diamond, discrete, empty_category, monotone_map, parallel_pair, product, span, \
    terminal_category

LATTICES = {"C2": chain(2), "C3": chain(3), "Dm": diamond(), "C2xC2": product(chain(2), chain(2))[0]}
SHAPES = {"E": empty_category(), "Pt": terminal_category(), "D2": discrete(2), "P": parallel_pair(), "S": span()}


def monotone(P, Q):
    for img in itertools.product(Q.objects, repeat=P.n_objects):
        if all(Q.hom(img[P.src[m]], img[P.tgt[m]]) for m in range(P.n_morphisms)):
            yield monotone_map(P, Q, img)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--source", choices=sorted(LATTICES), nargs="*", default=["C2", "Dm"])
    ap.add_argument("--target", choices=sorted(LATTICES), nargs="*", default=["C2", "C3", "Dm"])
    args = ap.parse_args()
    tally = Counter()
    for s in args.source:
        for t in args.target:
            for f in monotone(LATTICES[s], LATTICES[t]):
                for name, J in SHAPES.items():
                    v, agree = path_criterion_check(f, J)
                    d = preserves_colimits_direct(f, J)
                    tally[name, d.status.value, v.status.value, agree] += 1
    print(f"{'shape':<6}{'direct':<12}{'path':<12}{'agree':<7}count")
    for (name, d, v, a), n in sorted(tally.items()):
        print(f"{name:<6}{d:<12}{v:<12}{str(a):<7}{n}")


if __name__ == "__main__":
    main()
