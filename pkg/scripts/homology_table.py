"""Nerve sizes, homology and contractibility of the corpus categories."""
import argparse

from regulus.corpus import corpus_files, load_corpus_file
from regulus.homotopy import homology, nerve, pi1_presentation, weak_contractibility
from regulus.errors import Disconnected


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=4)
    args = ap.parse_args()
    print(f"{'category':<22}{'simplices':<22}{'betti':<16}{'pi1':<12}status")
    for f in corpus_files():
        for name, C in load_corpus_file(f).categories.items():
            N = nerve(C, args.depth)
            H = homology(N)
            try:
                pi1 = pi1_presentation(C).status.value
            except Disconnected:
                pi1 = "-"
            status = weak_contractibility(C, args.depth).status.value
            tors = "" if not any(H.torsion) else f" torsion {H.torsion}"
            print(f"{f[:-4] + ':' + name:<22}{str(N.counts()):<22}{str(H.betti):<16}{pi1:<12}{status}{tors}")


if __name__ == "__main__":
    main()
