"""Print the first composite gamma-values of each generator for a = 1, 2, 3 and check them by factor."""

import argparse

from primerec.cli import TABLE1_ROWS
from primerec.composite_generators import composite_family
from primerec.residue_classes import value_of


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alphas", type=int, default=3)
    ap.add_argument("--count", type=int, default=3)
    args = ap.parse_args()

    for label, kind in TABLE1_ROWS:
        for a in range(1, args.alphas + 1):
            fam = composite_family(kind, a)
            gammas = [fam.first + k * fam.modulus for k in range(args.count)]
            values = [value_of(kind.target, g) for g in gammas]
            assert all(v % fam.factor() == 0 for v in values)
            shown = ", ".join(f"{g} ({v} = {fam.factor()}*{v // fam.factor()})" for g, v in zip(gammas, values))
            print(f"{label:6} a={a}: {shown}")


if __name__ == "__main__":
    main()
