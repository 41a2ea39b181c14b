"""Where the width-a step estimate for the opposite-sign displacement disagrees with exact reduction.

Also counts, per modulus p_i, how often the product form fails to be congruent to
the extended-gcd particular solution on the same-sign coprime grid.
"""

import argparse
from collections import Counter

from primerec import oracle
from primerec.diophantine import (DiophantineProblem, SubcaseTag, classify_pair, congruent, product_beta_j,
                                  solve, step_function_flags)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha-max", type=int, default=10)
    ap.add_argument("--delta-max", type=int, default=60)
    ap.add_argument("--kappa", type=int, default=5)
    args = ap.parse_args()

    flags = step_function_flags(args.alpha_max, args.delta_max)
    print(f"step estimate differs from exact reduction at {len(flags)} points")
    by_alpha = Counter((a, s) for a, _, s, _, _ in flags)
    for (a, s), n in sorted(by_alpha.items()):
        print(f"  p_i = {6 * a + s:3d}: {n}")

    bad, total = Counter(), Counter()
    for s in (1, -1):
        for a in range(1, args.alpha_max + 1):
            p_i = 6 * a + s
            for d in range(2, p_i):
                for c in range(-args.kappa, args.kappa + 1):
                    prob = DiophantineProblem(a, a + d, s, s, c, 0)
                    if classify_pair(prob) is not SubcaseTag.COPRIME:
                        continue
                    total[p_i] += 1
                    if not congruent(product_beta_j(prob), solve(prob).beta_j_base, p_i):
                        bad[p_i] += 1
    print(f"product form not congruent at {sum(bad.values())}/{sum(total.values())} grid points")
    for p_i in sorted(total):
        kind = "prime" if oracle.trial_division(p_i) else "composite"
        print(f"  p_i = {p_i:3d} ({kind:9}): {bad[p_i]}/{total[p_i]}")


if __name__ == "__main__":
    main()
