"""Run the recursion step by step and compare every class against a sieve.

    python3 scripts/oracle_sweep.py --max-step 6 --mode all
"""

import argparse
import time

from primerec import oracle
from primerec.recursion import advance, initial_state
from primerec.residue_classes import ResidueClass, value_of

CLASSES = (ResidueClass.OMINUS, ResidueClass.OPLUS)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-step", type=int, default=5)
    ap.add_argument("--mode", choices=("primes", "all"), default="primes")
    ap.add_argument("--merge-cap", type=int, default=1000)
    args = ap.parse_args()

    state = initial_state(merge_cap=args.merge_cap)
    print("step  r-      r+      primes-  primes+  sets-  sets+  seconds  sieve")
    elapsed = 0.0
    for s in range(args.max_step + 1):
        if s:
            t0 = time.perf_counter()
            state = advance(state, mode=args.mode, merge_cap=args.merge_cap)
            elapsed = time.perf_counter() - t0
        top = max(value_of(cls, state.bound(cls)) for cls in CLASSES)
        table = oracle.sieve(top)
        ok = all(list(state.primes(cls)) == oracle.gamma_primes(cls, state.bound(cls), table) for cls in CLASSES)
        sets = [len(state.pieces(cls)[-1].sets) for cls in CLASSES]
        print(f"{s:<5} {state.bounds.r_minus:<7} {state.bounds.r_plus:<7} {len(state.primes_minus):<8} "
              f"{len(state.primes_plus):<8} {sets[0]:<6} {sets[1]:<6} {elapsed:<8.3f} {'ok' if ok else 'MISMATCH'}")


if __name__ == "__main__":
    main()
