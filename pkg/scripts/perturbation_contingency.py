"""Perturb one structure constant at a time and tabulate which identity scans notice."""

import argparse
import random

from moufang import malcev as mc
from moufang.octonion import derive_structure_constants


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-den", type=int, default=4)
    args = ap.parse_args()

    C = derive_structure_constants()
    rng = random.Random(f"{args.seed}:perturb")
    table = {}
    print(f"{'entry C^i_jk':>14} {'delta':>6}  maltsev  sagle-yamaguti")
    for _ in range(args.count):
        P, (i, j, k, delta) = mc.perturb(C, rng, max_den=args.max_den)
        m = mc.maltsev_scan(P, polarized=True) is not None
        s = mc.sagle_yamaguti_scan(P) is not None
        table[m, s] = table.get((m, s), 0) + 1
        print(f"{f'({i},{j},{k})':>14} {delta:>6}  {'fail' if m else 'pass':<7}  {'fail' if s else 'pass'}")
    print("\ncontingency (maltsev fails, sy fails):")
    for m in (True, False):
        print("  " + "  ".join(f"{str(m):>5}/{str(s):<5}: {table.get((m, s), 0):>3}" for s in (True, False)))


if __name__ == "__main__":
    main()
