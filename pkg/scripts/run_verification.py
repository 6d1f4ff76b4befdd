#!/usr/bin/env python3
"""Run every structural verification over a range of sizes and print a table.

Example:

    python3 scripts/run_verification.py --max-n 3 --window 4
"""

import argparse
import time

from pianocat.dissections import (
    dissection_from_generator,
    enumerate_extended_dissections,
    generator_from_dissection,
)
from pianocat.endo import verify_path_algebra_iso
from pianocat.generators import enumerate_limit_generators
from pianocat.geometry import Arc
from pianocat.signs import (
    both_signed_matrices,
    check_beta_delta,
    order_for_cone_blocks,
    verify_phi_homomorphism,
)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=3)
    parser.add_argument("--window", type=int, default=4)
    args = parser.parse_args()

    print(f"{'n':>2} {'generators':>10} {'bijection':>9} {'path-iso':>8} "
          f"{'beta-delta':>10} {'phi':>5} {'seconds':>8}")
    for n in range(1, args.max_n + 1):
        t0 = time.time()
        gens = enumerate_limit_generators(n)
        diss = enumerate_extended_dissections(n)
        bij = len(gens) == len(diss) and all(
            tuple(
                sorted(
                    generator_from_dissection(dissection_from_generator(list(g), n)),
                    key=Arc.sort_key,
                )
            )
            == g.arcs
            for g in gens
        )
        iso = all(
            verify_path_algebra_iso(list(g), n, window=args.window).passed for g in gens
        )
        bd = phi = True
        for g in gens:
            ordered = order_for_cone_blocks(list(g))
            for m in both_signed_matrices(ordered):
                bd &= check_beta_delta(m, ordered).passed
                phi &= verify_phi_homomorphism(
                    ordered, m, window=min(args.window, 4)
                ).passed
        print(
            f"{n:>2} {len(gens):>10} {str(bij):>9} {str(iso):>8} "
            f"{str(bd):>10} {str(phi):>5} {time.time() - t0:>8.1f}"
        )


if __name__ == "__main__":
    main()
