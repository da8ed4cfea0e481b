"""Look for a normal Cayley graph of each catalog group.

A graph is normal when every graph automorphism is affine.  Connection sets
are tried smallest first, so the reported set is a smallest witness.

    python scripts/normal_search.py --max-order 16
"""

import argparse
import time

from ccakit.catalog import catalog_groups, connection_sets
from ccakit.cayley import build_cayley
from ccakit.colour_aut import is_normal_graph


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=16)
    args = ap.parse_args()

    for G in catalog_groups(args.max_order):
        t = time.perf_counter()
        sets = sorted(connection_sets(G), key=lambda S: (len(S), sorted(S)))
        hit = next((S for S in sets if is_normal_graph(build_cayley(G, S))), None)
        found = f"S={sorted(hit)}" if hit is not None else "none"
        print(f"{G.name:9} sets={len(sets):4} normal: {found:24} {time.perf_counter() - t:.2f}s")


if __name__ == "__main__":
    main()
