"""Scan every connected Cayley graph of D12 and tally CCA / strongly CCA.

    python scripts/d12_scan.py [--list]
"""

import argparse
import collections

from ccakit.catalog import catalog_group, connection_sets
from ccakit.cayley import build_cayley
from ccakit.colour_aut import cca_status


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--list", action="store_true", help="print each graph that is not strongly CCA")
    args = ap.parse_args()

    G = catalog_group("D12")
    tally = collections.Counter()
    for S in sorted(connection_sets(G), key=lambda S: (len(S), sorted(S))):
        st = cca_status(build_cayley(G, S), check_normal=False)
        tally[(st.cca, st.strongly_cca)] += 1
        if args.list and not st.strongly_cca:
            print("not strongly CCA:", sorted(S), [G.labels[s] for s in sorted(S)])
    print(f"{sum(tally.values())} connected Cayley graphs of D12")
    for (cca, strong), n in sorted(tally.items()):
        print(f"  cca={cca!s:5} strongly_cca={strong!s:5} count={n}")


if __name__ == "__main__":
    main()
