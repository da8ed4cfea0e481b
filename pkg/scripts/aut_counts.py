"""Automorphism counts of the complete Cayley graph K_G over the catalog.

Columns: |Aut G|, identity-fixing colour-preserving maps, identity-fixing
colour-permuting maps, and the predicted kind.  The colour-permuting count
should equal |Aut G| times the colour-preserving count divided by their
overlap.

    python scripts/aut_counts.py [--max-order 32] [--json out.json]
"""

import argparse
import json
import time

from ccakit.catalog import catalog_groups
from ccakit.cayley import complete_cayley
from ccakit.classify import predict_stabilizer
from ccakit.colour_aut import COLOUR_PERMUTING, COLOUR_PRESERVING, enumerate_stabilizer
from ccakit.groups import enumerate_automorphisms


def row(G):
    X = complete_cayley(G)
    aut = enumerate_automorphisms(G)
    pres = enumerate_stabilizer(X, COLOUR_PRESERVING)
    perm = enumerate_stabilizer(X, COLOUR_PERMUTING)
    overlap = len(aut.images() & pres.images())
    return {
        "group": G.name,
        "order": G.order,
        "aut": len(aut),
        "preserving": len(pres),
        "permuting": len(perm),
        "product_formula": len(aut) * len(pres) // overlap,
        "kind": predict_stabilizer(G).kind,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=32)
    ap.add_argument("--json", help="also write the table here")
    args = ap.parse_args()

    rows = []
    print(f"{'group':9} {'n':>3} {'|Aut|':>6} {'pres':>5} {'perm':>6} {'Aut.pres':>8}  kind")
    for G in catalog_groups(args.max_order):
        t = time.perf_counter()
        r = row(G)
        rows.append(r)
        print(f"{r['group']:9} {r['order']:3} {r['aut']:6} {r['preserving']:5} {r['permuting']:6} "
              f"{r['product_formula']:8}  {r['kind']}  ({time.perf_counter() - t:.1f}s)")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
