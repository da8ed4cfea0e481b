"""Built-in catalog of small groups covering every branch of the classification."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product

from .cayley import build_cayley, colour_classes
from .groups import FiniteGroup, build_group, subgroup_generated

CATALOG = (
    "Z2",
    "Z3",
    "Z4",
    "Z5",
    "Z6",
    "Z8",
    "Z2^2",
    "Z2^3",
    "Z4xZ2",
    "D6",
    "D8",
    "D12",
    "Q8",
    "Dic(Z8)",
    "Dic(Z6)",
    "Q8xZ2",
    "Q8xZ3",
    "Q8xZ2^2",
)

HAMILTONIAN_2_GROUPS = ("Q8", "Q8xZ2", "Q8xZ2^2")


@lru_cache(maxsize=None)
def catalog_group(spec: str) -> FiniteGroup:
    return build_group(spec)


def catalog_groups(max_order: int = 32) -> list:
    out = [catalog_group(s) for s in CATALOG]
    return [G for G in out if G.order <= max_order]


def connection_sets(G: FiniteGroup, connected: bool = True):
    """Every inverse-closed connection set (as a union of colour classes)."""
    classes = colour_classes(G, set(G.elements) - {G.identity})
    for bits in product((0, 1), repeat=len(classes)):
        S = frozenset(s for b, c in zip(bits, classes) if b for s in c.pair)
        if connected and len(subgroup_generated(G, S)) != G.order:
            continue
        yield S


def random_connected_graphs(G: FiniteGroup, count: int = 20, seed: int = 0) -> list:
    """Up to ``count`` distinct connected, non-complete Cayley graphs of G.

    Small groups have fewer than ``count`` such graphs; then all of them are
    returned.
    """
    rng = random.Random(f"{G.name}:{seed}")
    classes = colour_classes(G, set(G.elements) - {G.identity})
    full = frozenset(G.elements) - {G.identity}
    if len(classes) <= 12:
        pool = sorted(
            (S for S in connection_sets(G) if S != full), key=lambda S: sorted(S)
        )
        picked = pool if len(pool) <= count else rng.sample(pool, count)
    else:
        seen: set = set()
        picked = []
        attempts = 0
        while len(picked) < count and attempts < 200 * count:
            attempts += 1
            S = frozenset(s for c in classes if rng.random() < 0.5 for s in c.pair)
            if S == full or S in seen or len(subgroup_generated(G, S)) != G.order:
                continue
            seen.add(S)
            picked.append(S)
    return [build_cayley(G, S) for S in picked]
