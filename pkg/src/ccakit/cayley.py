"""Cayley graphs with the canonical {s, s^-1} edge colouring."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .groups import FiniteGroup, subgroup_generated


class CayleyError(ValueError):
    pass


@dataclass(frozen=True)
class ColourClass:
    pair: tuple
    id: int

    @property
    def members(self) -> tuple:
        return self.pair[:1] if self.pair[0] == self.pair[1] else self.pair

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True, eq=False)
class CayleyGraph:
    group: FiniteGroup
    S: frozenset
    colours: tuple
    # colour_of[x] is the colour id of x if x in S, else -1
    colour_of: tuple = field(repr=False)

    @property
    def order(self) -> int:
        return self.group.order

    def __repr__(self):
        return f"CayleyGraph({self.group.name}, |S|={len(self.S)}, colours={len(self.colours)})"

    def is_edge(self, g: int, h: int) -> bool:
        G = self.group
        return self.colour_of[G.mul[G.inv[g]][h]] >= 0

    def edge_colour(self, g: int, h: int) -> int:
        """Colour id of the edge {g, h}, or -1 if there is no edge."""
        G = self.group
        return self.colour_of[G.mul[G.inv[g]][h]]

    def neighbours(self, g: int) -> list:
        return sorted(self.group.mul[g][s] for s in self.S)

    def edges(self) -> Iterator[tuple]:
        """Each edge once as ``(g, h, colour)`` with g < h, sorted."""
        for g in self.group.elements:
            for h in self.neighbours(g):
                if g < h:
                    yield g, h, self.edge_colour(g, h)

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "S": sorted(self.S),
            "colours": [list(c.pair) for c in self.colours],
        }

    def to_dot(self) -> str:
        G = self.group
        lines = [f'graph "Cay({G.name})" {{']
        for g in G.elements:
            lines.append(f'  {g} [label="{g}: {G.labels[g]}"];')
        for g, h, c in self.edges():
            lines.append(f"  {g} -- {h} [colorclass={c}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def colour_classes(G: FiniteGroup, S: Iterable[int]) -> tuple:
    pairs = sorted({(min(s, G.inv[s]), max(s, G.inv[s])) for s in S})
    return tuple(ColourClass(p, k) for k, p in enumerate(pairs))


def build_cayley(G: FiniteGroup, S: Iterable[int]) -> CayleyGraph:
    S = frozenset(S)
    if any(not 0 <= s < G.order for s in S):
        raise CayleyError("connection set contains a non-element")
    if G.identity in S:
        raise CayleyError("connection set contains the identity")
    missing = sorted(s for s in S if G.inv[s] not in S)
    if missing:
        raise CayleyError(f"connection set is not inverse-closed (missing inverses of {missing})")
    colours = colour_classes(G, S)
    colour_of = [-1] * G.order
    for c in colours:
        for s in c.pair:
            colour_of[s] = c.id
    return CayleyGraph(G, S, colours, tuple(colour_of))


def complete_cayley(G: FiniteGroup) -> CayleyGraph:
    return build_cayley(G, set(G.elements) - {G.identity})


def is_connected(X: CayleyGraph) -> bool:
    return len(subgroup_generated(X.group, X.S)) == X.order


def bfs_reachable(X: CayleyGraph, start: int = 0) -> frozenset:
    seen = {start}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for h in X.neighbours(g):
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return frozenset(seen)


def dumps_json(X: CayleyGraph) -> str:
    return json.dumps(X.to_json(), sort_keys=True) + "\n"
