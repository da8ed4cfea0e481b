"""Colour-preserving and colour-permuting automorphisms of Cayley graphs.

The stabilizer searches assign vertex images along a breadth-first order
from the identity and check every edge (and non-edge) against the
already-assigned vertices, so partial maps die as soon as they break the
mode's constraint.  In colour-permuting mode the induced permutation of
colour classes is grown alongside the vertex map.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .cayley import CayleyGraph, is_connected
from .groups import (
    AutomorphismSet,
    GroupMap,
    check_cap,
    is_automorphism,
    subgroup_generated,
)

COLOUR_PRESERVING = "colour-preserving"
COLOUR_PERMUTING = "colour-permuting"
ALL_AUTOMORPHISMS = "all-graph-automorphisms"
MODES = (COLOUR_PRESERVING, COLOUR_PERMUTING, ALL_AUTOMORPHISMS)


def _check_bijection(X: CayleyGraph, phi: GroupMap) -> None:
    if len(phi.image) != X.order:
        raise ValueError("map and graph live on different groups")


def is_colour_preserving(X: CayleyGraph, phi: GroupMap) -> bool:
    _check_bijection(X, phi)
    G, f, col = X.group, phi.image, X.colour_of
    mul, inv = G.mul, G.inv
    for g in G.elements:
        row = mul[g]
        fg_inv = inv[f[g]]
        for s in X.S:
            if col[mul[fg_inv][f[row[s]]]] != col[s]:
                return False
    return True


def is_colour_permuting(X: CayleyGraph, phi: GroupMap) -> Optional[tuple]:
    """The induced permutation of colour ids, or None if phi does not permute colours.

    The permutation is read off the star of the identity and then checked
    on every edge.
    """
    _check_bijection(X, phi)
    G, f, col = X.group, phi.image, X.colour_of
    mul, inv = G.mul, G.inv
    f1_inv = inv[f[0]]
    pibar = [-1] * len(X.colours)
    for c in X.colours:
        d = col[mul[f1_inv][f[c.pair[0]]]]
        if d < 0 or len(X.colours[d]) != len(c):
            return None
        pibar[c.id] = d
    if len(set(pibar)) != len(pibar):
        return None
    for g in G.elements:
        row = mul[g]
        fg_inv = inv[f[g]]
        for s in X.S:
            if col[mul[fg_inv][f[row[s]]]] != pibar[col[s]]:
                return None
    return tuple(pibar)


def is_graph_automorphism(X: CayleyGraph, phi: GroupMap) -> bool:
    _check_bijection(X, phi)
    G, f, col = X.group, phi.image, X.colour_of
    mul, inv = G.mul, G.inv
    for g in G.elements:
        fg_inv = inv[f[g]]
        for s in X.S:
            if col[mul[fg_inv][f[mul[g][s]]]] < 0:
                return False
    return True


def satisfies_mode(X: CayleyGraph, phi: GroupMap, mode: str) -> bool:
    if mode == COLOUR_PRESERVING:
        return is_colour_preserving(X, phi)
    if mode == COLOUR_PERMUTING:
        return is_colour_permuting(X, phi) is not None
    if mode == ALL_AUTOMORPHISMS:
        return is_graph_automorphism(X, phi)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class LocalPermutation:
    """How a colour-permuting map acts on S at one vertex: phi(g s) = phi(g) perm[s]."""

    base: int
    perm: dict = field(hash=False)

    def as_tuple(self) -> tuple:
        return tuple(sorted(self.perm.items()))


def local_permutation(X: CayleyGraph, phi: GroupMap, g: int) -> LocalPermutation:
    if is_colour_permuting(X, phi) is None:
        raise ValueError("map is not colour-permuting")
    G, f = X.group, phi.image
    fg_inv = G.inv[f[g]]
    perm = {s: G.mul[fg_inv][f[G.mul[g][s]]] for s in sorted(X.S)}
    return LocalPermutation(g, perm)


# ---------------------------------------------------------------------------
# stabilizer search


def search_order(X: CayleyGraph) -> tuple:
    """Vertices in BFS order from the identity; returns (order, parent)."""
    G = X.group
    star = sorted(X.S, key=lambda s: (X.colour_of[s], s))
    parent = [None] * G.order
    seen = [False] * G.order
    order = []
    for root in G.elements:
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            g = queue.popleft()
            order.append(g)
            for s in star:
                h = G.mul[g][s]
                if not seen[h]:
                    seen[h] = True
                    parent[h] = g
                    queue.append(h)
    return order, parent


def iter_stabilizer(X: CayleyGraph, mode: str) -> Iterator[GroupMap]:
    """Yield every automorphism of the given kind that fixes the identity."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    G = X.group
    n = G.order
    mul, inv, col = G.mul, G.inv, X.colour_of
    classes = [c.members for c in X.colours]
    sizes = [len(c) for c in classes]
    ncol = len(classes)
    S_sorted = sorted(X.S)
    order, parent = search_order(X)

    img = [-1] * n
    used = [False] * n
    if mode == COLOUR_PRESERVING:
        pibar = list(range(ncol))
    else:
        pibar = [-1] * ncol
    pibar_used = [False] * ncol

    def candidates(v):
        p = parent[v]
        if p is None:
            if v == G.identity:
                return [G.identity]
            return [w for w in range(n) if not used[w]]
        c = col[mul[inv[p]][v]]
        fp = mul[img[p]]
        if mode == ALL_AUTOMORPHISMS:
            return [fp[t] for t in S_sorted]
        d = pibar[c]
        if d >= 0:
            return [fp[t] for t in classes[d]]
        return [
            fp[t]
            for t in S_sorted
            if not pibar_used[col[t]] and sizes[col[t]] == sizes[c]
        ]

    def try_assign(pos, v, w, trail):
        """Check w as the image of v against assigned vertices; extend pibar on the way."""
        inv_v = inv[v]
        for u in order[:pos]:
            x = mul[inv_v][u]
            cx = col[x]
            cd = col[mul[inv[w]][img[u]]]
            if mode == ALL_AUTOMORPHISMS:
                if (cx < 0) != (cd < 0):
                    return False
            elif cx < 0:
                if cd >= 0:
                    return False
            elif cd < 0:
                return False
            else:
                d = pibar[cx]
                if d < 0:
                    if pibar_used[cd] or sizes[cd] != sizes[cx]:
                        return False
                    pibar[cx] = cd
                    pibar_used[cd] = True
                    trail.append(cx)
                elif d != cd:
                    return False
        return True

    def undo(trail):
        for c in trail:
            pibar_used[pibar[c]] = False
            pibar[c] = -1

    def rec(pos):
        if pos == n:
            yield GroupMap(G, tuple(img))
            return
        v = order[pos]
        for w in candidates(v):
            if used[w]:
                continue
            trail: list = []
            if try_assign(pos, v, w, trail):
                img[v] = w
                used[w] = True
                yield from rec(pos + 1)
                used[w] = False
                img[v] = -1
            undo(trail)

    yield from rec(0)


def enumerate_stabilizer(X: CayleyGraph, mode: str, cap: Optional[int] = None) -> AutomorphismSet:
    check_cap(X.order, cap)
    return AutomorphismSet(tuple(iter_stabilizer(X, mode)), mode=mode, stabilized=True, graph=X)


def full_group(stabilizer: AutomorphismSet) -> AutomorphismSet:
    """All translates L_g o phi of a stabilizer (the whole automorphism group)."""
    X = stabilizer.graph
    G = X.group
    maps = [GroupMap.translation(G, g) @ phi for g in G.elements for phi in stabilizer]
    return AutomorphismSet(tuple(maps), mode=stabilizer.mode, stabilized=False, graph=X)


# ---------------------------------------------------------------------------
# stabilizer machinery: local permutations, conjugates, S*


def make_colour_preserving_conjugate(X: CayleyGraph, phi: GroupMap, g: int, s: int) -> GroupMap:
    """psi = L_g^-1 phi^-1 L_phi(g) L_phi(gs)^-1 phi L_gs, which fixes 1 and s."""
    G = X.group
    if phi.image[G.identity] != G.identity:
        raise ValueError("phi must fix the identity")
    if s not in X.S:
        raise ValueError("s must lie in the connection set")
    if is_colour_permuting(X, phi) is None:
        raise ValueError("phi must be colour-permuting")
    mul, inv, f = G.mul, G.inv, phi.image
    f_inv = phi.inverse().image
    gs = mul[g][s]
    shift = mul[f[g]][inv[f[gs]]]
    g_inv = inv[g]
    psi = GroupMap(G, tuple(mul[g_inv][f_inv[mul[shift][f[mul[gs][x]]]]] for x in G.elements))
    assert psi.image[G.identity] == G.identity, "conjugate does not fix the identity"
    assert psi.image[s] == s, "conjugate does not fix s"
    assert is_colour_preserving(X, psi), "conjugate is not colour-preserving"
    return psi


def star_set(X: CayleyGraph, stabilizer: Optional[AutomorphismSet] = None) -> frozenset:
    """Elements of S moved by every nontrivial colour-preserving stabilizer element."""
    if stabilizer is None:
        stabilizer = enumerate_stabilizer(X, COLOUR_PRESERVING)
    fixed = set()
    for phi in stabilizer:
        if not phi.is_identity():
            fixed |= phi.fixed_points()
    return frozenset(s for s in X.S if s not in fixed)


def is_semiregular_on_S(X: CayleyGraph, stabilizer: Optional[AutomorphismSet] = None) -> bool:
    return star_set(X, stabilizer) == X.S


def involution_subgroup(X: CayleyGraph) -> tuple:
    """(H, S2): the involutions S2 of S and the subgroup they generate."""
    G = X.group
    S2 = frozenset(s for s in X.S if G.mul[s][s] == G.identity)
    return subgroup_generated(G, S2), S2


@dataclass
class CCAStatus:
    cca: bool
    strongly_cca: bool
    normal: Optional[bool]
    # identity-fixing maps that are not group automorphisms, per mode
    witnesses: dict

    def to_json(self) -> dict:
        return {
            "cca": self.cca,
            "strongly_cca": self.strongly_cca,
            "normal": self.normal,
            "witnesses": {k: [list(m.image) for m in v] for k, v in self.witnesses.items()},
        }


def first_non_affine(X: CayleyGraph, mode: str) -> Optional[GroupMap]:
    # identity-fixing maps are affine exactly when they are group automorphisms
    for phi in iter_stabilizer(X, mode):
        if not is_automorphism(phi):
            return phi
    return None


def cca_status(X: CayleyGraph, check_normal: bool = True, cap: Optional[int] = None) -> CCAStatus:
    """CCA / strongly CCA / normal verdicts for one graph.

    Uses normal => strongly CCA => CCA to skip searches: a colour-preserving
    witness is also a colour-permuting one, and so on.  All non-affine
    colour-preserving stabilizer elements are reported; the larger searches
    stop at their first witness.
    """
    check_cap(X.order, cap)
    stab = enumerate_stabilizer(X, COLOUR_PRESERVING)
    bad = [phi for phi in stab if not is_automorphism(phi)]
    witnesses = {COLOUR_PRESERVING: bad}
    if bad:
        witnesses[COLOUR_PERMUTING] = bad[:1]
        return CCAStatus(False, False, False if check_normal else None, witnesses)
    w = first_non_affine(X, COLOUR_PERMUTING)
    witnesses[COLOUR_PERMUTING] = [w] if w else []
    if w is not None:
        return CCAStatus(True, False, False if check_normal else None, witnesses)
    if not check_normal:
        return CCAStatus(True, True, None, witnesses)
    w = first_non_affine(X, ALL_AUTOMORPHISMS)
    witnesses[ALL_AUTOMORPHISMS] = [w] if w else []
    return CCAStatus(True, True, w is None, witnesses)


def is_normal_graph(X: CayleyGraph) -> bool:
    return first_non_affine(X, ALL_AUTOMORPHISMS) is None


def strongly_cca_sufficient(X: CayleyGraph, stabilizer: Optional[AutomorphismSet] = None) -> dict:
    """The three sufficient conditions for strong CCA that need only the colour-preserving stabilizer."""
    if stabilizer is None:
        stabilizer = enumerate_stabilizer(X, COLOUR_PRESERVING)
    G = X.group
    star = star_set(X, stabilizer)
    return {
        "star_generates": len(subgroup_generated(G, star)) == G.order,
        "semiregular_connected": is_connected(X) and star == X.S,
        "trivial_stabilizer": len(stabilizer) == 1,
    }
