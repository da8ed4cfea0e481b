"""Explicit colour-preserving automorphisms of complete Cayley graphs.

``predict_stabilizer`` materializes the full list of identity-fixing
colour-preserving automorphisms of K_G from the group structure alone, so
it can be compared map-for-map with the brute-force search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Union

from .cayley import complete_cayley
from .colour_aut import COLOUR_PRESERVING, is_colour_preserving
from .groups import (
    AutomorphismSet,
    DicyclicWitness,
    FiniteGroup,
    GroupMap,
    Ham2Decomposition,
    check_cap,
    decompose_hamiltonian_2group,
    is_automorphism,
    is_dicyclic_type,
    is_valid_dicyclic,
    is_valid_ham2,
)

TRIVIAL = "trivial"
ABELIAN_INVERSION = "abelian-inversion"
DICYCLIC_FLIP = "dicyclic-flip"
HAMILTONIAN = "hamiltonian-2-group"

EXPECTED_SIZE = {TRIVIAL: 1, ABELIAN_INVERSION: 2, DICYCLIC_FLIP: 2, HAMILTONIAN: 8}

SYMBOLS = ("i", "j", "k")


def iota_map(G: FiniteGroup) -> GroupMap:
    return GroupMap.inversion(G)


def dicyclic_flip(G: FiniteGroup, w: DicyclicWitness) -> GroupMap:
    """q^e a -> q^-e a for e in {0, 1}, a in A."""
    if not is_valid_dicyclic(G, w):
        raise ValueError("invalid dicyclic witness")
    image = [None] * G.order
    q_inv = G.inv[w.q]
    for a in w.A:
        image[a] = a
        image[G.mul[w.q][a]] = G.mul[q_inv][a]
    phi = GroupMap(G, tuple(image))
    assert is_automorphism(phi), "dicyclic flip is not a group automorphism"
    assert all(image[g] in (g, G.inv[g]) for g in G.elements)
    return phi


def phi_I(G: FiniteGroup, d: Ham2Decomposition, I) -> GroupMap:
    """The colour-preserving map of K_G fixing exactly the symbols in I among i, j, k."""
    if not is_valid_ham2(G, d):
        raise ValueError("invalid hamiltonian 2-group decomposition")
    I = frozenset(I)
    if not I <= set(SYMBOLS):
        raise ValueError(f"I must be a subset of {SYMBOLS}")
    elem = {"i": d.i, "j": d.j, "k": d.k}
    if len(I) == 3:
        phi = GroupMap.identity(G)
    elif len(I) == 1:
        (ell,) = I
        phi = GroupMap.conjugation(G, elem[ell])
    elif len(I) == 0:
        phi = iota_map(G)
    else:
        (ell,) = set(SYMBOLS) - I
        phi = GroupMap.conjugation(G, elem[ell]) @ iota_map(G)

    assert phi.image[G.identity] == G.identity
    for sym in SYMBOLS:
        assert (phi.image[elem[sym]] == elem[sym]) == (sym in I), f"phi_I fixes {sym} wrongly"
    assert is_automorphism(phi) == (len(I) % 2 == 1), "automorphism parity is off"
    assert is_colour_preserving(complete_cayley(G), phi)
    return phi


def all_phi_I(G: FiniteGroup, d: Ham2Decomposition) -> dict:
    subsets = [frozenset(c) for r in range(4) for c in combinations(SYMBOLS, r)]
    return {I: phi_I(G, d, I) for I in subsets}


def fixed_set(phi: GroupMap) -> frozenset:
    return phi.fixed_points()


@dataclass(frozen=True)
class CompleteClassification:
    kind: str
    witness: Optional[Union[DicyclicWitness, Ham2Decomposition]]
    predicted_stabilizer: AutomorphismSet

    def to_json(self, group: FiniteGroup) -> dict:
        verdict = complete_cca_verdict(group)
        return {
            "group": group.name,
            "kind": self.kind,
            "stabilizer_size": len(self.predicted_stabilizer),
            "cca": verdict["cca"],
            "strongly_cca": verdict["strongly_cca"],
        }


def predict_stabilizer(G: FiniteGroup, cap: Optional[int] = None) -> CompleteClassification:
    check_cap(G.order, cap)
    ident = GroupMap.identity(G)

    def result(kind, witness, maps):
        stab = AutomorphismSet(tuple(maps), mode=COLOUR_PRESERVING, stabilized=True)
        assert len(stab) == EXPECTED_SIZE[kind], f"{kind} predicts {len(stab)} maps"
        return CompleteClassification(kind, witness, stab)

    ham = decompose_hamiltonian_2group(G)
    if ham is not None:
        return result(HAMILTONIAN, ham, all_phi_I(G, ham).values())
    if G.is_abelian():
        if any(G.mul[g][g] != G.identity for g in G.elements):
            return result(ABELIAN_INVERSION, None, [ident, iota_map(G)])
        return result(TRIVIAL, None, [ident])
    w = is_dicyclic_type(G)
    if w is not None:
        return result(DICYCLIC_FLIP, w, [ident, dicyclic_flip(G, w)])
    return result(TRIVIAL, None, [ident])


def complete_cca_verdict(G: FiniteGroup) -> dict:
    ok = decompose_hamiltonian_2group(G) is None
    return {"cca": ok, "strongly_cca": ok}
