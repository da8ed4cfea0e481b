"""Factor colour-permuting automorphisms of K_G as (group automorphism) o (colour-preserving map).

For groups that are not hamiltonian 2-groups the identity-normalized map is
already a group automorphism.  For G = Q8 x B the automorphism is rebuilt
from the images of i, j and of B, following the construction step by step;
every intermediate claim is checked and a failure names the step.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cayley import complete_cayley
from .colour_aut import is_colour_permuting, is_colour_preserving
from .groups import (
    FiniteGroup,
    GroupMap,
    decompose_hamiltonian_2group,
    is_automorphism,
    is_normal,
    is_homomorphism,
    product_set,
    quaternion_elements,
    subgroup_generated,
)


class DecompositionError(AssertionError):
    """A step of the factorization failed; ``step`` names it."""

    def __init__(self, step: str, detail: str = ""):
        self.step = step
        super().__init__(f"decomposition step failed: {step}" + (f" ({detail})" if detail else ""))


def _require(ok: bool, step: str, detail: str = "") -> None:
    if not ok:
        raise DecompositionError(step, detail)


@dataclass(frozen=True)
class Decomposition:
    beta: GroupMap
    psi: GroupMap
    original: GroupMap

    def certificate(self) -> dict:
        checks = _checks(self.original.group, self)
        return {
            "original": list(self.original.image),
            "beta": list(self.beta.image),
            "psi": list(self.psi.image),
            "checks": checks,
        }


def normalize_to_stabilizer(phi: GroupMap) -> tuple:
    """(g, phi') with g = phi(1), phi' = L_g^-1 o phi, so phi = L_g o phi'."""
    G = phi.group
    g = phi.image[G.identity]
    g_inv = G.inv[g]
    return g, GroupMap(G, tuple(G.mul[g_inv][y] for y in phi.image))


def _finish(G: FiniteGroup, phi: GroupMap, beta: GroupMap, psi0: GroupMap) -> Decomposition:
    # psi absorbs the translation so that beta o psi == phi
    a = phi.image[G.identity]
    c = beta.inverse().image[a]
    psi = GroupMap.translation(G, c) @ psi0
    return Decomposition(beta, psi, phi)


@lru_cache(maxsize=32)
def _context(G: FiniteGroup):
    X = complete_cayley(G)
    ham = decompose_hamiltonian_2group(G)
    if ham is None:
        return X, None, None, None
    G2 = subgroup_generated(G, [x for x in G.elements if G.mul[x][x] == G.identity])
    return X, ham, G2, quaternion_elements(G, ham.i, ham.j)


def decompose_colour_permuting(G: FiniteGroup, phi: GroupMap) -> Decomposition:
    X, ham, G2, Q = _context(G)
    if is_colour_permuting(X, phi) is None:
        raise ValueError("map is not a colour-permuting automorphism of K_G")
    _, f = normalize_to_stabilizer(phi)

    if ham is None:
        # K_G is strongly CCA here, so the normalized map is a group automorphism
        _require(is_automorphism(f), "normalized map is a group automorphism")
        return _finish(G, phi, f, GroupMap.identity(G))

    mul, img = G.mul, f.image
    i, j, B = ham.i, ham.j, sorted(ham.B)
    i2 = G.power(i, 2)
    _require(G2 == frozenset(product_set(G, [G.identity, i2], B)), "G2 = <i^2, B>")
    _require(frozenset(img[x] for x in G2) == G2, "phi'(G2) = G2")
    _require(
        all(img[mul[g][x]] == mul[img[g]][img[x]] for g in G.elements for x in G2),
        "phi'(g x) = phi'(g) phi'(x) for x in G2",
    )

    fi, fj = img[i], img[j]
    _require(G.element_order(fi) == 4 and G.element_order(fj) == 4, "phi'(i), phi'(j) have order 4")
    _require(img[i2] == i2, "phi'(i^2) = i^2")

    Qt = quaternion_elements(G, fi, fj)
    # alpha(i^m j^n) = phi'(i)^m phi'(j)^n is a well-defined isomorphism onto Q~
    alpha = dict(zip(Q, Qt))
    _require(len(set(Q)) == 8 and len(set(Qt)) == 8, "alpha is a bijection Q8 -> Q~8")
    _require(
        all(alpha[mul[x][y]] == mul[alpha[x]][alpha[y]] for x in Q for y in Q),
        "alpha is a homomorphism",
    )
    Qt_set = frozenset(Qt)
    _require(frozenset(img[x] for x in Q) == Qt_set, "phi'(Q8) = Q~8")
    fB = frozenset(img[b] for b in B)
    _require(Qt_set & fB == {G.identity}, "Q~8 meets phi'(B) trivially")
    _require(product_set(G, Qt_set, fB) == frozenset(G.elements), "Q~8 phi'(B) = G")
    _require(is_normal(G, Qt_set) and is_normal(G, fB), "Q~8 and phi'(B) are normal")

    beta_img = [None] * G.order
    for q in Q:
        for b in B:
            beta_img[mul[q][b]] = mul[alpha[q]][img[b]]
    beta = GroupMap(G, tuple(beta_img))
    _require(is_homomorphism(G, beta.image), "beta is a group automorphism")
    psi0 = beta.inverse() @ f
    _require(is_colour_preserving(X, psi0), "beta^-1 o phi' is colour-preserving")
    return _finish(G, phi, beta, psi0)


def _checks(G: FiniteGroup, d: Decomposition) -> dict:
    return {
        "beta_automorphism": is_automorphism(d.beta),
        "psi_colour_preserving": is_colour_preserving(_context(G)[0], d.psi),
        "composition": (d.beta @ d.psi).image == d.original.image,
    }


def verify_decomposition(G: FiniteGroup, d: Decomposition) -> bool:
    return all(_checks(G, d).values())


def decompose_all(G: FiniteGroup, maps) -> list:
    return [decompose_colour_permuting(G, phi) for phi in maps]
