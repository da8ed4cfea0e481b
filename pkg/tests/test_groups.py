import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from ccakit.catalog import CATALOG, catalog_group
from ccakit.classify import all_phi_I
from ccakit.groups import (
    GroupMap,
    GroupSpecError,
    OrderCapError,
    all_subgroups,
    build_group,
    centralizer,
    centre,
    decompose_hamiltonian_2group,
    dihedral,
    enumerate_automorphisms,
    generating_sequence,
    is_affine,
    is_automorphism,
    is_dicyclic_type,
    is_valid_dicyclic,
    is_valid_ham2,
    parse_spec,
    product_set,
    quaternion_elements,
    subgroup_generated,
)

SMALL = [s for s in CATALOG if catalog_group(s).order <= 8]
UP_TO_16 = [s for s in CATALOG if catalog_group(s).order <= 16]


@pytest.mark.parametrize("spec", CATALOG)
def test_table_invariants(spec):
    G = catalog_group(spec)
    M = np.asarray(G.mul)
    n = G.order
    ar = np.arange(n)
    assert (np.sort(M, axis=0) == ar[:, None]).all()
    assert (np.sort(M, axis=1) == ar[None, :]).all()
    assert G.identity == 0
    assert (M[0] == ar).all() and (M[:, 0] == ar).all()
    assert all(M[x, G.inv[x]] == 0 for x in range(n))
    # associativity, independent of the constructor's own check
    assert (M[M[:, :, None], ar[None, None, :]] == M[ar[:, None, None], M[None, :, :]]).all()


def test_build_examples():
    Z4 = build_group("Z4")
    assert Z4.order == 4 and Z4.identity == 0
    assert Z4.mul[1][3] == 0 and Z4.mul[2][3] == 1

    G = build_group("Q8xZ2")
    assert G.order == 16
    assert len(centre(G)) == len(O.centre(G)) == 4

    D = build_group("D12")
    assert D.order == 12 and not D.is_abelian()
    assert sorted(O.element_order(D, x) for x in range(12)).count(2) == 7


def test_direct_product_is_lexicographic():
    G = build_group("Z2xZ3")
    # (a, b) -> 3a + b
    for a in range(2):
        for b in range(3):
            for c in range(2):
                for d in range(3):
                    assert G.mul[3 * a + b][3 * c + d] == 3 * ((a + c) % 2) + (b + d) % 3


def test_dicyclic_witness_is_recorded():
    G = build_group("Dic(Z6)")
    assert G.order == 12
    assert G.dicyclic is not None and is_valid_dicyclic(G, G.dicyclic)
    assert build_group("Dic(Z8)").dicyclic.A == frozenset(range(8))


def test_exponent_shorthand():
    assert build_group("Z2^3").order == 8
    assert parse_spec("Q8xZ2^2") == ["Q8", "Z2", "Z2"]


@pytest.mark.parametrize("bad", ["", "Z", "Q9", "D5", "D2", "Dic(Z5)", "Z4x", "xZ4", "Z0", "foo", "Z2^", "Dic(Q8)"])
def test_parse_errors(bad):
    with pytest.raises(GroupSpecError):
        build_group(bad)


def test_order_cap(monkeypatch):
    with pytest.raises(OrderCapError):
        build_group("Q8xZ2", cap=8)
    monkeypatch.setenv("CCA_MAX_ORDER", "10")
    with pytest.raises(OrderCapError):
        build_group("Z12")
    assert build_group("Z10").order == 10
    monkeypatch.delenv("CCA_MAX_ORDER")
    with pytest.raises(OrderCapError):
        build_group("Z65")


def test_subgroup_generated_examples():
    Z6 = build_group("Z6")
    assert subgroup_generated(Z6, {2}) == {0, 2, 4}
    assert subgroup_generated(Z6, set()) == {0}
    Q8 = build_group("Q8")
    i = Q8.element("i")
    H = subgroup_generated(Q8, {i})
    assert len(H) == 4
    assert subgroup_generated(Q8, set(Q8.elements) - H) == frozenset(Q8.elements)


@pytest.mark.parametrize("spec", UP_TO_16)
def test_closure_matches_oracle_and_proper_complements_generate(spec):
    G = catalog_group(spec)
    subs = all_subgroups(G)
    assert set(subs) == {O.closure(G, [x, y]) for x in G.elements for y in G.elements} | set(subs)
    for H in subs:
        assert subgroup_generated(G, H) == H
        if len(H) < G.order:
            assert subgroup_generated(G, set(G.elements) - H) == frozenset(G.elements)


def test_centralizer_examples():
    Q8 = build_group("Q8")
    assert centralizer(Q8, Q8.elements) == {0, Q8.element("-1")}
    Z8 = build_group("Z8")
    assert centralizer(Z8, Z8.elements) == frozenset(range(8))
    D12 = build_group("D12")
    r = 1
    assert O.element_order(D12, r) == 6
    C = centralizer(D12, {r})
    assert C == O.closure(D12, [r]) and len(C) == 6


@pytest.mark.parametrize("spec", SMALL)
def test_automorphisms_match_oracle(spec):
    G = catalog_group(spec)
    assert enumerate_automorphisms(G).images() == O.automorphisms(G)


@pytest.mark.parametrize(
    "spec,count",
    # counts re-derived by the exhaustive oracle (orders <= 8) or frozen
    # from a full run whose members were each checked to be homomorphisms
    [("Z4", 2), ("Q8", 24), ("Z2^2", 6), ("Z5", 4), ("D12", 12), ("Q8xZ2", 192),
     ("Dic(Z8)", 32), ("Q8xZ3", 48), ("Z4xZ2", 8), ("Dic(Z6)", 12)],
)
def test_automorphism_counts(spec, count):
    G = catalog_group(spec)
    auts = enumerate_automorphisms(G)
    assert len(auts) == count
    assert all(O.is_hom(G, f.image) for f in auts)


def test_generating_sequence_is_greedy():
    G = catalog_group("Q8xZ2")
    seq = generating_sequence(G)
    H = frozenset({0})
    for g in seq:
        assert g == min(set(G.elements) - H)
        H = O.closure(G, H | {g})
    assert H == frozenset(G.elements)


# affine maps

def test_affine_examples():
    Z5 = build_group("Z5")
    w = is_affine(GroupMap.identity(Z5))
    assert w is not None and w.alpha.is_identity() and w.g == 0
    assert is_affine(GroupMap.inversion(Z5)) is not None
    Q8 = build_group("Q8")
    assert is_affine(GroupMap.inversion(Q8)) is None


def _check_affine(G, f, auts):
    w = is_affine(f)
    assert (w is not None) == O.is_affine(G, f.image, auts)
    if w is not None:
        assert is_automorphism(w.alpha)
        assert all(f(x) == w.alpha(G.mul[w.g][x]) for x in G.elements)


@pytest.mark.parametrize("spec", UP_TO_16)
def test_affine_matches_pair_oracle_on_affine_maps(spec):
    G = catalog_group(spec)
    auts = O.automorphisms(G) if G.order <= 8 else enumerate_automorphisms(G).images()
    for a in list(auts)[:6]:
        for g in G.elements:
            f = GroupMap(G, tuple(a[G.mul[g][x]] for x in G.elements))
            _check_affine(G, f, auts)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(UP_TO_16), st.randoms(use_true_random=False))
def test_affine_matches_pair_oracle_on_random_maps(spec, rnd):
    G = catalog_group(spec)
    auts = O.automorphisms(G) if G.order <= 8 else enumerate_automorphisms(G).images()
    image = list(G.elements)
    rnd.shuffle(image)
    _check_affine(G, GroupMap(G, tuple(image)), auts)


def test_affine_on_phi_I():
    G = catalog_group("Q8xZ2")
    auts = enumerate_automorphisms(G).images()
    for I, f in all_phi_I(G, decompose_hamiltonian_2group(G)).items():
        _check_affine(G, f, auts)


# recognizers

@pytest.mark.parametrize("spec", UP_TO_16)
def test_dicyclic_recognizer_matches_oracle(spec):
    G = catalog_group(spec)
    w = is_dicyclic_type(G)
    found = O.dicyclic_witnesses(G)
    assert (w is not None) == bool(found)
    if w is not None:
        assert (w.A, w.z, w.q) in found
        assert is_dicyclic_type(G) == w


def test_dicyclic_examples():
    assert is_dicyclic_type(build_group("Q8")) is not None
    assert is_dicyclic_type(build_group("Z6")) is None
    G = build_group("Dic(Z8)")
    w = is_dicyclic_type(G)
    assert len(w.A) == 8 and O.element_order(G, w.z) == 2
    assert [x for x in G.elements if O.element_order(G, x) == 2] == [w.z]


@pytest.mark.parametrize("spec", CATALOG)
def test_hamiltonian_recognizer_matches_oracle(spec):
    G = catalog_group(spec)
    d = decompose_hamiltonian_2group(G)
    assert (d is not None) == O.is_ham2(G)
    if d is None:
        return
    assert is_valid_ham2(G, d)
    Q = quaternion_elements(G, d.i, d.j)
    assert len(set(Q)) == 8
    assert all(G.mul[b][b] == 0 for b in d.B)
    # (q, b) -> q b is a bijection and a homomorphism from Q x B
    pairs = [(q, b) for q in Q for b in sorted(d.B)]
    prods = [G.mul[q][b] for q, b in pairs]
    assert sorted(prods) == list(G.elements)
    for q1, b1 in pairs[:: max(1, len(pairs) // 8)]:
        for q2, b2 in pairs:
            assert G.mul[G.mul[q1][b1]][G.mul[q2][b2]] == G.mul[G.mul[q1][q2]][G.mul[b1][b2]]
    # HK = KH
    assert product_set(G, Q, d.B) == product_set(G, d.B, Q)


def test_hamiltonian_examples():
    Q8 = build_group("Q8")
    d = decompose_hamiltonian_2group(Q8)
    assert d.B == {0}
    assert (d.i, d.j, d.k) == (1, 4, 5)
    assert len(decompose_hamiltonian_2group(build_group("Q8xZ2")).B) == 2
    assert decompose_hamiltonian_2group(build_group("Q8xZ3")) is None


@pytest.mark.parametrize("spec", ["Q8", "Q8xZ2"])
def test_hamiltonian_pair_is_lexicographically_first(spec):
    G = catalog_group(spec)
    d = decompose_hamiltonian_2group(G)

    def q8_pair(i, j):
        if O.element_order(G, i) != 4 or O.element_order(G, j) != 4:
            return False
        if G.mul[i][j] == G.mul[j][i]:
            return False
        i2 = G.mul[i][i]
        return i2 == G.mul[j][j] and G.mul[G.mul[j][i]][O.inv(G, j)] == O.inv(G, i)

    first = min((i, j) for i in G.elements for j in G.elements if q8_pair(i, j))
    assert (d.i, d.j) == first
    assert d.k == G.mul[d.i][d.j]


def test_dihedral_rejects_odd_order():
    with pytest.raises(GroupSpecError):
        dihedral(7)


def test_element_tokens():
    Q8 = build_group("Q8")
    assert Q8.element("1") == 1 and Q8.element("0") == 0
    assert Q8.element("-1") == 2 and Q8.element("k") == 5
    for bad in ("8", "x", "-"):
        with pytest.raises(GroupSpecError):
            Q8.element(bad)
