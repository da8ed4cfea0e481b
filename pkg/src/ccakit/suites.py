"""Verification suites run by ``ccakit verify`` and by the acceptance tests.

Each suite returns a list of :class:`Check` records; a suite passes when
every record does.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from . import properties as P
from .catalog import HAMILTONIAN_2_GROUPS, catalog_group, catalog_groups, connection_sets, random_connected_graphs
from .cayley import CayleyGraph, build_cayley, complete_cayley, is_connected
from .classify import (
    ABELIAN_INVERSION,
    DICYCLIC_FLIP,
    EXPECTED_SIZE,
    HAMILTONIAN,
    all_phi_I,
    complete_cca_verdict,
    dicyclic_flip,
    fixed_set,
    predict_stabilizer,
)
from .colour_aut import (
    COLOUR_PERMUTING,
    COLOUR_PRESERVING,
    cca_status,
    enumerate_stabilizer,
    full_group,
    involution_subgroup,
    is_normal_graph,
    strongly_cca_sufficient,
)
from .decompose import decompose_colour_permuting, verify_decomposition
from .groups import (
    DicyclicWitness,
    FiniteGroup,
    GroupMap,
    all_subgroups,
    decompose_hamiltonian_2group,
    enumerate_automorphisms,
    is_affine,
    is_subgroup,
    product_set,
    subgroup_generated,
)

SUITES = ("lemmas", "classif", "decomposition", "d12", "normal-search")

# brute-force stabilizer sizes of K_G, frozen from enumerate_stabilizer runs
EXPECTED_STABILIZER = {
    "Z5": 2,
    "Z4": 2,
    "Z2^3": 1,
    "D12": 1,
    "Dic(Z8)": 2,
    "Q8xZ3": 1,
    "Q8": 8,
    "Q8xZ2": 8,
    "Q8xZ2^2": 8,
}

# bound on (maps x translations) before translate checks fall back to a sample
TRANSLATE_BUDGET = 20000


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}" + (
            f": {self.detail}" if self.detail else ""
        )


def _check(out: list, name: str, passed, detail: str = "") -> bool:
    out.append(Check(name, bool(passed), detail))
    return bool(passed)


@lru_cache(maxsize=None)
def _aut(G: FiniteGroup):
    return enumerate_automorphisms(G)


def _translates(tab: P.Tables, F: np.ndarray) -> np.ndarray:
    if len(F) == 0:
        return F
    hs = range(tab.n) if len(F) * tab.n <= TRANSLATE_BUDGET else range(min(4, tab.n))
    return np.concatenate([tab.M[h][F] for h in hs])


def _graph_label(X: CayleyGraph) -> str:
    if len(X.S) == X.order - 1:
        return f"K({X.group.name})"
    return f"Cay({X.group.name}; {sorted(X.S)})"


# ---------------------------------------------------------------------------
# lemmas


def lemma_checks_for_graph(X: CayleyGraph, out: list, oracle_max: int = 8) -> None:
    G = X.group
    label = _graph_label(X)
    tab = P.Tables(X)
    stab0 = enumerate_stabilizer(X, COLOUR_PRESERVING)
    stab = enumerate_stabilizer(X, COLOUR_PERMUTING)
    F0, F1 = P.as_batch(stab0), P.as_batch(stab)
    H, _ = involution_subgroup(X)
    Ha = np.asarray(sorted(H), dtype=np.int64)

    _check(out, f"{label}: stabilizers are groups",
           P.is_closed_group(stab0) and P.is_closed_group(stab))
    _check(out, f"{label}: stabilizer modes",
           P.colour_preserving_mask(tab, F0).all() and P.colour_permuting_mask(tab, F1).all()
           and stab0.images() <= stab.images())

    # translations, and automorphisms sending each s into {s, s^-1}, preserve colours
    aut = P.as_batch(_aut(G))
    s_arr = tab.S
    keeps = (aut[:, s_arr] == s_arr[None, :]) | (aut[:, s_arr] == tab.INV[s_arr][None, :])
    flips = aut[keeps.all(axis=1)]
    _check(out, f"{label}: translations and inverting automorphisms are colour-preserving",
           P.colour_preserving_mask(tab, tab.M).all() and P.colour_preserving_mask(tab, flips).all())

    all1 = _translates(tab, F1)
    all0 = _translates(tab, F0)
    _check(out, f"{label}: power lemma", P.check_power_lemma(tab, all1) is None)
    _check(out, f"{label}: stabilizer power lemma", P.check_stabilizer_power_lemma(tab, F1) is None)
    _check(out, f"{label}: involution subgroup multiplicative",
           P.check_involution_multiplicative(tab, F1, Ha) is None)
    _check(out, f"{label}: involution subgroup translation law",
           P.check_involution_translation(tab, all0, Ha) is None
           and P.check_involution_fixed(tab, F0, Ha) is None)
    _check(out, f"{label}: automorphism iff constant local permutation",
           P.check_local_permutation_criterion(tab, F1) is None)
    _check(out, f"{label}: conjugate construction lands in colour-preserving stabilizer",
           P.check_conjugate_construction(tab, F1, F0) is None)

    strongly = bool(P.automorphism_mask(tab, F1).all()) if len(F1) else True
    suff = strongly_cca_sufficient(X, stab0)
    _check(out, f"{label}: sufficient conditions imply strongly CCA",
           strongly or not any(suff.values()), f"strongly={strongly} {suff}")

    if G.order <= oracle_max:
        perms = P.all_stabilizing_permutations(G.order)
        pres = {tuple(int(v) for v in r) for r in perms[P.colour_preserving_mask(tab, perms)]}
        perm = {tuple(int(v) for v in r) for r in perms[P.colour_permuting_mask(tab, perms)]}
        _check(out, f"{label}: search matches all-permutation oracle",
               pres == stab0.images() and perm == stab.images())


def group_lemma_checks(G: FiniteGroup, out: list) -> None:
    name = G.name
    full = frozenset(G.elements)
    proper = [H for H in all_subgroups(G) if len(H) < G.order]
    _check(out, f"{name}: complement of each proper subgroup generates",
           all(subgroup_generated(G, full - H) == full for H in proper))
    d = decompose_hamiltonian_2group(G)
    if d is not None:
        Q = subgroup_generated(G, [d.i, d.j])
        _check(out, f"{name}: QB = BQ", product_set(G, Q, d.B) == product_set(G, d.B, Q) == full)
    # affine test agrees with trying every (alpha, g)
    if G.order <= 16:
        aut = _aut(G)
        affine = {
            tuple(a.image[G.mul[g][x]] for x in G.elements) for a in aut for g in G.elements
        }
        X = complete_cayley(G)
        sample = list(enumerate_stabilizer(X, COLOUR_PERMUTING))[:64]
        sample += [GroupMap.translation(G, h) @ phi for phi in sample[:8] for h in G.elements]
        ok = True
        for phi in sample:
            w = is_affine(phi)
            if (w is not None) != (phi.image in affine):
                ok = False
            elif w is not None:
                ok &= all(phi.image[x] == w.alpha.image[G.mul[w.g][x]] for x in G.elements)
        _check(out, f"{name}: affine test matches (alpha, g) oracle", ok)


def suite_lemmas(max_order: int = 32, random_order: int = 16, random_count: int = 20, seed: int = 0) -> list:
    out: list = []
    for G in catalog_groups(max_order):
        group_lemma_checks(G, out)
        graphs = [complete_cayley(G)]
        if G.order <= random_order:
            graphs += random_connected_graphs(G, random_count, seed)
        for X in graphs:
            lemma_checks_for_graph(X, out)
    return out


# ---------------------------------------------------------------------------
# classification


def suite_classif(max_order: int = 32) -> list:
    out: list = []
    for G in catalog_groups(max_order):
        name = G.name
        X = complete_cayley(G)
        pred = predict_stabilizer(G)
        brute = enumerate_stabilizer(X, COLOUR_PRESERVING)
        _check(out, f"{name}: predicted stabilizer equals brute force",
               pred.predicted_stabilizer.images() == brute.images(),
               f"kind={pred.kind} size={len(brute)}")
        if name in EXPECTED_STABILIZER:
            _check(out, f"{name}: stabilizer size {EXPECTED_STABILIZER[name]}",
                   len(brute) == EXPECTED_STABILIZER[name], f"got {len(brute)}")
        _check(out, f"{name}: kind size", len(pred.predicted_stabilizer) == EXPECTED_SIZE[pred.kind])

        if pred.kind in (ABELIAN_INVERSION, DICYCLIC_FLIP):
            F = [fixed_set(phi) for phi in pred.predicted_stabilizer if not phi.is_identity()]
            _check(out, f"{name}: fixed set is a proper subgroup",
                   all(is_subgroup(G, f) and len(f) < G.order for f in F))
        if pred.kind == HAMILTONIAN:
            d = pred.witness
            maps = all_phi_I(G, d)
            _check(out, f"{name}: phi_I affine iff |I| odd",
                   all((is_affine(phi) is not None) == (len(I) % 2 == 1) for I, phi in maps.items()))
            A = subgroup_generated(G, [d.k] + sorted(d.B))
            w = DicyclicWitness(A, G.power(d.i, 2), d.i)
            _check(out, f"{name}: dicyclic flip of <k, B> equals phi_{{k}}",
                   dicyclic_flip(G, w).image == maps[frozenset("k")].image)

        status = cca_status(X, check_normal=False)
        verdict = complete_cca_verdict(G)
        ham = name in HAMILTONIAN_2_GROUPS
        _check(out, f"{name}: cca={status.cca} strongly={status.strongly_cca}",
               status.cca == status.strongly_cca == verdict["cca"] == (not ham))
        if ham:
            _check(out, f"{name}: inversion is a non-affine colour-preserving witness",
                   tuple(G.inv) in {m.image for m in status.witnesses[COLOUR_PRESERVING]})
    return out


# ---------------------------------------------------------------------------
# decomposition


def decomposition_checks(G: FiniteGroup, out: list, full: bool) -> None:
    name = G.name
    X = complete_cayley(G)
    stab = enumerate_stabilizer(X, COLOUR_PERMUTING)
    maps = full_group(stab) if full else stab
    bad = [phi for phi in maps if not verify_decomposition(G, decompose_colour_permuting(G, phi))]
    _check(out, f"{name}: all {len(maps)} colour-permuting maps decompose", not bad)
    if not full:
        return
    stab0 = enumerate_stabilizer(X, COLOUR_PRESERVING)
    A0 = full_group(stab0)
    aut = _aut(G)
    ab = {(a @ c).image for a in aut for c in A0}
    ba = {(c @ a).image for a in aut for c in A0}
    _check(out, f"{name}: colour-permuting group = Aut(G) . colour-preserving group",
           ab == ba == maps.images(), f"|A|={len(maps)} |Aut|={len(aut)} |A0|={len(A0)}")


def suite_decomposition(max_order: int = 32, group: Optional[str] = None, full_order: int = 16) -> list:
    out: list = []
    groups = [catalog_group(group)] if group else catalog_groups(max_order)
    for G in groups:
        decomposition_checks(G, out, full=G.order <= full_order)
        status = cca_status(complete_cayley(G), check_normal=False)
        _check(out, f"{G.name}: complete graph CCA implies strongly CCA",
               status.strongly_cca or not status.cca)
    return out


# ---------------------------------------------------------------------------
# D12 and normal graphs


def suite_d12() -> list:
    out: list = []
    G = catalog_group("D12")
    graphs = [build_cayley(G, S) for S in connection_sets(G)]
    statuses = [cca_status(X, check_normal=False) for X in graphs]
    not_cca = [X for X, st in zip(graphs, statuses) if not st.cca]
    not_strong = [X for X, st in zip(graphs, statuses) if not st.strongly_cca]
    _check(out, f"D12: all {len(graphs)} connected Cayley graphs are CCA", not not_cca)
    _check(out, "D12: some connected Cayley graph is not strongly CCA", bool(not_strong),
           f"{len(not_strong)} not strongly CCA, e.g. S={sorted(not_strong[0].S) if not_strong else None}")
    return out


def find_normal_graph(G: FiniteGroup) -> Optional[CayleyGraph]:
    sets = sorted(connection_sets(G), key=lambda S: (len(S), sorted(S)))
    for S in sets:
        X = build_cayley(G, S)
        if is_normal_graph(X):
            return X
    return None


def suite_normal_search(max_order: int = 16) -> list:
    out: list = []
    for G in catalog_groups(max_order):
        X = find_normal_graph(G)
        exists = X is not None
        ham = G.name in HAMILTONIAN_2_GROUPS
        z4z2 = G.name == "Z4xZ2"
        _check(out, f"{G.name}: normal Cayley graph {'found' if exists else 'absent'}",
               (exists or z4z2) == (not ham),
               f"S={sorted(X.S)}" if exists else "")
    return out


RUNNERS: dict = {
    "lemmas": suite_lemmas,
    "classif": suite_classif,
    "decomposition": suite_decomposition,
    "d12": suite_d12,
    "normal-search": suite_normal_search,
}


def run_suite(name: str, log: Optional[Callable] = None, **kwargs) -> list:
    if name not in RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
    start = time.perf_counter()
    checks = RUNNERS[name](**kwargs)
    if log is not None:
        for c in sorted(checks, key=lambda c: c.name):
            log(c.line())
        log(f"{name}: {sum(c.passed for c in checks)}/{len(checks)} passed "
            f"in {time.perf_counter() - start:.1f}s")
    return checks
