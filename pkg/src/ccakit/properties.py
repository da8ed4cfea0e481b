"""Vectorized checks of the structural lemmas over batches of maps.

A batch is an ``(m, n)`` integer array whose rows are the images of m
maps on an n-element group.  Each ``check_*`` function returns the index of
the first row that violates the statement, or None.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Optional

import numpy as np

from .cayley import CayleyGraph
from .groups import FiniteGroup

BATCH = 256


class Tables:
    """numpy views of a Cayley graph's group tables."""

    def __init__(self, X: CayleyGraph):
        G = X.group
        self.X = X
        self.n = G.order
        self.M = np.asarray(G.mul, dtype=np.int64)
        self.INV = np.asarray(G.inv, dtype=np.int64)
        self.COL = np.asarray(X.colour_of, dtype=np.int64)
        self.S = np.asarray(sorted(X.S), dtype=np.int64)
        self.ORD = np.asarray([G.element_order(x) for x in G.elements], dtype=np.int64)
        maxord = int(self.ORD.max())
        pw = np.zeros((self.n, maxord + 1), dtype=np.int64)
        for k in range(1, maxord + 1):
            pw[:, k] = self.M[pw[:, k - 1], np.arange(self.n)]
        self.POW = pw
        self.maxord = maxord
        self.sizes = np.asarray([len(c) for c in X.colours], dtype=np.int64)
        # a representative position in S for each colour class
        pos = {int(s): t for t, s in enumerate(self.S)}
        self.rep = np.asarray([pos[c.pair[0]] for c in X.colours], dtype=np.int64)

    def local(self, F: np.ndarray) -> np.ndarray:
        """T[r, g, t] = phi(g)^-1 phi(g s_t): the local permutations, shape (m, n, |S|)."""
        Fgs = F[:, self.M[:, self.S]]
        return self.M[self.INV[F][:, :, None], Fgs]


def as_batch(maps: Iterable) -> np.ndarray:
    rows = [m.image if hasattr(m, "image") else m for m in maps]
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    return np.asarray(rows, dtype=np.int64)


def _first(bad: np.ndarray) -> Optional[int]:
    idx = np.flatnonzero(bad)
    return int(idx[0]) if idx.size else None


def _batched(fn):
    def run(tab: Tables, F: np.ndarray, *args) -> Optional[int]:
        for start in range(0, len(F), BATCH):
            hit = fn(tab, F[start : start + BATCH], *args)
            if hit is not None:
                return start + hit
        return None

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def colour_preserving_mask(tab: Tables, F: np.ndarray) -> np.ndarray:
    if len(tab.S) == 0:
        return np.ones(len(F), dtype=bool)
    T = tab.local(F)
    return (tab.COL[T] == tab.COL[tab.S][None, None, :]).all(axis=(1, 2))


def colour_permuting_mask(tab: Tables, F: np.ndarray) -> np.ndarray:
    if len(tab.S) == 0:
        return np.ones(len(F), dtype=bool)
    C = tab.COL[tab.local(F)]
    # image colour of each class, read at the identity's image
    P = C[:, 0, :][:, tab.rep]
    ok = (C == P[:, None, :][:, :, tab.COL[tab.S]]).all(axis=(1, 2))
    ok &= (np.sort(P, axis=1) == np.arange(len(tab.rep))[None, :]).all(axis=1)
    ok &= (tab.sizes[np.clip(P, 0, None)] == tab.sizes[None, :]).all(axis=1)
    return ok


def automorphism_mask(tab: Tables, F: np.ndarray) -> np.ndarray:
    lhs = F[:, tab.M]
    rhs = tab.M[F[:, :, None], F[:, None, :]]
    return (lhs == rhs).all(axis=(1, 2))


@_batched
def check_power_lemma(tab: Tables, F: np.ndarray) -> Optional[int]:
    """phi(g s) = phi(g) t implies phi(g s^k) = phi(g) t^k for 0 <= k < |s|."""
    T = tab.local(F)
    ok = np.ones(len(F), dtype=bool)
    for k in range(tab.maxord):
        live = tab.ORD[tab.S] > k
        if not live.any():
            break
        lhs = F[:, tab.M[:, tab.POW[tab.S, k]]]
        rhs = tab.M[F[:, :, None], tab.POW[T, k]]
        ok &= ((lhs == rhs) | ~live[None, None, :]).all(axis=(1, 2))
    return _first(~ok)


@_batched
def check_stabilizer_power_lemma(tab: Tables, F: np.ndarray) -> Optional[int]:
    """For phi(1) = 1: phi(g s^k) is phi(g) phi(s)^k or phi(g) phi(s)^-k."""
    FS = F[:, tab.S]
    ok = np.ones(len(F), dtype=bool)
    for k in range(tab.maxord):
        lhs = F[:, tab.M[:, tab.POW[tab.S, k]]]
        up = tab.M[F[:, :, None], tab.POW[FS, k][:, None, :]]
        down = tab.M[F[:, :, None], tab.POW[tab.INV[FS], k][:, None, :]]
        ok &= ((lhs == up) | (lhs == down)).all(axis=(1, 2))
    return _first(~ok)


@_batched
def check_involution_multiplicative(tab: Tables, F: np.ndarray, H: np.ndarray) -> Optional[int]:
    """For phi(1) = 1 and h in H: phi(g h) = phi(g) phi(h)."""
    lhs = F[:, tab.M[:, H]]
    rhs = tab.M[F[:, :, None], F[:, H][:, None, :]]
    return _first(~(lhs == rhs).all(axis=(1, 2)))


@_batched
def check_involution_translation(tab: Tables, F: np.ndarray, H: np.ndarray) -> Optional[int]:
    """For colour-preserving phi and h in H: phi(x h) = phi(x) h."""
    lhs = F[:, tab.M[:, H]]
    rhs = tab.M[F[:, :, None], H[None, None, :]]
    return _first(~(lhs == rhs).all(axis=(1, 2)))


@_batched
def check_involution_fixed(tab: Tables, F: np.ndarray, H: np.ndarray) -> Optional[int]:
    """For colour-preserving phi with phi(1) = 1: phi fixes H pointwise."""
    return _first(~(F[:, H] == H[None, :]).all(axis=1))


@_batched
def check_local_permutation_criterion(tab: Tables, F: np.ndarray) -> Optional[int]:
    """For phi(1) = 1: phi is a group automorphism iff all local permutations agree."""
    T = tab.local(F)
    same = (T == T[:, :1, :]).all(axis=(1, 2))
    return _first(same != automorphism_mask(tab, F))


def _row_keys(rows: np.ndarray) -> np.ndarray:
    # wrapping int64 dot product; only used to locate candidates, equality is rechecked
    w = np.random.default_rng(12345).integers(1, 2**62, size=rows.shape[-1], dtype=np.int64)
    with np.errstate(over="ignore"):
        return (rows * w).sum(axis=-1)


def check_conjugate_construction(tab: Tables, F: np.ndarray, stab0: np.ndarray) -> Optional[int]:
    """Every psi built from phi, g, s is in the colour-preserving stabilizer and fixes s."""
    M, INV, S = tab.M, tab.INV, tab.S
    n, k = tab.n, len(S)
    if k == 0 or len(F) == 0:
        return None
    known_keys = _row_keys(stab0)
    order = np.argsort(known_keys)
    known_keys, known_rows = known_keys[order], stab0[order]
    G_ = np.arange(n)
    GS = M[:, S]  # (n, k)
    GSX = M[GS[:, :, None], G_[None, None, :]]  # (n, k, n): g s x
    step = max(1, 4096 // (n * k))
    for start in range(0, len(F), step):
        f = F[start : start + step]  # (b, n)
        b = len(f)
        finv = np.argsort(f, axis=1)
        rows = np.arange(b)[:, None, None]
        shift = M[f[:, :, None], INV[f[:, GS]]]  # (b, n, k): phi(g) phi(gs)^-1
        inner = f[rows[..., None], GSX[None]]  # (b, n, k, n): phi(g s x)
        moved = M[shift[..., None], inner]
        psi = M[INV[None, :, None, None], finv[rows[..., None], moved]]
        fixes_s = (psi[:, :, np.arange(k), S] == S[None, None, :]).all(axis=(1, 2))
        flat = psi.reshape(b, -1, n)
        keys = _row_keys(flat)
        pos = np.clip(np.searchsorted(known_keys, keys), 0, len(known_keys) - 1)
        member = (known_keys[pos] == keys) & (known_rows[pos] == flat).all(axis=-1)
        bad = ~(fixes_s & member.all(axis=1))
        if bad.any():
            return start + int(np.flatnonzero(bad)[0])
    return None


def is_closed_group(maps: Iterable) -> bool:
    """Whether a finite set of permutations (tuples) is a group.

    Builds the group generated by the set, adding a generator only when the
    current closure misses an element, and aborts once the closure leaves
    the set.
    """
    T = {tuple(m.image if hasattr(m, "image") else m) for m in maps}
    if not T:
        return False
    n = len(next(iter(T)))
    ident = tuple(range(n))
    if ident not in T:
        return False
    gens: list = []
    H = {ident}
    order = [ident]
    for t in sorted(T):
        if t in H:
            continue
        gens.append(t)
        # re-close: every known element times the new generator, then BFS
        queue = list(order)
        head = 0
        while head < len(queue):
            h = queue[head]
            head += 1
            for x in gens:
                hx = tuple(h[y] for y in x)
                if hx not in H:
                    if hx not in T:
                        return False
                    H.add(hx)
                    order.append(hx)
                    queue.append(hx)
    return H == T


def all_stabilizing_permutations(n: int) -> np.ndarray:
    """Every permutation of 0..n-1 that fixes 0."""
    rows = [(0,) + p for p in permutations(range(1, n))]
    return np.asarray(rows, dtype=np.int64)


def group_automorphism_oracle(G: FiniteGroup) -> set:
    """Brute force over all identity-fixing permutations."""
    tab_M = np.asarray(G.mul, dtype=np.int64)
    F = all_stabilizing_permutations(G.order)
    out = set()
    for start in range(0, len(F), 4096):
        chunk = F[start : start + 4096]
        ok = (chunk[:, tab_M] == tab_M[chunk[:, :, None], chunk[:, None, :]]).all(axis=(1, 2))
        out |= {tuple(int(v) for v in row) for row in chunk[ok]}
    return out
