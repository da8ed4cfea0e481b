"""Finite groups as dense multiplication tables.

Elements are the integers ``0..n-1`` and the identity is always ``0``.
Everything downstream (Cayley graphs, automorphism searches) indexes
straight into ``mul``/``inv``, so those are plain tuples.
"""

from __future__ import annotations

import os
import re
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import TYPE_CHECKING, Iterable, Iterator, Optional, Sequence

import numpy as np

if TYPE_CHECKING:
    from .cayley import CayleyGraph

DEFAULT_MAX_ORDER = 64


class GroupSpecError(ValueError):
    pass


class OrderCapError(ValueError):
    pass


def max_order() -> int:
    """The configured order cap (``CCA_MAX_ORDER`` overrides the default)."""
    raw = os.environ.get("CCA_MAX_ORDER")
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        cap = int(raw)
    except ValueError as exc:
        raise GroupSpecError(f"CCA_MAX_ORDER must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise GroupSpecError("CCA_MAX_ORDER must be positive")
    return cap


def check_cap(n: int, cap: Optional[int] = None) -> None:
    cap = max_order() if cap is None else cap
    if n > cap:
        raise OrderCapError(f"order {n} exceeds cap {cap}")


@dataclass(frozen=True)
class DicyclicWitness:
    A: frozenset
    z: int
    q: int


@dataclass(frozen=True)
class Ham2Decomposition:
    i: int
    j: int
    k: int
    B: frozenset


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    mul: tuple
    identity: int
    inv: tuple
    name: str = "G"
    labels: tuple = ()
    dicyclic: Optional[DicyclicWitness] = None

    def __post_init__(self):
        n = self.order
        if n < 1 or len(self.mul) != n or any(len(row) != n for row in self.mul):
            raise ValueError("multiplication table must be order x order")
        if self.identity != 0:
            raise ValueError("identity must be element 0")
        table = np.asarray(self.mul, dtype=np.int64)
        full = np.arange(n)
        if not (np.sort(table, axis=0) == full[:, None]).all() or not (
            np.sort(table, axis=1) == full[None, :]
        ).all():
            raise ValueError("multiplication table is not a Latin square")
        if not (table[0] == full).all() or not (table[:, 0] == full).all():
            raise ValueError("element 0 is not a two-sided identity")
        if any(self.mul[x][self.inv[x]] != 0 for x in range(n)):
            raise ValueError("inverse table is wrong")
        # (xy)z == x(yz) over all triples
        if not (table[table] == table[:, table]).all():
            raise ValueError("multiplication is not associative")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(x) for x in range(n)))
        orders = []
        for x in range(n):
            k, y = 1, x
            while y != 0:
                y = self.mul[y][x]
                k += 1
            orders.append(k)
        object.__setattr__(self, "_orders", tuple(orders))

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self):
        return self.order

    @property
    def elements(self) -> range:
        return range(self.order)

    def element_order(self, x: int) -> int:
        return self._orders[x]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv[x], -k
        y = self.identity
        for _ in range(k):
            y = self.mul[y][x]
        return y

    def prod(self, *xs: int) -> int:
        y = self.identity
        for x in xs:
            y = self.mul[y][x]
        return y

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def commute(self, x: int, y: int) -> bool:
        return self.mul[x][y] == self.mul[y][x]

    def is_abelian(self) -> bool:
        return all(self.mul[x][y] == self.mul[y][x] for x in self.elements for y in range(x))

    def element(self, token: str) -> int:
        """Look up an element by index or by display label.

        Digit strings are always indices, so Q8's label "1" must be given
        as 0.
        """
        token = token.strip()
        if not token.isdigit():
            if token in self.labels:
                return self.labels.index(token)
            raise GroupSpecError(f"unknown element {token!r} of {self.name}")
        x = int(token)
        if not 0 <= x < self.order:
            raise GroupSpecError(f"element {x} out of range for {self.name}")
        return x


def from_table(mul: Sequence[Sequence[int]], name: str, labels=(), dicyclic=None) -> FiniteGroup:
    mul = tuple(tuple(int(v) for v in row) for row in mul)
    inv = tuple(row.index(0) for row in mul)
    return FiniteGroup(len(mul), mul, 0, inv, name, tuple(labels), dicyclic)


@dataclass(frozen=True)
class GroupMap:
    """A permutation of the elements of ``group``."""

    group: FiniteGroup = field(compare=False, hash=False, repr=False)
    image: tuple

    def __post_init__(self):
        image = tuple(self.image)
        object.__setattr__(self, "image", image)
        if sorted(image) != list(range(self.group.order)):
            raise ValueError("image is not a permutation of the group elements")

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __matmul__(self, other: "GroupMap") -> "GroupMap":
        """Composition: ``(f @ g)(x) == f(g(x))``."""
        return GroupMap(self.group, tuple(self.image[y] for y in other.image))

    def inverse(self) -> "GroupMap":
        out = [0] * len(self.image)
        for x, y in enumerate(self.image):
            out[y] = x
        return GroupMap(self.group, tuple(out))

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.image))

    def fixed_points(self) -> frozenset:
        return frozenset(x for x, y in enumerate(self.image) if x == y)

    @classmethod
    def identity(cls, G: FiniteGroup) -> "GroupMap":
        return cls(G, tuple(G.elements))

    @classmethod
    def translation(cls, G: FiniteGroup, g: int) -> "GroupMap":
        """Left translation x -> g x."""
        return cls(G, G.mul[g])

    @classmethod
    def inversion(cls, G: FiniteGroup) -> "GroupMap":
        return cls(G, G.inv)

    @classmethod
    def conjugation(cls, G: FiniteGroup, g: int) -> "GroupMap":
        return cls(G, tuple(G.conj(g, x) for x in G.elements))


@dataclass(frozen=True)
class AutomorphismSet:
    """A deduplicated, sorted collection of maps plus where they came from.

    ``mode`` is one of ``"group"``, ``"colour-preserving"``,
    ``"colour-permuting"`` or ``"all-graph-automorphisms"``.
    """

    maps: tuple
    mode: str
    stabilized: bool = True
    graph: Optional["CayleyGraph"] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        uniq = {m.image: m for m in self.maps}
        object.__setattr__(self, "maps", tuple(uniq[k] for k in sorted(uniq)))
        object.__setattr__(self, "_images", frozenset(uniq))

    def __len__(self):
        return len(self.maps)

    def __iter__(self) -> Iterator[GroupMap]:
        return iter(self.maps)

    def __contains__(self, phi: GroupMap) -> bool:
        return phi.image in self._images

    def images(self) -> frozenset:
        return self._images

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "stabilized": self.stabilized,
            "maps": [list(m.image) for m in self.maps],
        }


# ---------------------------------------------------------------------------
# constructors


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupSpecError("Z_n needs n >= 1")
    return from_table([[(a + b) % n for b in range(n)] for a in range(n)], f"Z{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order n; element ``a + m*b`` is r^a s^b with m = n/2."""
    if n < 4 or n % 2:
        raise GroupSpecError("D_n needs even n >= 4")
    m = n // 2

    def mul(x, y):
        a, b = x % m, x // m
        c, d = y % m, y // m
        return (a + (-1) ** b * c) % m + m * ((b + d) % 2)

    labels = []
    for x in range(n):
        a, b = x % m, x // m
        r = "" if a == 0 else ("r" if a == 1 else f"r^{a}")
        labels.append((r + ("s" if b else "")) or "1")
    return from_table([[mul(x, y) for y in range(n)] for x in range(n)], f"D{n}", labels)


def dicyclic(two_m: int, name: Optional[str] = None) -> FiniteGroup:
    """Dic(Z_{2m}): element ``a + 2m*e`` is x^a y^e, y x y^-1 = x^-1, y^2 = x^m."""
    if two_m < 2 or two_m % 2:
        raise GroupSpecError(
            f"Dic(Z{two_m}) needs an even cyclic group (an order-2 element to square onto)"
        )
    n2, m = two_m, two_m // 2

    def mul(x, y):
        a, e = x % n2, x // n2
        c, f = y % n2, y // n2
        s = a + (c if e == 0 else -c)
        if e and f:
            s += m
        return s % n2 + n2 * ((e + f) % 2)

    n = 2 * n2
    if n2 == 4:
        labels = ["1", "i", "-1", "-i", "j", "k", "-j", "-k"]
    else:
        labels = []
        for x in range(n):
            a, e = x % n2, x // n2
            xa = "" if a == 0 else ("x" if a == 1 else f"x^{a}")
            labels.append((xa + ("y" if e else "")) or "1")
    witness = DicyclicWitness(A=frozenset(range(n2)), z=m, q=n2)
    return from_table(
        [[mul(x, y) for y in range(n)] for x in range(n)],
        name or f"Dic(Z{two_m})",
        labels,
        witness,
    )


def quaternion() -> FiniteGroup:
    return dicyclic(4, "Q8")


def direct_product(*factors: FiniteGroup, name: Optional[str] = None) -> FiniteGroup:
    """Direct product with lexicographic element order over the factors."""
    if len(factors) == 1:
        return factors[0]
    sizes = [G.order for G in factors]
    tuples = list(product(*(range(s) for s in sizes)))
    index = {t: x for x, t in enumerate(tuples)}
    mul = [
        [index[tuple(G.mul[a][b] for G, a, b in zip(factors, s, t))] for t in tuples]
        for s in tuples
    ]
    labels = ["(" + ",".join(G.labels[a] for G, a in zip(factors, t)) + ")" for t in tuples]
    return from_table(mul, name or "x".join(G.name for G in factors), labels)


_ATOM = re.compile(r"(Z(\d+)|D(\d+)|Q8|Dic\(Z(\d+)\))(?:\^(\d+))?$")


def parse_spec(spec: str) -> list:
    """Split a group spec into a list of atom strings, expanding ``^k``."""
    spec = spec.strip()
    if not spec:
        raise GroupSpecError("empty group spec")
    atoms = []
    for part in spec.split("x"):
        m = _ATOM.match(part)
        if m is None:
            raise GroupSpecError(f"cannot parse {part!r} in group spec {spec!r}")
        reps = int(m.group(5)) if m.group(5) else 1
        if reps < 1:
            raise GroupSpecError(f"bad exponent in {part!r}")
        atoms.extend([m.group(1)] * reps)
    return atoms


def _build_atom(atom: str) -> FiniteGroup:
    if atom == "Q8":
        return quaternion()
    if atom.startswith("Dic"):
        return dicyclic(int(atom[5:-1]))
    if atom.startswith("D"):
        return dihedral(int(atom[1:]))
    return cyclic(int(atom[1:]))


def build_group(spec: str, cap: Optional[int] = None) -> FiniteGroup:
    """Build a group from a spec string such as ``"Q8xZ2^2"`` or ``"Dic(Z6)"``."""
    atoms = parse_spec(spec)
    n = 1
    for atom in atoms:
        if atom == "Q8":
            n *= 8
        elif atom.startswith("Dic"):
            n *= 2 * int(atom[5:-1])
        else:
            n *= int(atom[1:])
    check_cap(n, cap)
    factors = [_build_atom(a) for a in atoms]
    if len(factors) == 1:
        return factors[0]
    return direct_product(*factors, name=spec.strip())


# ---------------------------------------------------------------------------
# subgroups


def subgroup_generated(G: FiniteGroup, S: Iterable[int]) -> frozenset:
    """Closure of S under multiplication (finite, so inverses come for free)."""
    gens = sorted(set(S))
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = G.mul[x][s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def centralizer(G: FiniteGroup, S: Iterable[int]) -> frozenset:
    S = list(S)
    return frozenset(g for g in G.elements if all(G.commute(g, s) for s in S))


def centre(G: FiniteGroup) -> frozenset:
    return centralizer(G, G.elements)


def is_subgroup(G: FiniteGroup, H: Iterable[int]) -> bool:
    H = frozenset(H)
    return G.identity in H and all(G.mul[a][G.inv[b]] in H for a in H for b in H)


def is_normal(G: FiniteGroup, H: Iterable[int]) -> bool:
    H = frozenset(H)
    return all(G.conj(g, h) in H for g in G.elements for h in H)


def product_set(G: FiniteGroup, H: Iterable[int], K: Iterable[int]) -> frozenset:
    K = list(K)
    return frozenset(G.mul[h][k] for h in H for k in K)


def all_subgroups(G: FiniteGroup) -> list:
    """Every subgroup, by repeatedly adjoining one element to known subgroups."""
    found = {frozenset([G.identity])}
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            for g in G.elements:
                if g in H:
                    continue
                K = subgroup_generated(G, H | {g})
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    return sorted(found, key=lambda H: (len(H), sorted(H)))


def generating_sequence(G: FiniteGroup) -> list:
    """Greedy: keep adjoining the smallest element outside the current closure."""
    gens: list = []
    H = frozenset([G.identity])
    while len(H) < G.order:
        g = min(x for x in G.elements if x not in H)
        gens.append(g)
        H = subgroup_generated(G, gens)
    return gens


# ---------------------------------------------------------------------------
# homomorphisms


def extend_homomorphism(
    G: FiniteGroup, H: FiniteGroup, gens: Sequence[int], images: Sequence[int], injective=False
) -> Optional[dict]:
    """Extend ``gens[t] -> images[t]`` to a homomorphism on the subgroup they generate.

    Returns the map as a dict, or None if the assignment is inconsistent
    (or, with ``injective``, not one-to-one).
    """
    phi = {G.identity: H.identity}
    used = {H.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        fx = phi[x]
        for g, h in zip(gens, images):
            y = G.mul[x][g]
            fy = H.mul[fx][h]
            known = phi.get(y)
            if known is None:
                if injective and fy in used:
                    return None
                phi[y] = fy
                used.add(fy)
                queue.append(y)
            elif known != fy:
                return None
    return phi


def is_homomorphism(G: FiniteGroup, image: Sequence[int]) -> bool:
    mul = G.mul
    return all(
        image[mul[x][y]] == mul[image[x]][image[y]] for x in G.elements for y in G.elements
    )


def is_automorphism(phi: GroupMap) -> bool:
    return phi.image[0] == 0 and is_homomorphism(phi.group, phi.image)


def iter_automorphisms(G: FiniteGroup) -> Iterator[GroupMap]:
    gens = generating_sequence(G)
    n = G.order

    def rec(images):
        k = len(images)
        if k == len(gens):
            phi = extend_homomorphism(G, G, gens, images, injective=True)
            yield GroupMap(G, tuple(phi[x] for x in range(n)))
            return
        want = G.element_order(gens[k])
        for cand in G.elements:
            if G.element_order(cand) != want:
                continue
            trial = images + [cand]
            if extend_homomorphism(G, G, gens[: k + 1], trial, injective=True) is not None:
                yield from rec(trial)

    yield from rec([])


def enumerate_automorphisms(G: FiniteGroup, cap: Optional[int] = None) -> AutomorphismSet:
    check_cap(G.order, cap)
    return AutomorphismSet(tuple(iter_automorphisms(G)), mode="group", stabilized=True)


@dataclass(frozen=True)
class AffineWitness:
    """``phi(x) == alpha(g * x)`` with ``alpha`` a group automorphism."""

    alpha: GroupMap
    g: int


def is_affine(phi: GroupMap) -> Optional[AffineWitness]:
    G = phi.group
    a = phi.image[0]
    a_inv = G.inv[a]
    normalized = tuple(G.mul[a_inv][y] for y in phi.image)
    if not is_homomorphism(G, normalized):
        return None
    # alpha' = normalized is an automorphism; phi = L_a o alpha', and the
    # alpha(g x) form needs alpha'(g) = a, i.e. g = alpha'^-1(a).
    g = normalized.index(a)
    g_inv = G.inv[g]
    alpha = GroupMap(G, tuple(phi.image[G.mul[g_inv][y]] for y in G.elements))
    return AffineWitness(alpha, g)


# ---------------------------------------------------------------------------
# recognizers


def index_two_subgroups(G: FiniteGroup) -> list:
    """Kernels of the surjections G -> Z2, sorted lexicographically."""
    Z2 = cyclic(2)
    gens = generating_sequence(G)
    kernels = set()
    for bits in product((0, 1), repeat=len(gens)):
        if not any(bits):
            continue
        phi = extend_homomorphism(G, Z2, gens, bits)
        if phi is not None:
            kernels.add(tuple(sorted(x for x, v in phi.items() if v == 0)))
    return [frozenset(k) for k in sorted(kernels)]


def is_valid_dicyclic(G: FiniteGroup, w: DicyclicWitness) -> bool:
    A = w.A
    if not is_subgroup(G, A) or 2 * len(A) != G.order:
        return False
    if w.z not in A or w.z == G.identity or G.mul[w.z][w.z] != G.identity:
        return False
    if w.q in A or G.mul[w.q][w.q] != w.z:
        return False
    return all(G.conj(w.q, a) == G.inv[a] for a in A)


def is_dicyclic_type(G: FiniteGroup) -> Optional[DicyclicWitness]:
    for A in index_two_subgroups(G):
        As = sorted(A)
        if not all(G.commute(a, b) for a in As for b in As):
            continue
        for z in As:
            if z == G.identity or G.mul[z][z] != G.identity:
                continue
            for q in G.elements:
                if q in A or G.mul[q][q] != z:
                    continue
                if all(G.conj(q, a) == G.inv[a] for a in As):
                    return DicyclicWitness(A, z, q)
    return None


def quaternion_elements(G: FiniteGroup, i: int, j: int) -> tuple:
    """``i^m j^n`` for m in 0..3, n in 0..1, at index ``m + 4*n``."""
    return tuple(G.mul[G.power(i, m)][G.power(j, n)] for n in range(2) for m in range(4))


def _q8_relations(G: FiniteGroup, i: int, j: int) -> bool:
    if G.element_order(i) != 4 or G.element_order(j) != 4:
        return False
    if G.power(i, 2) != G.power(j, 2):
        return False
    return G.conj(j, i) == G.inv[i]


def is_valid_ham2(G: FiniteGroup, d: Ham2Decomposition) -> bool:
    if not _q8_relations(G, d.i, d.j) or d.k != G.mul[d.i][d.j]:
        return False
    Q = subgroup_generated(G, [d.i, d.j])
    B = d.B
    if len(Q) != 8 or not is_subgroup(G, B):
        return False
    if any(G.mul[b][b] != G.identity for b in B):
        return False
    if Q & B != {G.identity} or product_set(G, Q, B) != frozenset(G.elements):
        return False
    return is_normal(G, Q) and is_normal(G, B)


def decompose_hamiltonian_2group(G: FiniteGroup) -> Optional[Ham2Decomposition]:
    if G.order % 8:
        return None
    order4 = [x for x in G.elements if G.element_order(x) == 4]
    involutions = [x for x in G.elements if G.element_order(x) == 2]
    for i in order4:
        for j in order4:
            if G.commute(i, j) or not _q8_relations(G, i, j):
                continue
            Q = subgroup_generated(G, [i, j])
            B = frozenset([G.identity])
            for t in involutions:
                if t in product_set(G, Q, B):
                    continue
                if any(not G.commute(t, b) for b in B):
                    break
                B = subgroup_generated(G, B | {t})
            d = Ham2Decomposition(i, j, G.mul[i][j], B)
            if is_valid_ham2(G, d):
                return d
    return None


def is_hamiltonian_2group(G: FiniteGroup) -> bool:
    return decompose_hamiltonian_2group(G) is not None
