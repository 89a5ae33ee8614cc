"""Finite groups stored as Cayley tables over the indices 0..n-1.

The identity is always index 0.  Subsets of the carrier (subgroups, series
terms) are plain sorted tuples of indices; see :func:`element_set`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotASubgroup,
    NotBijectiveRows,
    NotNormal,
    TableShapeError,
    TooShort,
)

ElementSet = tuple  # sorted tuple of indices
Permutation = tuple  # image tuple of a bijection of 0..n-1


def element_set(items: Iterable[int]) -> ElementSet:
    return tuple(sorted(set(int(i) for i in items)))


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A validated group of order ``order``; build it with :func:`make_group`."""

    order: int
    table: np.ndarray = field(repr=False)
    inverses: np.ndarray = field(repr=False)

    @cached_property
    def rows(self) -> tuple:
        return tuple(tuple(int(x) for x in row) for row in self.table)

    @cached_property
    def inv(self) -> tuple:
        return tuple(int(x) for x in self.inverses)

    @cached_property
    def key(self) -> bytes:
        return self.table.astype(np.int16).tobytes()

    @cached_property
    def _hash(self) -> int:
        return hash((self.order, self.key))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.order == other.order and self.key == other.key

    @property
    def identity(self) -> int:
        return 0

    @property
    def carrier(self) -> ElementSet:
        return tuple(range(self.order))

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        result = 0
        for _ in range(k):
            result = self.rows[result][a]
        return result

    def element_order(self, a: int) -> int:
        x, k = a, 1
        while x != 0:
            x = self.rows[x][a]
            k += 1
        return k

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def to_list(self) -> list:
        return [list(r) for r in self.rows]


def _as_table(table) -> np.ndarray:
    try:
        arr = np.asarray(table)
    except ValueError as exc:
        raise TableShapeError(f"table is not rectangular: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise TableShapeError(f"table must be a non-empty square array, got shape {arr.shape}")
    if arr.dtype == object or not np.issubdtype(arr.dtype, np.integer):
        if arr.size and not all(float(x).is_integer() for x in arr.flat):
            raise TableShapeError("table entries must be integers")
        arr = arr.astype(np.int64)
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        bad = tuple(int(i) for i in np.argwhere((arr < 0) | (arr >= n))[0])
        raise TableShapeError(f"entry at {bad} is outside 0..{n - 1}", witness=bad)
    return arr.astype(np.intp)


def find_identity(table) -> Optional[int]:
    """Two-sided identity of a raw table, or None."""
    arr = _as_table(table)
    ident = np.arange(arr.shape[0])
    for e in range(arr.shape[0]):
        if np.array_equal(arr[e], ident) and np.array_equal(arr[:, e], ident):
            return e
    return None


def _swap_relabel(arr: np.ndarray, e: int) -> np.ndarray:
    perm = np.arange(arr.shape[0])
    perm[0], perm[e] = e, 0
    # perm is an involution, so it is its own inverse
    return perm[arr[np.ix_(perm, perm)]]


def associativity_witness(table: np.ndarray) -> Optional[tuple]:
    """First triple (a, b, c) with (ab)c != a(bc), scanning all n^3 triples."""
    left = table[table]  # left[a, b, c] = table[table[a, b], c]
    right = table[:, table]  # right[a, b, c] = table[a, table[b, c]]
    bad = np.argwhere(left != right)
    if len(bad):
        return tuple(int(x) for x in bad[0])
    return None


def make_group(table) -> FiniteGroup:
    """Validate a Cayley table and return it with the identity relabelled to 0.

    Raises NoIdentity, NoInverse, NotBijectiveRows or NotAssociative with a
    witness naming the failing element or triple.
    """
    arr = _as_table(table)
    n = arr.shape[0]
    e = find_identity(arr)
    if e is None:
        # name where the expected identity 0 fails, as (0, x, 0x, x0)
        x = int(np.flatnonzero((arr[0] != np.arange(n)) | (arr[:, 0] != np.arange(n)))[0])
        w = (0, x, int(arr[0, x]), int(arr[x, 0]))
        raise NoIdentity(f"no two-sided identity element; 0 fails at {x}: 0x = {w[2]}, x0 = {w[3]}", witness=w)
    if e != 0:
        arr = _swap_relabel(arr, e)
    is_zero = arr == 0
    inverses = np.empty(n, dtype=np.intp)
    for a in range(n):
        hits = np.flatnonzero(is_zero[a] & is_zero[:, a])
        if len(hits) == 0:
            raise NoInverse(f"element {a} has no two-sided inverse", witness=a)
        inverses[a] = hits[0]
    for label, lines in (("row", arr), ("column", arr.T)):
        bad = np.flatnonzero((np.sort(lines, axis=1) != np.arange(n)).any(axis=1))
        if len(bad):
            i = int(bad[0])
            values, counts = np.unique(lines[i], return_counts=True)
            dup = int(values[counts > 1][0])
            raise NotBijectiveRows(f"{label} {i} repeats value {dup}", witness=(label, i, dup))
    witness = associativity_witness(arr)
    if witness is not None:
        raise NotAssociative(f"(ab)c != a(bc) at (a, b, c) = {witness}", witness=witness)
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    inverses.setflags(write=False)
    return FiniteGroup(order=n, table=arr, inverses=inverses)


def trusted_group(table) -> FiniteGroup:
    """Wrap a table already known to be a group with identity 0 (no checks)."""
    arr = np.ascontiguousarray(np.asarray(table, dtype=np.intp))
    inverses = np.argmax(arr == 0, axis=1).astype(np.intp)
    arr.setflags(write=False)
    inverses.setflags(write=False)
    return FiniteGroup(order=arr.shape[0], table=arr, inverses=inverses)


# ---------------------------------------------------------------------------
# subgroups


def subgroup_generate(G: FiniteGroup, S: Iterable[int]) -> ElementSet:
    """Smallest subgroup of G containing S."""
    gens = [s for s in set(S) if s != 0]
    rows = G.rows
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            row = rows[x]
            for s in gens:
                y = row[s]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


def is_subgroup(G: FiniteGroup, H: Sequence[int]) -> bool:
    if 0 not in H:
        return False
    idx = np.asarray(H, dtype=np.intp)
    mask = np.zeros(G.order, dtype=bool)
    mask[idx] = True
    return bool(mask[G.table[np.ix_(idx, idx)]].all())


def _mask(n: int, H: Sequence[int]) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    mask[np.asarray(H, dtype=np.intp)] = True
    return mask


def is_normal(G: FiniteGroup, H: Sequence[int], verify: bool = False) -> bool:
    """True iff g h g^-1 lies in H for every g in G and h in H."""
    if verify and not is_subgroup(G, H):
        raise NotASubgroup(f"{tuple(H)} is not a subgroup", witness=tuple(H))
    h = np.asarray(H, dtype=np.intp)
    conj = G.table[G.table[:, h], G.inverses[:, None]]
    return bool(_mask(G.order, H)[conj].all())


def commutator(G: FiniteGroup, x: int, y: int) -> int:
    """x y x^-1 y^-1."""
    r, inv = G.rows, G.inv
    return r[r[r[x][y]][inv[x]]][inv[y]]


def commutator_subgroup(G: FiniteGroup, X: Sequence[int], Y: Sequence[int]) -> ElementSet:
    x = np.asarray(X, dtype=np.intp)[:, None]
    y = np.asarray(Y, dtype=np.intp)[None, :]
    t = G.table
    comms = t[t[t[x, y], G.inverses[x]], G.inverses[y]]
    return subgroup_generate(G, np.unique(comms).tolist())


def iterated_commutator(G: FiniteGroup, xs: Sequence[int]) -> int:
    """Left-normed commutator [[...[x1, x2], x3], ..., xk]."""
    if len(xs) < 2:
        raise TooShort("an iterated commutator needs at least two entries")
    acc = xs[0]
    for x in xs[1:]:
        acc = commutator(G, acc, x)
    return acc


@lru_cache(maxsize=8192)
def derived_series(G: FiniteGroup) -> tuple:
    """G, G', G'', ... up to and including the first repeated term."""
    series = [G.carrier]
    for _ in range(G.order):
        nxt = commutator_subgroup(G, series[-1], series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
    return tuple(series)


def solvability_class(G: FiniteGroup) -> Optional[int]:
    """Derived length; 0 for the trivial group, None when G is not solvable."""
    series = derived_series(G)
    if series[-1] != (0,):
        return None
    return len(series) - 1


@lru_cache(maxsize=8192)
def lower_central_series(G: FiniteGroup) -> tuple:
    series = [G.carrier]
    for _ in range(G.order):
        nxt = commutator_subgroup(G, series[-1], G.carrier)
        if nxt == series[-1]:
            break
        series.append(nxt)
    return tuple(series)


def nilpotency_class(G: FiniteGroup) -> Optional[int]:
    """Smallest c with gamma_{c+1} trivial; None when G is not nilpotent."""
    series = lower_central_series(G)
    if series[-1] != (0,):
        return None
    return len(series) - 1


@lru_cache(maxsize=8192)
def center(G: FiniteGroup) -> ElementSet:
    central = (G.table == G.table.T).all(axis=1)
    return tuple(int(z) for z in np.flatnonzero(central))


def power_subgroup(G: FiniteGroup, p: int) -> ElementSet:
    """Subgroup generated by all p-th powers."""
    return subgroup_generate(G, {G.power(g, p) for g in range(G.order)})


def coset_map(G: FiniteGroup, N: Sequence[int]) -> np.ndarray:
    """Index of the left coset gN of each g; cosets numbered by least element."""
    n = G.order
    cmap = np.full(n, -1, dtype=np.intp)
    k = 0
    h = np.asarray(N, dtype=np.intp)
    for g in range(n):
        if cmap[g] < 0:
            cmap[G.table[g, h]] = k
            k += 1
    return cmap


def quotient_group(G: FiniteGroup, N: Sequence[int]) -> tuple:
    """Return (G/N, coset map).  Raises NotNormal unless N is a normal subgroup."""
    if not is_subgroup(G, N):
        raise NotNormal(f"{tuple(N)} is not a subgroup", witness=tuple(N))
    if not is_normal(G, N):
        raise NotNormal(f"{tuple(N)} is not normal", witness=tuple(N))
    cmap = coset_map(G, N)
    k = int(cmap.max()) + 1
    reps = np.array([int(np.flatnonzero(cmap == c)[0]) for c in range(k)], dtype=np.intp)
    qtable = cmap[G.table[np.ix_(reps, reps)]]
    # well-definedness holds for normal N; checked anyway since it is cheap
    if not np.array_equal(cmap[G.table], qtable[np.ix_(cmap, cmap)]):
        raise NotNormal("induced product is not well defined", witness=tuple(N))
    return make_group(qtable), cmap


# ---------------------------------------------------------------------------
# subgroup lattice and automorphisms


@lru_cache(maxsize=4096)
def all_subgroups(G: FiniteGroup) -> tuple:
    """Every subgroup of G, sorted by (size, members)."""
    cyclic = {subgroup_generate(G, [g]) for g in range(G.order)}
    found = set(cyclic)
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclic:
                if not set(C) <= set(H):
                    J = subgroup_generate(G, H + C)
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
        frontier = nxt
    return tuple(sorted(found, key=lambda s: (len(s), s)))


def normal_closure(G: FiniteGroup, S: Iterable[int]) -> ElementSet:
    """Smallest normal subgroup containing S."""
    H = subgroup_generate(G, S)
    while True:
        h = np.asarray(H, dtype=np.intp)
        conj = np.unique(G.table[G.table[:, h], G.inverses[:, None]])
        if len(conj) == len(H):
            return H
        H = subgroup_generate(G, conj.tolist())


@lru_cache(maxsize=4096)
def normal_subgroups(G: FiniteGroup) -> tuple:
    """Every normal subgroup, as joins of normal closures of single elements."""
    principal = {normal_closure(G, [g]) for g in range(G.order)}
    found = set(principal)
    frontier = list(found)
    while frontier:
        nxt = []
        for N in frontier:
            for P in principal:
                if not set(P) <= set(N):
                    J = subgroup_generate(G, N + P)
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
        frontier = nxt
    return tuple(sorted(found, key=lambda s: (len(s), s)))


def _generators(G: FiniteGroup) -> list:
    """Greedy generating set, preferring elements of large order."""
    by_order = sorted(range(1, G.order), key=lambda g: (-G.element_order(g), g))
    gens: list = []
    span: ElementSet = (0,)
    for g in by_order:
        if g not in span:
            gens.append(g)
            span = subgroup_generate(G, gens)
            if len(span) == G.order:
                break
    return gens


def _words(G: FiniteGroup, gens: Sequence[int]) -> list:
    """BFS spanning tree: (element, parent, generator index) for each element."""
    tree = [(0, -1, -1)]
    seen = {0}
    i = 0
    while i < len(tree):
        x = tree[i][0]
        for k, s in enumerate(gens):
            y = G.rows[x][s]
            if y not in seen:
                seen.add(y)
                tree.append((y, x, k))
        i += 1
    return tree


def _extend_hom(G: FiniteGroup, H: FiniteGroup, tree: list, images: Sequence[int]) -> Optional[tuple]:
    """Extend generator images to a bijective homomorphism G -> H, if possible."""
    phi = [-1] * G.order
    phi[0] = 0
    for x, parent, k in tree[1:]:
        phi[x] = H.rows[phi[parent]][images[k]]
    if len(set(phi)) != G.order:
        return None
    gr, hr = G.rows, H.rows
    for a in range(G.order):
        pa = phi[a]
        row = gr[a]
        hrow = hr[pa]
        for b in range(G.order):
            if phi[row[b]] != hrow[phi[b]]:
                return None
    return tuple(phi)


def isomorphisms(G: FiniteGroup, H: FiniteGroup, first_only: bool = False) -> list:
    """All isomorphisms G -> H as image tuples (brute force over generator images)."""
    if G.order != H.order:
        return []
    gens = _generators(G)
    tree = _words(G, gens)
    h_by_order: dict = {}
    for h in range(H.order):
        h_by_order.setdefault(H.element_order(h), []).append(h)
    choices = [h_by_order.get(G.element_order(g), []) for g in gens]
    out = []

    def rec(k: int, images: list) -> bool:
        if k == len(gens):
            phi = _extend_hom(G, H, tree, images)
            if phi is not None:
                out.append(phi)
                return first_only
            return False
        for h in choices[k]:
            if h in images:
                continue
            images.append(h)
            stop = rec(k + 1, images)
            images.pop()
            if stop:
                return True
        return False

    rec(0, [])
    return out


def are_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    if G.order != H.order or G.is_abelian != H.is_abelian:
        return False
    if order_profile(G) != order_profile(H):
        return False
    return bool(isomorphisms(G, H, first_only=True))


@lru_cache(maxsize=1024)
def automorphisms(G: FiniteGroup) -> tuple:
    """Aut(G) as a sorted tuple of image tuples; the identity map comes first."""
    return tuple(sorted(isomorphisms(G, G)))


def order_profile(G: FiniteGroup) -> tuple:
    return tuple(sorted(G.element_order(g) for g in range(G.order)))
