"""Exhaustive enumeration of small groups and skew braces.

Two independent routes produce the braces on a fixed additive group:

* :func:`braces_on` searches for maps a -> lam_a into Aut(A, +) that close
  up to a regular subgroup {(a, lam_a)} of the holomorph, then sets
  a.b = a + lam_a(b);
* :func:`braces_raw_oracle` fills the multiplication table cell by cell,
  propagating only associativity, the Latin property and the left brace law.

Both feed their output through the full axiom scan of :func:`make_brace`.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .brace import SkewBrace, is_two_sided, make_brace
from .errors import TooLarge
from .groups import (
    FiniteGroup,
    are_isomorphic,
    automorphisms,
    center,
    make_group,
    order_profile,
    solvability_class,
)

MAX_ENUM_ORDER = 8
MAX_ORACLE_ORDER = 6
MAX_AUT = 168  # |GL(3, 2)|, the largest automorphism group at order <= 8


def worker_count() -> int:
    """Worker cap from BRACEFORGE_THREADS (default 1)."""
    raw = os.environ.get("BRACEFORGE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# Cayley table completion


class _Conflict(Exception):
    pass


class TableSearch:
    """Backtracking completion of an n x n table with identity 0.

    Every assignment is propagated through the Latin property and all
    associativity equations (xy)z = x(yz): whenever three of the four cells
    of an equation are known the fourth is forced.  ``row_rule`` may add a
    further per-row propagator; it is called as ``row_rule(search, a, b)``
    after cell (a, b) is set.
    """

    def __init__(self, n: int, row_rule: Optional[Callable] = None):
        self.n = n
        self.row_rule = row_rule
        self.T = [-1] * (n * n)
        self.rowpos = [-1] * (n * n)  # rowpos[a*n + v] = b with T[a][b] = v
        self.colpos = [-1] * (n * n)  # colpos[b*n + v] = a with T[a][b] = v
        self.queue: list = []

    def copy(self) -> "TableSearch":
        other = TableSearch.__new__(TableSearch)
        other.n = self.n
        other.row_rule = self.row_rule
        other.T = self.T[:]
        other.rowpos = self.rowpos[:]
        other.colpos = self.colpos[:]
        other.queue = []
        return other

    def get(self, a: int, b: int) -> int:
        return self.T[a * self.n + b]

    def force(self, a: int, b: int, v: int) -> None:
        n = self.n
        cur = self.T[a * n + b]
        if cur == v:
            return
        if cur >= 0 or self.rowpos[a * n + v] >= 0 or self.colpos[b * n + v] >= 0:
            raise _Conflict
        self.T[a * n + b] = v
        self.rowpos[a * n + v] = b
        self.colpos[b * n + v] = a
        self.queue.append((a, b))

    def propagate(self) -> None:
        while self.queue:
            a, b = self.queue.pop()
            self._associativity(a, b)
            if self.row_rule is not None:
                self.row_rule(self, a, b)

    def _associativity(self, p: int, q: int) -> None:
        n, T, rowpos, colpos = self.n, self.T, self.rowpos, self.colpos
        v = T[p * n + q]
        force = self.force
        for t in range(n):
            # (p q) t = p (q t): cells (p,q)=v, (v,t), (q,t), (p, qt)
            w = T[q * n + t]
            r = T[v * n + t]
            if w >= 0:
                if r >= 0:
                    force(p, w, r)
                else:
                    r4 = T[p * n + w]
                    if r4 >= 0:
                        force(v, t, r4)
            elif r >= 0:
                w2 = rowpos[p * n + r]
                if w2 >= 0:
                    force(q, t, w2)
            # (t p) q = t (p q): cells (t,p), (tp, q), (p,q)=v, (t, v)
            u = T[t * n + p]
            r4 = T[t * n + v]
            if u >= 0:
                r2 = T[u * n + q]
                if r2 >= 0:
                    force(t, v, r2)
                elif r4 >= 0:
                    force(u, q, r4)
            elif r4 >= 0:
                u2 = colpos[q * n + r4]
                if u2 >= 0:
                    force(t, p, u2)
            # (x y) q = x (y q) with xy = p: cells (x,y)=p, (p,q)=v, (y,q), (x, yq)
            y = rowpos[t * n + p]
            if y >= 0:
                w = T[y * n + q]
                if w >= 0:
                    force(t, w, v)
                else:
                    w2 = rowpos[t * n + v]
                    if w2 >= 0:
                        force(y, q, w2)
            # (p y) z = p (y z) with yz = q: cells (p,y), (py, z), (y,z)=q, (p,q)=v
            z = rowpos[t * n + q]
            if z >= 0:
                u = T[p * n + t]
                if u >= 0:
                    force(u, z, v)
                else:
                    u2 = colpos[z * n + v]
                    if u2 >= 0:
                        force(p, t, u2)

    def solutions(self):
        """Yield every completion as a list of rows."""
        try:
            self.propagate()
        except _Conflict:
            return
        yield from self._search()

    def _search(self):
        n = self.n
        try:
            cell = self.T.index(-1)
        except ValueError:
            yield [self.T[a * n:(a + 1) * n] for a in range(n)]
            return
        a, b = divmod(cell, n)
        for v in range(n):
            if self.rowpos[a * n + v] >= 0 or self.colpos[b * n + v] >= 0:
                continue
            child = self.copy()
            try:
                child.force(a, b, v)
                child.propagate()
            except _Conflict:
                continue
            yield from child._search()


def _identity_search(n: int, row_rule=None) -> TableSearch:
    s = TableSearch(n, row_rule)
    for x in range(n):
        s.force(0, x, x)
        s.force(x, 0, x)
    return s


def group_tables(n: int):
    """Every group table on 0..n-1 with identity 0 (labelled, not up to isomorphism)."""
    for rows in _identity_search(n).solutions():
        yield rows


def group_invariants(G: FiniteGroup) -> tuple:
    return (G.order, G.is_abelian, order_profile(G), len(center(G)), solvability_class(G))


@lru_cache(maxsize=None)
def all_groups(n: int) -> tuple:
    """One group per isomorphism class of order n (n <= 8), in discovery order."""
    if n < 1:
        raise ValueError("order must be positive")
    if n > MAX_ENUM_ORDER:
        raise TooLarge(f"group enumeration limited to order <= {MAX_ENUM_ORDER}")
    reps: list = []
    for rows in group_tables(n):
        G = make_group(rows)
        inv = group_invariants(G)
        if any(group_invariants(H) == inv and are_isomorphic(G, H) for H in reps):
            continue
        reps.append(G)
    return tuple(reps)


# ---------------------------------------------------------------------------
# lambda-map method


def _aut_data(add: FiniteGroup):
    auts = automorphisms(add)
    if len(auts) > MAX_AUT:
        raise TooLarge(f"|Aut| = {len(auts)} exceeds {MAX_AUT}")
    index = {f: i for i, f in enumerate(auts)}
    comp = [[index[tuple(f[x] for x in g)] for g in auts] for f in auts]
    return auts, comp


def _closure(add_rows, auts, comp, gens, n):
    """Subgroup of the holomorph generated by gens, as {a: aut index}, or None on clash."""
    lam = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            i = lam[a]
            f = auts[i]
            row = add_rows[a]
            ci = comp[i]
            for b, j in gens:
                c = row[f[b]]
                k = ci[j]
                seen = lam.get(c)
                if seen is None:
                    lam[c] = k
                    nxt.append(c)
                elif seen != k:
                    return None
        frontier = nxt
    return lam


def _lambda_partition(add: FiniteGroup, first_choice: Optional[int]) -> list:
    """All complete lambda maps, optionally restricted to lam_1 = auts[first_choice]."""
    n = add.order
    auts, comp = _aut_data(add)
    rows = add.rows
    found: list = []

    def rec(gens, lam):
        if len(lam) == n:
            found.append(tuple(lam[a] for a in range(n)))
            return
        a = next(x for x in range(n) if x not in lam)
        choices = range(len(auts))
        if first_choice is not None and not gens:
            choices = [first_choice]
        for i in choices:
            new_gens = gens + [(a, i)]
            closed = _closure(rows, auts, comp, new_gens, n)
            if closed is not None:
                rec(new_gens, closed)

    if n == 1:
        return [(0,)] if first_choice in (None, 0) else []
    rec([], {0: 0})
    return found


def _mul_from_lambda(add: FiniteGroup, auts, lam: tuple) -> np.ndarray:
    images = np.array([auts[i] for i in lam], dtype=np.intp)  # images[a, b] = lam_a(b)
    return add.table[np.arange(add.order)[:, None], images]


def _check_lambda_guard(add: FiniteGroup) -> None:
    if add.order > MAX_ENUM_ORDER:
        raise TooLarge(f"brace enumeration limited to order <= {MAX_ENUM_ORDER}")


def lambda_maps(add: FiniteGroup, workers: Optional[int] = None) -> list:
    """Every map a -> lam_a (as Aut indices) yielding a skew brace on ``add``.

    The search is partitioned over the choice of lam at element 1.
    """
    _check_lambda_guard(add)
    auts, _ = _aut_data(add)
    if add.order == 1:
        return [(0,)]
    workers = worker_count() if workers is None else workers
    parts = list(range(len(auts)))
    if workers > 1 and len(parts) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_lambda_partition, [add] * len(parts), parts))
    else:
        chunks = [_lambda_partition(add, p) for p in parts]
    return [lam for chunk in chunks for lam in chunk]


def braces_on(add: FiniteGroup, workers: Optional[int] = None) -> tuple:
    """All skew braces with additive group ``add``, each re-validated by a full scan."""
    auts = automorphisms(add)
    out = []
    seen = set()
    for lam in lambda_maps(add, workers):
        mul = make_group(_mul_from_lambda(add, auts, lam))
        B = make_brace(add, mul)
        if B.key not in seen:
            seen.add(B.key)
            out.append(B)
    return tuple(out)


# ---------------------------------------------------------------------------
# raw oracle


def _left_law_rule(add: FiniteGroup):
    P = add.rows
    neg = add.inv
    n = add.order

    def rule(s: TableSearch, a: int, p: int) -> None:
        # f = row a of the product; f(b + c) = f(b) - a + f(c)
        T = s.T
        base = a * n
        fp = T[base + p]
        na = neg[a]
        for x in range(n):
            fx = T[base + x]
            if fx >= 0:
                # b = p, c = x  and  b = x, c = p
                s.force(a, P[p][x], P[P[fp][na]][fx])
                s.force(a, P[x][p], P[P[fx][na]][fp])
                # x = b + c with b = p: f(c) = a - f(p) + f(x), c = -p + x
                s.force(a, P[neg[p]][x], P[P[a][neg[fp]]][fx])
                # x = b + c with c = p: f(b) = f(x) - f(p) + a, b = x - p
                s.force(a, P[x][neg[p]], P[P[fx][neg[fp]]][a])
                # p = b + c with b = x: f(c) = a - f(x) + f(p), c = -x + p
                s.force(a, P[neg[x]][p], P[P[a][neg[fx]]][fp])
                # p = b + c with c = x: f(b) = f(p) - f(x) + a, b = p - x
                s.force(a, P[p][neg[x]], P[P[fp][neg[fx]]][a])

    return rule


def braces_raw_oracle(add: FiniteGroup) -> tuple:
    """All skew braces on ``add`` by direct table search (n <= 6)."""
    n = add.order
    if n > MAX_ORACLE_ORDER:
        raise TooLarge(f"raw oracle limited to order <= {MAX_ORACLE_ORDER}")
    out = []
    for rows in _identity_search(n, _left_law_rule(add)).solutions():
        out.append(make_brace(add, make_group(rows)))
    return tuple(out)


def table_pairs(braces) -> set:
    return {(B.add.key, B.mul.key) for B in braces}


# ---------------------------------------------------------------------------
# corpus


@dataclass
class BraceCorpus:
    order: int
    braces: tuple
    provenance: str = "lambda-method"
    invariant_buckets: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.braces)


def bucket_key(B: SkewBrace) -> tuple:
    return (group_invariants(B.add), group_invariants(B.mul), is_two_sided(B))


@lru_cache(maxsize=None)
def _corpus_order(n: int) -> BraceCorpus:
    braces: list = []
    seen: set = set()
    for G in all_groups(n):
        for B in braces_on(G):
            if B.key not in seen:
                seen.add(B.key)
                braces.append(B)
    buckets: dict = {}
    for i, B in enumerate(braces):
        buckets.setdefault(bucket_key(B), []).append(i)
    return BraceCorpus(order=n, braces=tuple(braces), invariant_buckets=buckets)


def corpus(n_max: int) -> dict:
    """{n: BraceCorpus} for every n in 1..n_max."""
    if n_max > MAX_ENUM_ORDER:
        raise TooLarge(f"corpus limited to order <= {MAX_ENUM_ORDER}")
    return {n: _corpus_order(n) for n in range(1, n_max + 1)}


def corpus_braces(n_max: int) -> list:
    return [B for c in corpus(n_max).values() for B in c.braces]
