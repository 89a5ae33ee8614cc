"""Skew braces: validation, lambda maps, the star product, ideals and quotients.

A skew brace is stored as two :class:`FiniteGroup` tables on the same carrier
``0..n-1``; ``add`` is the additive group and ``mul`` the multiplicative one.
All universal checks are exhaustive and vectorised over the outermost
quantified variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .errors import (
    IdentityMismatch,
    LeftBraceLawFails,
    NotAnIdeal,
    SeriesTermNotIdeal,
    TooLarge,
    WellDefinednessFailure,
)
from .groups import (
    ElementSet,
    FiniteGroup,
    Permutation,
    all_subgroups,
    center,
    coset_map,
    find_identity,
    is_normal,
    is_subgroup,
    make_group,
    nilpotency_class,
    solvability_class,
    subgroup_generate,
)

MAX_ORDER = 4096
MAX_IDEAL_ORDER = 32
_CHUNK = 1 << 22  # max elements per vectorised block


@dataclass(frozen=True, eq=False)
class SkewBrace:
    order: int
    add: FiniteGroup
    mul: FiniteGroup

    @cached_property
    def key(self) -> tuple:
        return (self.add.key, self.mul.key)

    def __hash__(self) -> int:
        return hash(self.key)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkewBrace):
            return NotImplemented
        return self.key == other.key

    @cached_property
    def lam(self) -> np.ndarray:
        """lam[a, x] = -a + a.x"""
        t = self.add.table[self.add.inverses[:, None], self.mul.table]
        t.setflags(write=False)
        return t

    @cached_property
    def star_table(self) -> np.ndarray:
        """star[a, b] = lam_a(b) - b"""
        t = self.add.table[self.lam, self.add.inverses[None, :]]
        t.setflags(write=False)
        return t

    def plus(self, a: int, b: int) -> int:
        return self.add.rows[a][b]

    def times(self, a: int, b: int) -> int:
        return self.mul.rows[a][b]

    def neg(self, a: int) -> int:
        return self.add.inv[a]

    def recip(self, a: int) -> int:
        return self.mul.inv[a]


def _blocks(n: int, per_outer: int):
    step = max(1, _CHUNK // max(1, per_outer))
    for start in range(0, n, step):
        yield np.arange(start, min(n, start + step))


def _first_mismatch(lhs: np.ndarray, rhs: np.ndarray, offset: int) -> Optional[tuple]:
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        w = [int(x) for x in bad[0]]
        w[0] += offset
        return tuple(w)
    return None


def left_law_witness(add: FiniteGroup, mul: FiniteGroup) -> Optional[tuple]:
    """First (a, b, c) violating a.(b+c) = a.b - a + a.c, or None."""
    A, M, neg = add.table, mul.table, add.inverses
    n = add.order
    for a in _blocks(n, n * n):
        lhs = M[a[:, None, None], A[None, :, :]]
        t1 = A[M[a][:, :, None], neg[a][:, None, None]]
        rhs = A[t1, M[a][:, None, :]]
        w = _first_mismatch(lhs, rhs, int(a[0]))
        if w:
            return w
    return None


def make_brace(add: FiniteGroup, mul: FiniteGroup, trusted: bool = False) -> SkewBrace:
    """Pair two groups on the same carrier into a skew brace.

    The left brace law is checked on all n^3 triples unless ``trusted`` is
    set; only the enumerator passes ``trusted=True``.
    """
    if add.order != mul.order:
        raise IdentityMismatch(f"orders differ: {add.order} vs {mul.order}")
    if add.order > MAX_ORDER:
        raise TooLarge(f"order {add.order} exceeds guard {MAX_ORDER}")
    if not trusted:
        w = left_law_witness(add, mul)
        if w is not None:
            raise LeftBraceLawFails(f"a.(b+c) != a.b - a + a.c at (a, b, c) = {w}", witness=w)
    return SkewBrace(order=add.order, add=add, mul=mul)


def brace_from_tables(add_table, mul_table, trusted: bool = False) -> SkewBrace:
    """Validate raw tables; both must share the same identity element."""
    e_add, e_mul = find_identity(add_table), find_identity(mul_table)
    if e_add is not None and e_mul is not None and e_add != e_mul:
        raise IdentityMismatch(
            f"additive identity {e_add} differs from multiplicative identity {e_mul}",
            witness=(e_add, e_mul),
        )
    # a shared nonzero identity is swapped with 0 in both tables alike
    return make_brace(make_group(add_table), make_group(mul_table), trusted=trusted)


# ---------------------------------------------------------------------------
# basic predicates


def two_sided_witness(A: SkewBrace) -> Optional[tuple]:
    """First (a, b, c) violating (a+b).c = a.c - c + b.c, or None."""
    T, M, neg = A.add.table, A.mul.table, A.add.inverses
    n = A.order
    for a in _blocks(n, n * n):
        lhs = M[T[a][:, :, None], np.arange(n)[None, None, :]]
        t1 = T[M[a][:, None, :], neg[None, None, :]]
        rhs = T[t1, M[None, :, :]]
        w = _first_mismatch(lhs, rhs, int(a[0]))
        if w:
            return w
    return None


@lru_cache(maxsize=16384)
def is_two_sided(A: SkewBrace) -> bool:
    return two_sided_witness(A) is None


def is_classical(A: SkewBrace) -> bool:
    return A.add.is_abelian


def is_trivial(A: SkewBrace) -> bool:
    return bool(np.array_equal(A.add.table, A.mul.table))


def lambda_map(A: SkewBrace, a: int) -> Permutation:
    return tuple(int(x) for x in A.lam[a])


def star(A: SkewBrace, a: int, b: int) -> int:
    return int(A.star_table[a, b])


def check_lambda_homomorphism(A: SkewBrace) -> bool:
    """lam_{a.b} = lam_a o lam_b for all a, b (pointwise on every x)."""
    L, M = A.lam, A.mul.table
    return bool(np.array_equal(L[M], L[:, L]))


def lambda_automorphism_witness(A: SkewBrace) -> Optional[tuple]:
    """First (a, x, y) with lam_a(x + y) != lam_a(x) + lam_a(y)."""
    L, T = A.lam, A.add.table
    n = A.order
    for a in _blocks(n, n * n):
        lhs = L[a[:, None, None], T[None, :, :]]
        rhs = T[L[a][:, :, None], L[a][:, None, :]]
        w = _first_mismatch(lhs, rhs, int(a[0]))
        if w:
            return w
    return None


# ---------------------------------------------------------------------------
# star products and ideals


def additive_span(A: SkewBrace, S: Iterable[int]) -> ElementSet:
    return subgroup_generate(A.add, S)


def star_span(A: SkewBrace, X: Sequence[int], Y: Sequence[int]) -> ElementSet:
    """X*Y: the additive subgroup generated by x*y, x in X, y in Y."""
    if len(X) == 0 or len(Y) == 0:
        return (0,)
    x = np.asarray(X, dtype=np.intp)
    y = np.asarray(Y, dtype=np.intp)
    vals = np.unique(A.star_table[np.ix_(x, y)])
    return subgroup_generate(A.add, vals.tolist())


class IdealCheck(NamedTuple):
    ok: bool
    reason: Optional[str] = None
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


def is_ideal(A: SkewBrace, I: Sequence[int]) -> IdealCheck:
    """Normal in both groups and invariant under every lambda map.

    The reason names the first failing clause: ``additive-subgroup``,
    ``additive-normal``, ``multiplicative-subgroup``,
    ``multiplicative-normal`` or ``lambda-invariant``.
    """
    I = tuple(I)
    if not is_subgroup(A.add, I):
        return IdealCheck(False, "additive-subgroup", I)
    if not is_normal(A.add, I):
        return IdealCheck(False, "additive-normal", I)
    if not is_subgroup(A.mul, I):
        return IdealCheck(False, "multiplicative-subgroup", I)
    if not is_normal(A.mul, I):
        return IdealCheck(False, "multiplicative-normal", I)
    mask = np.zeros(A.order, dtype=bool)
    mask[list(I)] = True
    images = A.lam[:, list(I)]
    bad = np.flatnonzero(~mask[images].all(axis=1))
    if len(bad):
        return IdealCheck(False, "lambda-invariant", int(bad[0]))
    return IdealCheck(True)


def star_series(A: SkewBrace) -> tuple:
    """A = A^(1), A^(2) = A*A, A^(k+1) = A^(k)*A, up to the first repeat."""
    full = tuple(range(A.order))
    series = [full]
    for _ in range(A.order):
        nxt = star_span(A, series[-1], full)
        if nxt == series[-1]:
            break
        series.append(nxt)
    for term in series:
        check = is_ideal(A, term)
        if not check:
            raise SeriesTermNotIdeal(f"star-series term {term} fails {check.reason}", witness=term)
    return tuple(series)


def all_ideals(A: SkewBrace) -> tuple:
    if A.order > MAX_IDEAL_ORDER:
        raise TooLarge(f"ideal enumeration limited to order <= {MAX_IDEAL_ORDER}")
    return tuple(I for I in all_subgroups(A.add) if is_ideal(A, I))


def ideal_closure(A: SkewBrace, S: Iterable[int]) -> ElementSet:
    """Smallest ideal containing S.

    Iterates additive span, additive and multiplicative conjugation and
    lambda images to a fixpoint; a lambda-invariant additive subgroup is
    automatically closed under the product a.b = a + lam_a(b).
    """
    T, M = A.add.table, A.mul.table
    I = additive_span(A, S)
    while True:
        h = np.asarray(I, dtype=np.intp)
        grown = np.concatenate([
            A.lam[:, h].ravel(),
            T[T[:, h], A.add.inverses[:, None]].ravel(),
            M[M[:, h], A.mul.inverses[:, None]].ravel(),
        ])
        new = np.setdiff1d(grown, h)
        if len(new) == 0:
            return I
        I = additive_span(A, I + tuple(int(x) for x in new))


@lru_cache(maxsize=4096)
def ideal_lattice(A: SkewBrace) -> tuple:
    """Every ideal, as joins of principal ideals (no subgroup enumeration)."""
    principal = {ideal_closure(A, [x]) for x in range(A.order)}
    found = set(principal)
    frontier = list(found)
    while frontier:
        nxt = []
        for I in frontier:
            for P in principal:
                if not set(P) <= set(I):
                    J = ideal_closure(A, I + P)
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
        frontier = nxt
    return tuple(sorted(found, key=lambda s: (len(s), s)))


def is_simple(A: SkewBrace) -> bool:
    """No ideals other than {0} and A (the order-1 brace is not simple).

    Decided from principal ideals, so it has no size guard.
    """
    if A.order == 1:
        return False
    full = tuple(range(A.order))
    return all(ideal_closure(A, [x]) == full for x in range(1, A.order))


def quotient_is_trivial(A: SkewBrace, I: Sequence[int]) -> bool:
    """A/I is trivial iff -(a+b) + a.b lies in I for all a, b."""
    mask = np.zeros(A.order, dtype=bool)
    mask[list(I)] = True
    gap = A.add.table[A.add.inverses[A.add.table], A.mul.table]
    return bool(mask[gap].all())


def quotient_brace(A: SkewBrace, I: Sequence[int]) -> tuple:
    """Return (A/I, coset map); cosets a+I numbered by least element."""
    check = is_ideal(A, I)
    if not check:
        raise NotAnIdeal(f"{tuple(I)} is not an ideal ({check.reason})", witness=check.witness)
    cmap = coset_map(A.add, I)
    k = int(cmap.max()) + 1
    reps = np.array([int(np.flatnonzero(cmap == c)[0]) for c in range(k)], dtype=np.intp)
    tables = []
    for G in (A.add, A.mul):
        q = cmap[G.table[np.ix_(reps, reps)]]
        induced = q[np.ix_(cmap, cmap)]
        if not np.array_equal(cmap[G.table], induced):
            bad = tuple(int(x) for x in np.argwhere(cmap[G.table] != induced)[0])
            raise WellDefinednessFailure(f"induced operation not well defined at {bad}", witness=bad)
        tables.append(q)
    return make_brace(make_group(tables[0]), make_group(tables[1])), cmap


def direct_sum(braces: Sequence[SkewBrace]) -> SkewBrace:
    """Componentwise brace; element index is mixed radix, first factor least significant."""
    if not braces:
        raise ValueError("direct_sum needs at least one brace")
    total = 1
    for B in braces:
        total *= B.order
    if total > MAX_ORDER:
        raise TooLarge(f"direct sum of order {total} exceeds guard {MAX_ORDER}")
    add_t = braces[0].add.table
    mul_t = braces[0].mul.table
    for B in braces[1:]:
        add_t = _product_table(add_t, B.add.table)
        mul_t = _product_table(mul_t, B.mul.table)
    return make_brace(make_group(add_t), make_group(mul_t))


def _product_table(T1: np.ndarray, T2: np.ndarray) -> np.ndarray:
    n, m = T1.shape[0], T2.shape[0]
    lo = np.arange(n * m) % n
    hi = np.arange(n * m) // n
    return T1[lo[:, None], lo[None, :]] + n * T2[hi[:, None], hi[None, :]]


# ---------------------------------------------------------------------------
# derived identities


@dataclass
class IdentityResult:
    name: str
    holds: Optional[bool]  # None when the identity does not apply
    witness: Optional[tuple] = None
    required: bool = True


def _scan3(n: int, lhs_fn, rhs_fn) -> Optional[tuple]:
    for a in _blocks(n, n * n):
        w = _first_mismatch(lhs_fn(a), rhs_fn(a), int(a[0]))
        if w:
            return w
    return None


def inverse_identity_witness(A: SkewBrace) -> Optional[tuple]:
    """a.(-b + c) = a - a.b + a.c"""
    T, M, neg = A.add.table, A.mul.table, A.add.inverses
    n = A.order
    return _scan3(
        n,
        lambda a: M[a[:, None, None], T[neg][None, :, :]],
        lambda a: T[T[a[:, None, None], neg[M[a]][:, :, None]], M[a][:, None, :]],
    )


def star_distributivity_witness(A: SkewBrace) -> Optional[tuple]:
    """a*(b + c) = a*b + b + a*c - b"""
    T, S, neg = A.add.table, A.star_table, A.add.inverses
    n = A.order
    b = np.arange(n)

    def rhs(a):
        t = T[T[S[a][:, :, None], b[None, :, None]], S[a][:, None, :]]
        return T[t, neg[b][None, :, None]]

    return _scan3(n, lambda a: S[a[:, None, None], T[None, :, :]], rhs)


def conjugation_witness(A: SkewBrace) -> Optional[tuple]:
    """c^-1.(a + b).c = (c^-1.a.c) + (c^-1.b.c); witness is (c, a, b)."""
    T, M, minv = A.add.table, A.mul.table, A.mul.inverses
    conj = M[M[minv], np.arange(A.order)[:, None]]  # conj[c, x] = c^-1 . x . c
    return _scan3(
        A.order,
        lambda c: conj[c[:, None, None], T[None, :, :]],
        lambda c: T[conj[c][:, :, None], conj[c][:, None, :]],
    )


def nahodka_witness(A: SkewBrace) -> Optional[tuple]:
    """(-c + b.c - b) + a*d = a*d + (-c + b.c - b) for all a, b, c, d.

    The two bracketed terms range independently over pairs (b, c) and
    (a, d), so the n^4 scan reduces exactly to commuting every distinct left
    value with every distinct right value.  Witness is (a, b, c, d).
    """
    T, M, neg, S = A.add.table, A.mul.table, A.add.inverses, A.star_table
    n = A.order
    bc = T[T[neg[None, :], M], neg[:, None]]  # bc[b, c] = -c + b.c - b
    u_vals, u_first = np.unique(bc, return_index=True)
    v_vals, v_first = np.unique(S, return_index=True)
    bad = np.argwhere(T[u_vals[:, None], v_vals[None, :]] != T[v_vals[None, :], u_vals[:, None]])
    if len(bad):
        i, j = bad[0]
        b, c = divmod(int(u_first[i]), n)
        a, d = divmod(int(v_first[j]), n)
        return (a, b, c, d)
    return None


def check_identities(A: SkewBrace) -> list:
    """Exhaustive checks of the identities every brace (or two-sided brace) satisfies."""
    two = is_two_sided(A)
    results = [
        IdentityResult("left-brace-law", None, left_law_witness(A.add, A.mul)),
        IdentityResult("inverse-identity", None, inverse_identity_witness(A)),
        IdentityResult("star-distributivity", None, star_distributivity_witness(A)),
        IdentityResult("lambda-automorphism", None, lambda_automorphism_witness(A)),
        IdentityResult("lambda-homomorphism", check_lambda_homomorphism(A)),
    ]
    for r in results:
        if r.holds is None:
            r.holds = r.witness is None
    for name, fn in (("conjugation-automorphism", conjugation_witness), ("nahodka", nahodka_witness)):
        if two:
            w = fn(A)
            results.append(IdentityResult(name, w is None, w, required=True))
        else:
            results.append(IdentityResult(name, None, None, required=False))
    return results


# ---------------------------------------------------------------------------
# the ideals built from the multiplicative center


def center_star_ideal(A: SkewBrace) -> ElementSet:
    """I = (A*Z) + (Z*A) for Z the center of the multiplicative group."""
    Z = center(A.mul)
    full = tuple(range(A.order))
    return additive_span(A, star_span(A, full, Z) + star_span(A, Z, full))


def center_extension_ideal(A: SkewBrace) -> ElementSet:
    """J = Z + I, the additive span of the center together with I."""
    return additive_span(A, center(A.mul) + center_star_ideal(A))


def is_additively_abelian(A: SkewBrace, I: Sequence[int]) -> bool:
    idx = np.asarray(I, dtype=np.intp)
    sub = A.add.table[np.ix_(idx, idx)]
    return bool(np.array_equal(sub, sub.T))


def restrict(A: SkewBrace, I: Sequence[int]) -> SkewBrace:
    """The sub-brace on a subset closed under both operations."""
    idx = list(I)
    pos = {x: i for i, x in enumerate(idx)}
    relabel = np.vectorize(pos.__getitem__, otypes=[np.intp])
    add_t = relabel(A.add.table[np.ix_(idx, idx)])
    mul_t = relabel(A.mul.table[np.ix_(idx, idx)])
    return make_brace(make_group(add_t), make_group(mul_t))


# ---------------------------------------------------------------------------
# report


@dataclass
class BraceReport:
    order: int
    is_two_sided: bool
    is_classical: bool
    is_trivial: bool
    add_solv_class: Optional[int]
    mul_solv_class: Optional[int]
    add_nilp_class: Optional[int]
    mul_nilp_class: Optional[int]
    star_series_lengths: list = field(default_factory=list)
    ideal_count: Optional[int] = None
    skipped: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "is_two_sided": self.is_two_sided,
            "is_classical": self.is_classical,
            "is_trivial": self.is_trivial,
            "add_solv_class": self.add_solv_class,
            "mul_solv_class": self.mul_solv_class,
            "add_nilp_class": self.add_nilp_class,
            "mul_nilp_class": self.mul_nilp_class,
            "star_series_lengths": list(self.star_series_lengths),
            "ideal_count": self.ideal_count,
            "skipped": list(self.skipped),
        }


def analyze(A: SkewBrace) -> BraceReport:
    report = BraceReport(
        order=A.order,
        is_two_sided=is_two_sided(A),
        is_classical=is_classical(A),
        is_trivial=is_trivial(A),
        add_solv_class=solvability_class(A.add),
        mul_solv_class=solvability_class(A.mul),
        add_nilp_class=nilpotency_class(A.add),
        mul_nilp_class=nilpotency_class(A.mul),
        star_series_lengths=[len(t) for t in star_series(A)],
    )
    if A.order <= MAX_IDEAL_ORDER:
        report.ideal_count = len(all_ideals(A))
    else:
        report.skipped.append("ideal_count")
    return report

