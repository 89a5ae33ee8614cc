"""Finite versions of the standard explicit skew braces.

The integer-coefficient constructions are reduced modulo 2m (the dihedral
brace) or m (the matrix braces).  Nothing here assumes the reduction is
still a brace: every constructor ends in a full :func:`make_brace` scan.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .brace import MAX_ORDER, SkewBrace, make_brace
from .errors import BadModulus, TooLarge
from .groups import FiniteGroup, make_group


@dataclass(frozen=True)
class UpperTriangularCarrier:
    """Strictly upper triangular n x n matrices over Z_m.

    Entries are listed row-major over positions (i, j), i < j; the index of
    an entry vector is its base-m value with the first entry most significant.
    """

    n: int
    m: int

    @cached_property
    def positions(self) -> tuple:
        return tuple((i, j) for i in range(self.n) for j in range(i + 1, self.n))

    @property
    def size(self) -> int:
        return self.m ** len(self.positions)

    @cached_property
    def _weights(self) -> np.ndarray:
        k = len(self.positions)
        return np.array([self.m ** (k - 1 - t) for t in range(k)], dtype=np.int64)

    def encode(self, entries) -> int:
        return int(np.dot(np.asarray(entries, dtype=np.int64) % self.m, self._weights))

    def decode(self, index: int) -> tuple:
        out = []
        for w in self._weights:
            out.append(int(index // w) % self.m)
        return tuple(out)

    def to_matrix(self, entries) -> np.ndarray:
        mat = np.zeros((self.n, self.n), dtype=np.int64)
        for (i, j), e in zip(self.positions, entries):
            mat[i, j] = e
        return mat

    def from_matrix(self, mat) -> tuple:
        return tuple(int(mat[i, j]) % self.m for i, j in self.positions)

    @cached_property
    def all_entries(self) -> np.ndarray:
        """(size, k) array of entry vectors in index order."""
        k = len(self.positions)
        if k == 0:
            return np.zeros((1, 0), dtype=np.int64)
        return np.array(list(itertools.product(range(self.m), repeat=k)), dtype=np.int64)

    @cached_property
    def all_matrices(self) -> np.ndarray:
        mats = np.zeros((self.size, self.n, self.n), dtype=np.int64)
        for t, (i, j) in enumerate(self.positions):
            mats[:, i, j] = self.all_entries[:, t]
        return mats

    def encode_matrices(self, mats: np.ndarray) -> np.ndarray:
        """Index of each matrix in a (..., n, n) stack."""
        rows = [mats[..., i, j] % self.m for i, j in self.positions]
        if not rows:
            return np.zeros(mats.shape[:-2], dtype=np.intp)
        return (np.stack(rows, axis=-1) @ self._weights).astype(np.intp)


@dataclass(frozen=True)
class TriangularCarrier:
    """Pairs (A, a): A strictly upper triangular over Z_m, a diagonal with entries +-1.

    Index = index(A) * 2^n + code(a), where bit t of code(a) (most
    significant first) is set when the t-th diagonal entry is -1.
    """

    n: int
    m: int

    @cached_property
    def upper(self) -> UpperTriangularCarrier:
        return UpperTriangularCarrier(self.n, self.m)

    @property
    def size(self) -> int:
        return self.upper.size * 2 ** self.n

    def encode(self, entries, signs) -> int:
        code = 0
        for s in signs:
            code = 2 * code + (1 if s % self.m == self.m - 1 else 0)
        return self.upper.encode(entries) * 2 ** self.n + code

    def decode(self, index: int) -> tuple:
        a_index, code = divmod(index, 2 ** self.n)
        signs = tuple(-1 if (code >> (self.n - 1 - t)) & 1 else 1 for t in range(self.n))
        return self.upper.decode(a_index), signs

    @cached_property
    def all_signs(self) -> np.ndarray:
        return np.array(list(itertools.product((1, -1), repeat=self.n)), dtype=np.int64)


def _check_order(order: int) -> None:
    if order > MAX_ORDER:
        raise TooLarge(f"order {order} exceeds guard {MAX_ORDER}")


def example1(m: int) -> SkewBrace:
    """Z_{2m} with a + b twisted by the parity of a and a.b ordinary addition.

    a (+) b = a + (-1)^a b,  a (.) b = a + b  (mod 2m).
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    n = 2 * m
    _check_order(n)
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    sign = np.where(a % 2 == 0, 1, -1)
    add = (a + sign * b) % n
    mul = (a + b) % n
    return make_brace(make_group(add), make_group(mul))


def example2(n: int, m: int) -> SkewBrace:
    """Strictly upper triangular matrices over Z_m; A (+) B = A + B, A (.) B = A + B + AB."""
    if n < 2:
        raise ValueError("matrix degree must be at least 2")
    if m < 2:
        raise BadModulus(f"modulus must be at least 2, got {m}")
    carrier = UpperTriangularCarrier(n, m)
    _check_order(carrier.size)
    mats = carrier.all_matrices
    size = carrier.size
    add = np.empty((size, size), dtype=np.intp)
    mul = np.empty((size, size), dtype=np.intp)
    step = max(1, (1 << 20) // (size * n * n))
    for start in range(0, size, step):
        A = mats[start:start + step, None]
        B = mats[None, :]
        s = A + B
        add[start:start + step] = carrier.encode_matrices(s)
        mul[start:start + step] = carrier.encode_matrices(s + A @ B)
    return make_brace(make_group(add), make_group(mul))


def example3(n: int, m: int) -> SkewBrace:
    """Pairs (A, a) with (A,a) (+) (B,b) = (A+B, ab) and
    (A,a) (.) (B,b) = ((A+I) a (B+I) a^-1 - I, ab), coefficients in Z_m.
    """
    if n < 2:
        raise ValueError("matrix degree must be at least 2")
    if m < 3:
        raise BadModulus(f"modulus must be at least 3 so that +1 and -1 differ, got {m}")
    carrier = TriangularCarrier(n, m)
    _check_order(carrier.size)
    up = carrier.upper
    mats = up.all_matrices
    signs = carrier.all_signs
    n_signs = len(signs)
    size = carrier.size
    # element e = u * n_signs + d
    u_of = np.arange(size) // n_signs
    d_of = np.arange(size) % n_signs
    sign_code = {tuple(s): k for k, s in enumerate(signs.tolist())}
    sign_prod = np.array(
        [[sign_code[tuple(x * y for x, y in zip(s, t))] for t in signs.tolist()] for s in signs.tolist()],
        dtype=np.intp,
    )
    # twisted[d, u] = a B a^-1 for a = signs[d], B = mats[u]; a^-1 = a
    outer = signs[:, :, None] * signs[:, None, :]
    twisted = outer[:, None] * mats[None, :]
    twisted_idx = up.encode_matrices(twisted)

    U = u_of[:, None]
    V = u_of[None, :]
    D = d_of[:, None]
    E = d_of[None, :]
    u_sum = up.encode_matrices(mats[U] + mats[V])
    add = u_sum * n_signs + sign_prod[D, E]
    # (A+I)(aBa + I) - I = A + aBa + A (aBa)
    A = mats[U]
    Bt = mats[twisted_idx[D, V]]
    u_prod = up.encode_matrices(A + Bt + A @ Bt)
    mul = u_prod * n_signs + sign_prod[D, E]
    return make_brace(make_group(add), make_group(mul))


def trivial_brace(G: FiniteGroup) -> SkewBrace:
    return make_brace(G, G)
