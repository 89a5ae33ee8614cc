"""Set-theoretic Yang-Baxter solutions from skew braces.

For a brace A the map r(x, y) = (s, s^-1 . x . y) with s = -x + x.y is a
non-degenerate solution; it is involutive exactly when the additive group
is abelian.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .brace import SkewBrace
from .errors import NotBijective


@dataclass(frozen=True, eq=False)
class YbeMap:
    """r tabulated on X x X: r(x, y) = (sigma[x, y], tau[x, y])."""

    n: int
    sigma: np.ndarray
    tau: np.ndarray

    def __call__(self, x: int, y: int) -> tuple:
        return int(self.sigma[x, y]), int(self.tau[x, y])

    def is_bijective(self) -> bool:
        codes = (self.sigma * self.n + self.tau).ravel()
        return len(np.unique(codes)) == self.n * self.n

    def as_dict(self) -> dict:
        return {
            "format_version": "1",
            "kind": "ybe-solution",
            "n": self.n,
            "sigma": self.sigma.tolist(),
            "tau": self.tau.tolist(),
        }


def from_tables(sigma, tau) -> YbeMap:
    s = np.asarray(sigma, dtype=np.intp)
    t = np.asarray(tau, dtype=np.intp)
    return YbeMap(n=s.shape[0], sigma=s, tau=t)


def swap_map(n: int) -> YbeMap:
    x = np.arange(n)
    return from_tables(np.broadcast_to(x[None, :], (n, n)).copy(), np.broadcast_to(x[:, None], (n, n)).copy())


def build_r(A: SkewBrace) -> YbeMap:
    M, minv = A.mul.table, A.mul.inverses
    sigma = A.lam  # -x + x.y
    tau = M[M[minv[sigma], np.arange(A.order)[:, None]], np.arange(A.order)[None, :]]
    r = YbeMap(n=A.order, sigma=np.array(sigma), tau=tau)
    if not r.is_bijective():
        raise NotBijective("r is not a bijection of X x X")
    return r


def _apply(r: YbeMap, left: bool, x, y, z):
    if left:
        s, t = r.sigma[x, y], r.tau[x, y]
        return s, t, z
    s, t = r.sigma[y, z], r.tau[y, z]
    return x, s, t


def braid_witness(r: YbeMap) -> Optional[tuple]:
    """First (x, y, z) where (r x id)(id x r)(r x id) and (id x r)(r x id)(id x r) differ."""
    n = r.n
    x, y, z = (g.ravel() for g in np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij"))
    lhs = _apply(r, True, *_apply(r, False, *_apply(r, True, x, y, z)))
    rhs = _apply(r, False, *_apply(r, True, *_apply(r, False, x, y, z)))
    bad = np.flatnonzero((lhs[0] != rhs[0]) | (lhs[1] != rhs[1]) | (lhs[2] != rhs[2]))
    if len(bad):
        i = bad[0]
        return int(x[i]), int(y[i]), int(z[i])
    return None


def verify_braid(r: YbeMap) -> bool:
    return braid_witness(r) is None


def verify_nondegenerate(r: YbeMap) -> bool:
    """sigma(x, .) and tau(., y) are permutations for every fixed x and y."""
    ident = np.arange(r.n)
    rows_ok = (np.sort(r.sigma, axis=1) == ident[None, :]).all()
    cols_ok = (np.sort(r.tau, axis=0) == ident[:, None]).all()
    return bool(rows_ok and cols_ok)


def verify_involutive(r: YbeMap) -> bool:
    s, t = r.sigma, r.tau
    x = np.arange(r.n)[:, None]
    y = np.arange(r.n)[None, :]
    return bool(((s[s, t] == x) & (r.tau[s, t] == y)).all())
