"""Explicit constructions of small groups and the short-name table used by the CLI."""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .groups import FiniteGroup, are_isomorphic, make_group


def cyclic_group(n: int) -> FiniteGroup:
    idx = np.arange(n)
    return make_group((idx[:, None] + idx[None, :]) % n)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Carrier index g + |G| * h."""
    n, m = G.order, H.order
    g = np.arange(n * m) % n
    h = np.arange(n * m) // n
    table = G.table[g[:, None], g[None, :]] + n * H.table[h[:, None], h[None, :]]
    return make_group(table)


def _from_elements(elements: list, op) -> FiniteGroup:
    index = {e: i for i, e in enumerate(elements)}
    table = [[index[op(a, b)] for b in elements] for a in elements]
    return make_group(table)


def symmetric_group(k: int) -> FiniteGroup:
    """Permutations of range(k); composition (p*q)(i) = p(q(i)), identity first."""
    perms = sorted(itertools.permutations(range(k)))
    return _from_elements(perms, lambda p, q: tuple(p[q[i]] for i in range(k)))


def dihedral_group(k: int) -> FiniteGroup:
    """Symmetries of a k-gon, order 2k; elements (r, s) meaning rot^r ref^s."""
    elements = [(r, s) for s in range(2) for r in range(k)]

    def op(a, b):
        r1, s1 = a
        r2, s2 = b
        return ((r1 + (-r2 if s1 else r2)) % k, (s1 + s2) % 2)

    return _from_elements(elements, op)


def quaternion_group() -> FiniteGroup:
    # unit quaternions (sign, axis) with axis in 1, i, j, k
    mult = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elements = [(s, a) for s in (1, -1) for a in range(4)]

    def op(x, y):
        sign, axis = mult[(x[1], y[1])]
        return (x[0] * y[0] * sign, axis)

    return _from_elements(elements, op)


_BUILDERS = {
    "Z1": lambda: cyclic_group(1),
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "V4": lambda: direct_product(cyclic_group(2), cyclic_group(2)),
    "Z5": lambda: cyclic_group(5),
    "Z6": lambda: cyclic_group(6),
    "S3": lambda: symmetric_group(3),
    "Z7": lambda: cyclic_group(7),
    "Z8": lambda: cyclic_group(8),
    "Z2xZ4": lambda: direct_product(cyclic_group(2), cyclic_group(4)),
    "Z2^3": lambda: direct_product(cyclic_group(2), direct_product(cyclic_group(2), cyclic_group(2))),
    "D4": lambda: dihedral_group(4),
    "Q8": quaternion_group,
}

ALIASES = {
    "Z2xZ2": "V4",
    "K4": "V4",
    "D3": "S3",
    "Z4xZ2": "Z2xZ4",
    "Z2xZ2xZ2": "Z2^3",
    "D8": "D4",
}

GROUP_NAMES = tuple(_BUILDERS)


@lru_cache(maxsize=None)
def named_group(name: str) -> FiniteGroup:
    key = ALIASES.get(name, name)
    if key not in _BUILDERS:
        if key.startswith("Z") and key[1:].isdigit() and int(key[1:]) >= 1:
            return cyclic_group(int(key[1:]))
        raise KeyError(f"unknown group name {name!r}; known: {', '.join(GROUP_NAMES)}")
    return _BUILDERS[key]()


def identify(G: FiniteGroup) -> str | None:
    """Short name of G up to isomorphism: any cyclic group, otherwise orders up to 8."""
    if any(G.element_order(a) == G.order for a in range(G.order)):
        return f"Z{G.order}"
    for name in GROUP_NAMES:
        H = named_group(name)
        if H.order == G.order and are_isomorphic(G, H):
            return name
    return None
