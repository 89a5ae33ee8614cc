"""braceforge: finite skew braces and the Yang-Baxter solutions they give.

Groups and braces are stored as Cayley tables on ``range(n)`` with the
identity at 0.  Every constructor validates the axioms unless told the
tables are trusted, and every failure carries a concrete witness.
"""

from __future__ import annotations

from .brace import (
    SkewBrace,
    all_ideals,
    analyze,
    brace_from_tables,
    check_identities,
    direct_sum,
    ideal_lattice,
    is_classical,
    is_ideal,
    is_simple,
    is_trivial,
    is_two_sided,
    make_brace,
    quotient_brace,
    star,
    star_series,
)
from .constructions import example1, example2, example3, trivial_brace
from .enumeration import all_groups, braces_on, braces_raw_oracle, corpus
from .errors import BraceForgeError
from .groups import (
    FiniteGroup,
    make_group,
    nilpotency_class,
    quotient_group,
    solvability_class,
    subgroup_generate,
)
from .harness import REGISTRY, run_claims
from .named import identify, named_group
from .ybe import build_r, verify_braid, verify_involutive, verify_nondegenerate

__version__ = "0.1.0"

__all__ = [
    "BraceForgeError",
    "FiniteGroup",
    "REGISTRY",
    "SkewBrace",
    "all_groups",
    "all_ideals",
    "analyze",
    "brace_from_tables",
    "braces_on",
    "braces_raw_oracle",
    "build_r",
    "check_identities",
    "corpus",
    "direct_sum",
    "example1",
    "example2",
    "example3",
    "ideal_lattice",
    "identify",
    "is_classical",
    "is_ideal",
    "is_simple",
    "is_trivial",
    "is_two_sided",
    "make_brace",
    "make_group",
    "named_group",
    "nilpotency_class",
    "quotient_brace",
    "quotient_group",
    "run_claims",
    "solvability_class",
    "star",
    "star_series",
    "subgroup_generate",
    "trivial_brace",
    "verify_braid",
    "verify_involutive",
    "verify_nondegenerate",
]
