"""Exhaustive checks of structural theorems about skew braces over finite collections.

Each claim is a hypothesis predicate plus a per-brace check that returns
``None`` when the conclusion holds and a detail tuple otherwise.  A claim
whose hypothesis never fires is reported as ``vacuous``, not ``verified``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .brace import (
    MAX_IDEAL_ORDER,
    SkewBrace,
    all_ideals,
    center_extension_ideal,
    center_star_ideal,
    conjugation_witness,
    direct_sum,
    ideal_lattice,
    is_additively_abelian,
    is_ideal,
    is_simple,
    is_trivial,
    is_two_sided,
    nahodka_witness,
    quotient_brace,
    quotient_is_trivial,
    star_series,
    star_span,
)
from .constructions import example1, example2, example3
from .groups import nilpotency_class, normal_subgroups, solvability_class

VERIFIED = "verified"
COUNTEREXAMPLE = "counterexample"
VACUOUS = "vacuous"
OUT_OF_SCOPE = "out-of-scope: infinite"


@dataclass
class ClaimResult:
    claim_id: str
    scope: str
    status: str
    witness: Optional[dict] = None
    stats: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "scope": self.scope,
            "status": self.status,
            "witness": self.witness,
            "stats": dict(self.stats),
        }


@dataclass(frozen=True)
class Claim:
    claim_id: str
    statement: str
    hypothesis: Optional[Callable[[SkewBrace], bool]] = None
    check: Optional[Callable[[SkewBrace], Optional[tuple]]] = None
    scope: str = "all braces"


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % p for p in range(2, int(math.isqrt(n)) + 1))


# --- per-brace conclusions -------------------------------------------------


def _mul_solvable(B: SkewBrace):
    if solvability_class(B.mul) is None:
        return ("multiplicative group not solvable",)
    return None


def _add_solvable(B: SkewBrace):
    if solvability_class(B.add) is None:
        return ("additive group not solvable",)
    return None


def _add_metabelian(B: SkewBrace):
    d = solvability_class(B.add)
    if d is None or d > 2:
        return ("additive derived length", d)
    return None


def _mgener(B: SkewBrace):
    k = nilpotency_class(B.mul)
    d = solvability_class(B.add)
    if d is None or d > 2 * k:
        return ("additive derived length exceeds 2k", d, k)
    return None


def _simple_iff_trivial_prime(B: SkewBrace):
    simple = is_simple(B)
    expected = is_trivial(B) and _is_prime(B.order)
    if simple != expected:
        return ("simple" if simple else "not simple", "trivial of prime order" if expected else "other")
    return None


def ideal_lemma_failures(B: SkewBrace) -> Optional[tuple]:
    """First failing ideal-theoretic statement for B, or None.

    For every brace: each star-series term is an ideal, A/A^(2) is trivial
    and A^(2) lies inside every ideal with trivial quotient.  For two-sided
    braces additionally: X*A is an ideal for every normal X of the
    multiplicative group, I = (A*Z) + (Z*A) is an ideal with abelian
    additive group, J = Z + I is an ideal, and the conjugation and
    commutation identities hold.
    """
    series = star_series(B)
    full = series[0]
    a2 = series[1] if len(series) > 1 else series[0]
    for term in series:
        if not is_ideal(B, term):
            return ("star-series term not an ideal", term)
    if not quotient_is_trivial(B, a2):
        return ("A/A^(2) not trivial", a2)
    Q, _ = quotient_brace(B, a2)
    if not is_trivial(Q):
        return ("quotient brace A/A^(2) not trivial", a2)
    ideals = all_ideals(B) if B.order <= MAX_IDEAL_ORDER else ideal_lattice(B)
    for J in ideals:
        if quotient_is_trivial(B, J) and not set(a2) <= set(J):
            return ("A^(2) not minimal", a2, J)
    if not is_two_sided(B):
        return None
    w = conjugation_witness(B)
    if w is not None:
        return ("conjugation identity fails", w)
    w = nahodka_witness(B)
    if w is not None:
        return ("commutation identity fails", w)
    for X in normal_subgroups(B.mul):
        check = is_ideal(B, star_span(B, X, full))
        if not check:
            return ("X*A not an ideal", X, check.reason)
    I = center_star_ideal(B)
    check = is_ideal(B, I)
    if not check:
        return ("(A*Z)+(Z*A) not an ideal", I, check.reason)
    if not is_additively_abelian(B, I):
        return ("(A*Z)+(Z*A) not additively abelian", I)
    J = center_extension_ideal(B)
    check = is_ideal(B, J)
    if not check:
        return ("Z+I not an ideal", J, check.reason)
    return None


def _two_sided_add_solvable(B: SkewBrace) -> bool:
    return is_two_sided(B) and solvability_class(B.add) is not None


def _two_sided_mul_nilpotent(B: SkewBrace) -> bool:
    return is_two_sided(B) and nilpotency_class(B.mul) is not None


REGISTRY: tuple = (
    Claim("finnil", "nilpotent additive group => solvable multiplicative group",
          lambda B: nilpotency_class(B.add) is not None, _mul_solvable, "finite braces"),
    Claim("multab", "abelian multiplicative group => solvable additive group",
          lambda B: B.mul.is_abelian, _add_solvable, "finite braces"),
    Claim("nill", "abelian multiplicative group => metabelian additive group",
          lambda B: B.mul.is_abelian, _add_metabelian, "all braces"),
    Claim("mgener", "two-sided, multiplicative nilpotency class k => additive derived length <= 2k",
          _two_sided_mul_nilpotent, _mgener, "two-sided braces"),
    Claim("two-sided-solvable", "finite two-sided, solvable additive group => solvable multiplicative group",
          _two_sided_add_solvable, _mul_solvable, "finite two-sided braces"),
    Claim("simple-corollary", "finite two-sided with solvable additive group: simple <=> trivial of prime order",
          _two_sided_add_solvable, _simple_iff_trivial_prime, "finite two-sided braces, solvable additive group"),
    Claim("ideal-lemmas", "star series, A^(2) minimality, X*A, (A*Z)+(Z*A), Z+I are ideals; identities hold",
          lambda B: True, ideal_lemma_failures, "all braces (two-sided lemmas on the two-sided subset)"),
    Claim("problem-answers", "2-torsion in the dihedral brace; unbounded derived length over abelian addition"),
    Claim("thm-fg-nilpotent", "finitely generated nilpotent additive group => solvable multiplicative group"),
    Claim("thm-fg-residually-nilpotent", "f.g. residually nilpotent additive => residually solvable multiplicative"),
    Claim("thm-fg-residually-finite", "f.g. residually finite additive => residually finite multiplicative"),
)

INFINITE_CLAIMS = frozenset({"thm-fg-nilpotent", "thm-fg-residually-nilpotent", "thm-fg-residually-finite"})


def run_claim(claim: Claim, braces: Sequence[SkewBrace]) -> ClaimResult:
    start = time.perf_counter()
    if claim.claim_id in INFINITE_CLAIMS:
        return ClaimResult(claim.claim_id, "infinite groups", OUT_OF_SCOPE, stats={"checked": 0})
    if claim.claim_id == "problem-answers":
        return check_problem_answers()
    in_scope = 0
    two_sided = 0
    for i, B in enumerate(braces):
        if not claim.hypothesis(B):
            continue
        in_scope += 1
        two_sided += is_two_sided(B)
        detail = claim.check(B)
        if detail is not None:
            return ClaimResult(
                claim.claim_id, claim.scope, COUNTEREXAMPLE,
                witness={"brace": i, "order": B.order, "detail": _jsonable(detail)},
                stats={"checked": in_scope, "braces": len(braces), "seconds": time.perf_counter() - start},
            )
    status = VERIFIED if in_scope else VACUOUS
    if claim.claim_id == "ideal-lemmas" and two_sided == 0:
        status = VACUOUS
    stats = {"checked": in_scope, "braces": len(braces), "seconds": round(time.perf_counter() - start, 3)}
    if claim.claim_id == "ideal-lemmas":
        stats["two_sided"] = two_sided
    return ClaimResult(claim.claim_id, claim.scope, status, stats=stats)


def replay(claim_id: str, braces: Sequence[SkewBrace], witness: dict) -> Optional[tuple]:
    """Re-run a claim's check on the brace named by a counterexample witness."""
    claim = next(c for c in REGISTRY if c.claim_id == claim_id)
    return claim.check(braces[witness["brace"]])


def run_claims(braces: Sequence[SkewBrace], claims: Sequence[Claim] = REGISTRY) -> list:
    return [run_claim(c, braces) for c in claims]


# --- the corpus-independent claim ------------------------------------------


def check_problem_answers() -> ClaimResult:
    """(a) example1(m) has additive 2-torsion for m in 1..6;
    (b) example2(n, 2) has abelian addition and multiplicative derived length ceil(log2 n), n = 2, 3, 4.
    """
    start = time.perf_counter()
    measured = {"torsion": {}, "derived_length": {}}
    for m in range(1, 7):
        B = example1(m)
        twos = [a for a in range(B.order) if a != 0 and B.plus(a, a) == 0]
        measured["torsion"][m] = twos[:1]
        if not twos or B.plus(1, 1) != 0:
            return ClaimResult("problem-answers", "example1(1..6)", COUNTEREXAMPLE,
                               witness={"example1": m}, stats={"measured": measured})
    for n in (2, 3, 4):
        B = example2(n, 2)
        d = solvability_class(B.mul)
        measured["derived_length"][n] = d
        if not B.add.is_abelian or d != math.ceil(math.log2(n)):
            return ClaimResult("problem-answers", "example2(2..4, 2)", COUNTEREXAMPLE,
                               witness={"example2": n, "derived_length": d}, stats={"measured": measured})
    stats = {"checked": 9, "measured": _jsonable(measured), "seconds": round(time.perf_counter() - start, 3)}
    return ClaimResult("problem-answers", "example1(1..6), example2(2..4, 2)", VERIFIED, stats=stats)


# --- constructed examples ----------------------------------------------------


def constructed_examples() -> list:
    """(name, brace) for every explicit construction used in reports."""
    out = [(f"example1(m={m})", example1(m)) for m in range(1, 7)]
    for n, m in ((2, 2), (2, 3), (3, 2), (3, 3), (4, 2)):
        out.append((f"example2(n={n},m={m})", example2(n, m)))
    out.append(("example3(n=2,m=3)", example3(2, 3)))
    out.append(("direct_sum(example2(2,2),example2(3,2))", direct_sum([example2(2, 2), example2(3, 2)])))
    return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return x


def format_table(results: Sequence[ClaimResult]) -> str:
    lines = [f"{'claim':<30} {'status':<24} {'checked':>8}  scope"]
    for r in results:
        lines.append(f"{r.claim_id:<30} {r.status:<24} {r.stats.get('checked', 0):>8}  {r.scope}")
        if r.witness is not None:
            lines.append(f"    witness: {r.witness}")
    return "\n".join(lines)


def all_in_scope_verified(results: Sequence[ClaimResult]) -> bool:
    return all(r.status in (VERIFIED, OUT_OF_SCOPE) for r in results)
