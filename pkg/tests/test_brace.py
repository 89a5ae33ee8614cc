from __future__ import annotations

import pytest

from braceforge.brace import (
    MAX_IDEAL_ORDER,
    additive_span,
    all_ideals,
    analyze,
    brace_from_tables,
    center_extension_ideal,
    center_star_ideal,
    check_identities,
    direct_sum,
    ideal_closure,
    ideal_lattice,
    is_additively_abelian,
    is_classical,
    is_ideal,
    is_simple,
    is_trivial,
    is_two_sided,
    lambda_map,
    left_law_witness,
    make_brace,
    quotient_brace,
    quotient_is_trivial,
    restrict,
    star,
    star_series,
    star_span,
    two_sided_witness,
)
from braceforge.constructions import UpperTriangularCarrier, example1, example2, example3, trivial_brace
from braceforge.errors import IdentityMismatch, LeftBraceLawFails, TooLarge
from braceforge.groups import make_group
from braceforge.named import cyclic_group, identify


def test_trivial_brace_basics():
    B = trivial_brace(cyclic_group(4))
    assert is_trivial(B) and is_two_sided(B) and is_classical(B)
    assert all(lambda_map(B, a) == (0, 1, 2, 3) for a in range(4))
    assert not B.star_table.any()
    assert star_series(B) == ((0, 1, 2, 3), (0,))


def test_left_law_failure_has_witness():
    # Z4 addition against Z4 multiplication relabelled by swapping 1 and 2
    add = cyclic_group(4)
    p = [0, 2, 1, 3]
    mul = make_group([[p[(p[a] + p[b]) % 4] for b in range(4)] for a in range(4)])
    with pytest.raises(LeftBraceLawFails) as exc:
        make_brace(add, mul)
    a, b, c = exc.value.witness
    lhs = mul.mul(a, add.mul(b, c))
    rhs = add.mul(add.mul(mul.mul(a, b), add.inverses[a]), mul.mul(a, c))
    assert lhs != rhs
    assert left_law_witness(add, mul) == (a, b, c)


def test_identity_mismatch():
    add = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    mul = [[(a + b - 1) % 3 for b in range(3)] for a in range(3)]  # identity 1
    with pytest.raises(IdentityMismatch):
        brace_from_tables(add, mul)


def test_example1_lambda_and_star():
    B = example1(3)
    # lambda_a(x) = -a + (a + x) in the twisted addition
    for a in range(6):
        for x in range(6):
            assert B.lam[a, x] == B.plus(B.neg(a), B.times(a, x))
            assert star(B, a, x) == B.plus(B.lam[a, x], B.neg(x))
    assert [len(t) for t in star_series(B)] == [6, 3, 1]


def test_example2_matches_matrix_model():
    # lambda_A(X) = X + AX and A * B = AB for the radical ring of strictly upper triangular matrices
    B = example2(3, 2)
    car = UpperTriangularCarrier(3, 2)
    mats = car.all_matrices
    for a in range(B.order):
        for x in range(B.order):
            A, X = mats[a], mats[x]
            assert B.lam[a, x] == car.encode_matrices(((X + A @ X) % 2)[None])[0]
            assert B.star_table[a, x] == car.encode_matrices(((A @ X) % 2)[None])[0]


def test_example2_star_series_and_ideals():
    B = example2(3, 2)
    assert [len(t) for t in star_series(B)] == [8, 2, 1]
    assert len(all_ideals(B)) == 6
    assert set(all_ideals(B)) == set(ideal_lattice(B))


def test_is_ideal_reasons():
    B = example1(3)
    assert is_ideal(B, (0, 2, 4))
    bad = is_ideal(B, (0, 1, 2))
    assert not bad and bad.reason == "additive-subgroup"
    # {0, 3} is a reflection subgroup of the dihedral addition
    r = is_ideal(B, (0, 3))
    assert not r and r.reason == "additive-normal"
    r = is_ideal(example2(3, 2), (0, 5))
    assert not r and r.reason == "multiplicative-subgroup"


def test_lambda_invariance_failure(corpus8_braces):
    from braceforge.groups import all_subgroups

    for B in corpus8_braces:
        for S in all_subgroups(B.add):
            r = is_ideal(B, S)
            if not r and r.reason == "lambda-invariant":
                assert any(B.lam[a, s] not in S for a in range(B.order) for s in S)
                return
    pytest.fail("no subgroup fails only lambda-invariance")


def test_ideal_closure_and_simple():
    B = example1(3)
    assert ideal_closure(B, [2]) == (0, 2, 4)
    assert ideal_closure(B, [1]) == tuple(range(6))
    assert is_simple(trivial_brace(cyclic_group(5)))
    assert not is_simple(trivial_brace(cyclic_group(1)))
    assert not is_simple(trivial_brace(cyclic_group(4)))


def test_quotients():
    B = example2(3, 2)
    a2 = star_series(B)[1]
    assert quotient_is_trivial(B, a2)
    Q, cmap = quotient_brace(B, a2)
    assert Q.order == 4 and is_trivial(Q)
    assert identify(Q.add) == "V4"
    assert not quotient_is_trivial(B, (0,))


def test_direct_sum():
    S = direct_sum([example1(2), trivial_brace(cyclic_group(3))])
    assert S.order == 12
    assert is_two_sided(S)
    assert all(r.holds for r in check_identities(S))
    # first factor is the least significant coordinate
    assert S.plus(1, 1) == example1(2).plus(1, 1)


def test_direct_sum_guard():
    with pytest.raises(TooLarge):
        direct_sum([trivial_brace(cyclic_group(100))] * 2)


def test_example3_is_not_two_sided():
    B = example3(2, 3)
    w = two_sided_witness(B)
    assert w is not None
    a, b, c = w
    lhs = B.times(B.plus(a, b), c)
    rhs = B.plus(B.plus(B.times(a, c), B.neg(c)), B.times(b, c))
    assert lhs != rhs
    res = {r.name: r for r in check_identities(B)}
    assert res["left-brace-law"].holds
    assert res["nahodka"].holds is None and not res["nahodka"].required


def test_identities_hold_on_small_corpus(small_braces):
    for B in small_braces:
        for r in check_identities(B):
            assert r.holds in (True, None), (r.name, r.witness)


def test_center_ideals_example1():
    B = example1(3)
    I = center_star_ideal(B)
    J = center_extension_ideal(B)
    assert is_ideal(B, I) and is_ideal(B, J)
    assert is_additively_abelian(B, I)
    assert set(I) <= set(J)


def test_star_span_and_additive_span():
    B = example2(3, 2)
    full = tuple(range(8))
    assert star_span(B, full, full) == star_series(B)[1]
    assert additive_span(B, [1]) == (0, 1)


def test_restrict_to_ideal():
    B = example1(3)
    R = restrict(B, (0, 2, 4))
    assert R.order == 3 and is_trivial(R)


def test_analyze_reports():
    r = analyze(example1(3)).as_dict()
    assert r["is_classical"] is False and r["is_two_sided"] is True
    assert r["add_solv_class"] == 2 and r["mul_solv_class"] == 1
    assert r["skipped"] == []
    t = analyze(trivial_brace(cyclic_group(4)))
    assert t.is_trivial and t.add_solv_class == 1 and t.mul_nilp_class == 1
    big = analyze(example2(4, 2))
    assert big.order == 64 > MAX_IDEAL_ORDER
    assert big.ideal_count is None and big.skipped


def test_brace_equality_is_by_tables():
    assert example1(2) == example1(2)
    assert hash(example1(2)) == hash(example1(2))
    assert example1(2) != trivial_brace(cyclic_group(4))
