from __future__ import annotations

import itertools

import numpy as np
import pytest

from braceforge.errors import (
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotASubgroup,
    NotBijectiveRows,
    NotNormal,
    TableShapeError,
    TooShort,
)
from braceforge.groups import (
    all_subgroups,
    are_isomorphic,
    automorphisms,
    center,
    commutator,
    commutator_subgroup,
    derived_series,
    is_normal,
    is_subgroup,
    iterated_commutator,
    lower_central_series,
    make_group,
    nilpotency_class,
    normal_subgroups,
    power_subgroup,
    quotient_group,
    solvability_class,
    subgroup_generate,
)
from braceforge.named import (
    cyclic_group,
    dihedral_group,
    direct_product,
    identify,
    named_group,
    quaternion_group,
    symmetric_group,
)


def z(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def perm_group(perms):
    """Cayley table of a list of permutations (tuples), composition p after q."""
    index = {p: i for i, p in enumerate(perms)}
    return make_group([[index[tuple(p[q[i]] for i in range(len(q)))] for q in perms] for p in perms])


def test_cyclic_table():
    G = make_group(z(4))
    assert G.order == 4 and G.identity == 0
    assert G.inverses.tolist() == [0, 3, 2, 1]
    assert G.is_abelian


def test_identity_is_relabelled_to_zero():
    # identity of this table is 2
    t = [[2, 0, 1], [0, 1, 2], [1, 2, 0]]
    G = make_group(t)
    assert G.identity == 0
    assert identify(G) == "Z3"


def test_rejects_non_square():
    with pytest.raises(TableShapeError):
        make_group([[0, 1], [1]])


def test_no_identity():
    with pytest.raises(NoIdentity):
        make_group([[1, 0], [0, 0]])


def test_no_identity_witness():
    with pytest.raises(NoIdentity) as exc:
        make_group([[1, 1], [1, 1]])
    assert exc.value.witness == (0, 0, 1, 1)


def test_no_inverse():
    with pytest.raises(NoInverse) as exc:
        make_group([[0, 1], [1, 1]])
    assert exc.value.witness == 1


def test_latin_failure():
    # identity and inverses exist but row 1 repeats 0
    with pytest.raises(NotBijectiveRows):
        make_group([[0, 1, 2], [1, 0, 0], [2, 0, 1]])


def test_non_associative_loop():
    # the smallest loop that is not a group has order 5
    t = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAssociative) as exc:
        make_group(t)
    a, b, c = exc.value.witness
    T = np.array(t)
    assert T[T[a, b], c] != T[a, T[b, c]]


def test_s3_matches_permutation_composition():
    perms = list(itertools.permutations(range(3)))
    perms.sort(key=lambda p: p != (0, 1, 2))
    assert are_isomorphic(perm_group(perms), symmetric_group(3))


def test_subgroup_generate():
    G = make_group(z(4))
    assert subgroup_generate(G, [2]) == (0, 2)
    assert subgroup_generate(G, [1]) == (0, 1, 2, 3)
    assert subgroup_generate(G, []) == (0,)


def test_is_subgroup():
    G = make_group(z(6))
    assert is_subgroup(G, [0, 2, 4])
    assert not is_subgroup(G, [0, 1])


def test_normality_in_s3():
    S3 = symmetric_group(3)
    subs = all_subgroups(S3)
    assert sorted(len(H) for H in subs) == [1, 2, 2, 2, 3, 6]
    assert sorted(len(H) for H in normal_subgroups(S3)) == [1, 3, 6]
    two = next(H for H in subs if len(H) == 2)
    assert not is_normal(S3, two)
    with pytest.raises(NotNormal):
        quotient_group(S3, two)


def test_is_normal_verify_flag():
    with pytest.raises(NotASubgroup):
        is_normal(make_group(z(4)), [0, 1], verify=True)


def test_commutators_s3():
    S3 = symmetric_group(3)
    full = tuple(range(6))
    assert len(commutator_subgroup(S3, full, full)) == 3
    x, y = 1, 2
    xy = S3.mul(x, y)
    assert commutator(S3, x, y) == S3.mul(S3.mul(xy, S3.inverses[x]), S3.inverses[y])


def test_iterated_commutator_needs_two():
    with pytest.raises(TooShort):
        iterated_commutator(symmetric_group(3), [1])
    G = make_group(z(5))
    assert iterated_commutator(G, [1, 2, 3]) == 0


@pytest.mark.parametrize(
    "name, solv, nil",
    [
        ("Z1", 0, 0),
        ("Z4", 1, 1),
        ("V4", 1, 1),
        ("S3", 2, None),
        ("D4", 2, 2),
        ("Q8", 2, 2),
        ("Z2^3", 1, 1),
    ],
)
def test_classes(name, solv, nil):
    G = named_group(name)
    assert solvability_class(G) == solv
    assert nilpotency_class(G) == nil


def test_s4_and_a5_scale_classes():
    S4 = symmetric_group(4)
    assert solvability_class(S4) == 3
    assert nilpotency_class(S4) is None
    assert [len(H) for H in derived_series(S4)] == [24, 12, 4, 1]
    assert [len(H) for H in lower_central_series(S4)][:2] == [24, 12]


def test_a5_not_solvable():
    S5 = symmetric_group(5)
    A5 = commutator_subgroup(S5, range(120), range(120))
    assert len(A5) == 60
    assert solvability_class(S5) is None


def test_heisenberg_mod2_is_d4():
    # unitriangular 3x3 over F2, multiplied with numpy
    mats = []
    for a, b, c in itertools.product(range(2), repeat=3):
        mats.append(np.array([[1, a, c], [0, 1, b], [0, 0, 1]]))
    keys = [m.tobytes() for m in mats]
    table = [[keys.index((x @ y % 2).tobytes()) for y in mats] for x in mats]
    G = make_group(table)
    assert identify(G) == "D4"
    assert nilpotency_class(G) == 2
    assert len(center(G)) == 2


def test_quotient_q8_by_center():
    Q8 = quaternion_group()
    Q, cmap = quotient_group(Q8, center(Q8))
    assert identify(Q) == "V4"
    assert cmap[0] == 0 and len(set(cmap.tolist())) == 4


def test_power_subgroup():
    assert power_subgroup(make_group(z(8)), 2) == (0, 2, 4, 6)
    assert power_subgroup(named_group("Z2^3"), 2) == (0,)


@pytest.mark.parametrize("name, count", [("Z4", 2), ("V4", 6), ("S3", 6), ("D4", 8), ("Q8", 24), ("Z2^3", 168)])
def test_automorphism_counts(name, count):
    auts = automorphisms(named_group(name))
    assert len(auts) == count
    assert auts[0] == tuple(range(named_group(name).order))


def test_named_groups_and_aliases():
    assert identify(direct_product(cyclic_group(2), cyclic_group(2))) == "V4"
    assert identify(dihedral_group(3)) == "S3"
    assert named_group("D8") == named_group("D4")
    assert named_group("K4") == named_group("V4")
    assert named_group("Z11").order == 11
    with pytest.raises(KeyError):
        named_group("M11")
