from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given

from sgwb.constructions import brandt
from sgwb.errors import (
    BadIdentity,
    BadZero,
    EmptyGeneratorSet,
    IndexOutOfRange,
    InputError,
    MissingFile,
    NotAssociative,
    NotASubsemigroup,
    OrderTooLarge,
)
from sgwb.semigroup import (
    adjoin,
    check_homomorphism,
    chain_semilattice,
    cyclic_group,
    dump_table,
    from_function,
    from_json,
    full_transformation_monoid,
    induced,
    is_closed,
    is_ideal,
    is_left_ideal,
    is_right_ideal,
    klein_four,
    left_ideal,
    left_zero,
    load_table,
    null_semigroup,
    principal_right_ideal,
    right_ideal,
    right_zero,
    special_elements,
    subsemigroup,
    symmetric_group,
    symmetric_inverse_monoid,
    trivial,
    validate_table,
)

from conftest import semigroups


def _assoc_brute(mul):
    n = len(mul)
    return [(x, y, z) for x, y, z in itertools.product(range(n), repeat=3)
            if mul[mul[x][y]][z] != mul[x][mul[y][z]]]


# --- validation ------------------------------------------------------------


def test_z2_table_is_valid_with_identity_zero():
    S = validate_table(2, [[0, 1], [1, 0]])
    assert S.identity == 0 and S.is_group


def test_non_associative_table_reports_a_real_witness():
    mul = [[0, 0], [1, 0]]
    with pytest.raises(NotAssociative) as info:
        validate_table(2, mul)
    bad = _assoc_brute(mul)
    assert info.value.triple in bad
    assert (1, 1, 1) in bad  # the documented witness is also a violation


def test_right_zero_table_is_valid():
    S = validate_table(2, [[0, 1], [0, 1]])
    assert S == right_zero(2)


@pytest.mark.parametrize("order, mul, exc", [
    (2, [[0, 2], [1, 0]], IndexOutOfRange),
    (2, [[0, -1], [1, 0]], IndexOutOfRange),
    (2, [[0, 1]], InputError),
    (0, [], InputError),
    (2, [["a", 1], [1, 0]], InputError),
])
def test_malformed_tables_rejected(order, mul, exc):
    with pytest.raises(exc):
        validate_table(order, mul)


def test_bad_identity_and_zero_carry_witnesses():
    with pytest.raises(BadIdentity) as info:
        validate_table(2, [[0, 1], [0, 1]], identity=0)
    assert info.value.witness is not None
    with pytest.raises(BadZero):
        validate_table(2, [[0, 1], [1, 0]], zero=0)


def test_order_cap():
    with pytest.raises(OrderTooLarge):
        validate_table(257, [[0] * 257] * 257)


def test_identity_and_zero_detected():
    S = adjoin(adjoin(right_zero(2), "zero"), "identity")
    assert S.order == 4 and S.identity == 3 and S.zero == 2


@given(semigroups())
def test_validated_tables_are_associative(S):
    assert _assoc_brute(S.table) == []


# --- catalogue -------------------------------------------------------------


@pytest.mark.parametrize("S, order", [
    (cyclic_group(5), 5), (right_zero(3), 3), (left_zero(3), 3), (null_semigroup(3), 3),
    (trivial(), 1), (chain_semilattice(4), 4), (klein_four(), 4), (symmetric_group(3), 6),
    (full_transformation_monoid(3), 27), (symmetric_inverse_monoid(2), 7),
])
def test_catalogue_orders(S, order):
    assert S.order == order


def test_catalogue_properties():
    assert cyclic_group(4).is_commutative and cyclic_group(4).is_group
    assert not symmetric_group(3).is_commutative
    assert right_zero(3).is_band and chain_semilattice(3).is_band
    assert full_transformation_monoid(2).identity is not None
    G = symmetric_group(3)
    assert all(G.m(g, G.inverse(g)) == G.identity for g in G.elements)


def test_adjoin_counts():
    assert adjoin(cyclic_group(2), "zero").zero == 2
    M = adjoin(right_zero(2), "identity")
    assert M.order == 3 and M.identity == 2
    with pytest.raises(InputError):
        adjoin(cyclic_group(2), "other")


# --- elements and ideals ---------------------------------------------------


def test_special_elements():
    assert special_elements(right_zero(2), "idempotent") == {0, 1}
    assert special_elements(cyclic_group(2), "indecomposable") == frozenset()
    N = null_semigroup(3)
    assert special_elements(N, "indecomposable") == set(N.elements) - {N.zero}


def test_right_ideals():
    Z6 = cyclic_group(6)
    assert right_ideal(Z6, [1]).members == set(range(6))
    B = brandt(cyclic_group(2), 2)
    I = right_ideal(B.semigroup, [B.index((1, 0, 1))])
    want = {B.index((1, g, j)) for g in (0, 1) for j in (1, 2)} | {B.semigroup.zero}
    assert I.members == want and len(I.members) == 5
    assert is_right_ideal(B.semigroup, I.members) and not is_left_ideal(B.semigroup, I.members)
    with pytest.raises(EmptyGeneratorSet):
        right_ideal(Z6, [])
    with pytest.raises(IndexOutOfRange):
        right_ideal(Z6, [6])


@given(semigroups())
def test_right_ideal_generators_are_minimal(S):
    I = right_ideal(S, S.elements)
    assert I.members == set(S.elements)
    assert right_ideal(S, I.generators).members == I.members
    for g in I.generators:
        rest = [h for h in I.generators if h != g]
        assert not rest or right_ideal(S, rest).members != I.members


def test_subsemigroup_closure():
    Z6 = cyclic_group(6)
    assert subsemigroup(Z6, [2]) == {0, 2, 4}
    R = right_zero(3)
    assert subsemigroup(R, [1]) == {1}
    assert subsemigroup(R, R.elements) == set(R.elements)


def test_left_ideal_and_ideal():
    S = adjoin(right_zero(2), "zero")
    assert left_ideal(S, [S.zero]) == {S.zero}
    assert is_ideal(S, [S.zero])
    assert principal_right_ideal(S, 0) == {0, 1, S.zero}


# --- maps, subsemigroups, I/O ----------------------------------------------


def test_homomorphism_checks():
    Z4, Z2, Z3 = cyclic_group(4), cyclic_group(2), cyclic_group(3)
    r = check_homomorphism(Z4, Z2, [0, 1, 0, 1])
    assert r.is_hom and r.surjective
    assert check_homomorphism(Z2, Z2, [0, 0])
    r = check_homomorphism(Z3, Z2, [0, 1, 0])
    assert not r and r.witness == (1, 2)
    phi = [0, 1, 0]
    assert phi[Z3.m(1, 1)] == Z2.m(phi[1], phi[1])  # (1, 1) itself is not a violation


def test_induced_subsemigroup():
    sub = induced(cyclic_group(6), [4, 0, 2])
    assert sub.elements == (0, 2, 4)
    assert sub.semigroup.is_group and sub.semigroup.order == 3
    assert sub.up(sub.down(4)) == 4
    with pytest.raises(NotASubsemigroup):
        induced(cyclic_group(6), [1])


def test_json_round_trip(tmp_path):
    S = symmetric_group(3)
    again = from_json(json.loads(json.dumps(S.to_json())))
    assert again == S and again.labels == S.labels
    p = tmp_path / "s3.json"
    dump_table(S, p)
    assert load_table(p) == S
    with pytest.raises(MissingFile):
        load_table(tmp_path / "absent.json")
    (tmp_path / "bad.json").write_text("{")
    with pytest.raises(InputError):
        load_table(tmp_path / "bad.json")


def test_from_function_tabulates():
    S = from_function([0, 1, 2], lambda x, y: max(x, y))
    assert S.is_band and S.is_commutative and S.identity == 0 and S.zero == 2
    assert is_closed(S, [1, 2])
