from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sgwb.congruence import (
    AUDIT,
    Disproven,
    Proven,
    RightCongruence,
    Step,
    XSequence,
    combine,
    consequence,
    enumerate_right_congruences,
    irredundant,
    meet,
    minimal_generating_set,
    oracle_closure,
    rc_closure,
    rees_right_congruence,
    replay,
    restrict,
)
from sgwb.constructions import brandt, direct_product
from sgwb.errors import (
    CertificateError,
    IndexOutOfRange,
    InputError,
    NotARightIdeal,
    OrderTooLarge,
    OwnerMismatch,
)
from sgwb.semigroup import adjoin, cyclic_group, right_ideal, right_zero
from sgwb.suite import dpex_instance

from conftest import semigroup_with_pairs, semigroups


def brute_closure(S, X):
    """Independent fixpoint: reflexive-symmetric-transitive-right-compatible closure of X."""
    n = S.order
    rel = {(a, a) for a in range(n)} | {(a, b) for a, b in X} | {(b, a) for a, b in X}
    while True:
        new = set(rel)
        new |= {(S.m(a, s), S.m(b, s)) for a, b in rel for s in range(n)}
        new |= {(a, d) for a, b in new for c, d in new if b == c}
        if new == rel:
            return rel
        rel = new


# --- closure ---------------------------------------------------------------


def test_z4_example():
    rho = rc_closure(cyclic_group(4), [(0, 2)])
    assert sorted(rho.classes()) == [(0, 2), (1, 3)]


def test_empty_pairs_give_identity():
    S = cyclic_group(5)
    assert rc_closure(S, []) == RightCongruence.identity(S)


def test_dpex_universe_closure():
    P, X = dpex_instance(3)
    rho = rc_closure(P.semigroup, X)
    assert rho.num_classes == 3 and all(len(b) == 2 for b in rho.classes())


def test_closure_rejects_bad_index():
    with pytest.raises(IndexOutOfRange):
        rc_closure(cyclic_group(3), [(0, 3)])


@given(semigroup_with_pairs())
def test_closure_matches_brute_force_relation(case):
    S, X = case
    rho = rc_closure(S, X)
    rel = brute_closure(S, X)
    assert {(a, b) for a in S.elements for b in S.elements if rho.related(a, b)} == rel


@given(semigroup_with_pairs())
def test_closure_matches_lattice_meet(case):
    S, X = case
    assert rc_closure(S, X) == oracle_closure(S, X)


@given(semigroup_with_pairs())
def test_closure_is_least_and_idempotent(case):
    S, X = case
    rho = rc_closure(S, X)
    assert rho.is_right_compatible() and rho.contains_pairs(X)
    assert rc_closure(S, list(rho.spanning_pairs())) == rho


# --- certificates ----------------------------------------------------------


def test_reflexive_pair_has_empty_certificate():
    r = consequence(cyclic_group(3), [], (1, 1))
    assert isinstance(r, Proven) and r.certificate.steps == ()


def test_z4_certificate_multiplies_by_one():
    S = cyclic_group(4)
    r = consequence(S, [(0, 2)], (1, 3))
    assert r
    assert r.certificate.steps == (Step(0, "f", 1),)


def test_dpex_dropped_pair_is_disproven():
    P, X = dpex_instance(3)
    assert isinstance(consequence(P.semigroup, X[1:], X[0]), Disproven)


@given(semigroup_with_pairs())
def test_consequence_agrees_with_closure_and_replays(case):
    S, X = case
    rho = rc_closure(S, X)
    for a, b in itertools.combinations(S.elements, 2):
        r = consequence(S, X, (a, b))
        assert bool(r) == rho.related(a, b)
        if r:
            assert replay(S.mul1, X, r.certificate) == b


def test_tampered_certificates_fail_replay():
    S = cyclic_group(4)
    X = [(0, 2)]
    cert = consequence(S, X, (1, 3)).certificate
    with pytest.raises(CertificateError):
        replay(S.mul1, X, XSequence(1, 3, (Step(0, "f", 2),)))
    with pytest.raises(CertificateError):
        replay(S.mul1, X, XSequence(1, 2, cert.steps))
    with pytest.raises(CertificateError):
        replay(S.mul1, X, XSequence(1, 3, (Step(5, "f", 1),)))
    with pytest.raises(CertificateError):
        replay(S.mul1, X, XSequence(1, 3, (Step(0, "x", 1),)))


def test_certificate_json_round_trip():
    S = cyclic_group(4)
    cert = consequence(S, [(0, 2)], (3, 1)).certificate
    assert XSequence.from_json(3, 1, cert.to_json()) == cert


def test_audit_counts_replays():
    before = dict(AUDIT)
    consequence(cyclic_group(4), [(0, 2)], (1, 3))
    assert AUDIT["replayed"] == before["replayed"] + 1
    assert AUDIT["proven"] == before["proven"] + 1


# --- partitions ------------------------------------------------------------


def test_from_classes_checks_compatibility():
    S = cyclic_group(4)
    with pytest.raises(InputError):
        RightCongruence.from_classes(S, [(0, 1)])
    with pytest.raises(InputError):
        RightCongruence.from_classes(S, [(0, 2), (2, 3)])
    with pytest.raises(InputError):
        RightCongruence(S, [0, 0, 1])


def test_rees_right_congruence():
    S = cyclic_group(3)
    assert rees_right_congruence(S, S.elements) == RightCongruence.universal(S)
    S0 = adjoin(right_zero(2), "zero")
    assert rees_right_congruence(S0, [S0.zero]) == RightCongruence.identity(S0)
    B = brandt(cyclic_group(2), 2)
    I = right_ideal(B.semigroup, [B.index((1, 0, 1))])
    rho = rees_right_congruence(B.semigroup, I)
    sizes = sorted(len(b) for b in rho.classes())
    assert sizes == [1, 1, 1, 1, 5]
    with pytest.raises(NotARightIdeal):
        rees_right_congruence(B.semigroup, [B.index((1, 0, 1))])


def test_restrict_examples():
    S = cyclic_group(6)
    T = [0, 2, 4]
    assert restrict(RightCongruence.universal(S), T).congruence.num_classes == 1
    assert restrict(RightCongruence.identity(S), T).congruence.num_classes == 3
    rho = rc_closure(S, [(0, 3)])
    r = restrict(rho, T)
    assert r.right_compatible
    assert sorted(r.classes_in_parent()) == [(0,), (2,), (4,)]


def test_meet_join_examples():
    S = cyclic_group(6)
    rho = rc_closure(S, [(0, 2)])
    assert combine(rho, RightCongruence.identity(S), "join") == rho
    assert combine(rho, RightCongruence.universal(S), "meet") == rho
    assert combine(rho, rc_closure(S, [(0, 3)]), "join") == RightCongruence.universal(S)
    with pytest.raises(InputError):
        combine(rho, rho, "neither")
    with pytest.raises(OwnerMismatch):
        meet(rho, RightCongruence.identity(cyclic_group(5)))


# --- enumeration -----------------------------------------------------------


@pytest.mark.parametrize("S, count", [
    (cyclic_group(2), 2), (right_zero(3), 5), (right_zero(4), 15), (cyclic_group(6), 4),
])
def test_enumeration_counts(S, count):
    assert len(enumerate_right_congruences(S)) == count


def test_enumeration_matches_brute_partition_filter():
    """Every equivalence of the set, filtered by right compatibility directly."""
    from sgwb._kernels import restricted_growth_strings
    for S in (cyclic_group(4), adjoin(right_zero(2), "zero"), right_zero(3)):
        want = set()
        for rgs in restricted_growth_strings(S.order):
            rgs = list(rgs)
            if all(rgs[S.m(a, s)] == rgs[S.m(b, s)]
                   for a in S.elements for b in S.elements if rgs[a] == rgs[b] for s in S.elements):
                want.add(tuple(rgs))
        assert {r.class_of for r in enumerate_right_congruences(S)} == want


def test_enumeration_bound(monkeypatch):
    monkeypatch.setenv("SGWB_MAX_ORDER", "3")
    with pytest.raises(OrderTooLarge):
        enumerate_right_congruences(cyclic_group(4))


@given(semigroups().filter(lambda S: S.order <= 4))
def test_lattice_laws(S):
    L = enumerate_right_congruences(S)
    n = len(L.congruences)
    for i, j in itertools.product(range(n), repeat=2):
        assert L.meet(i, j) == L.meet(j, i) and L.join(i, j) == L.join(j, i)
        assert L.meet(i, L.join(i, j)) == i and L.join(i, L.meet(i, j)) == i
        assert L.leq(L.meet(i, j), i) and L.leq(i, L.join(i, j))


def test_covers_and_dot():
    L = enumerate_right_congruences(cyclic_group(4))
    assert len(L.covers()) == 2
    assert L.to_dot().startswith("digraph")


# --- generating sets -------------------------------------------------------


def test_minimal_generating_set_examples():
    S = cyclic_group(5)
    assert list(minimal_generating_set(S, RightCongruence.identity(S)).pairs.pairs) == []
    g = minimal_generating_set(S, RightCongruence.universal(S))
    assert len(g.pairs.pairs) == 1 and g.mode == "exact"
    P, X = dpex_instance(3)
    rho = rc_closure(P.semigroup, X)
    assert len(minimal_generating_set(P.semigroup, rho).pairs.pairs) == 3


@given(semigroups().filter(lambda S: S.order <= 5), st.data())
def test_generating_sets_generate_and_are_irredundant(S, data):
    L = enumerate_right_congruences(S)
    rho = data.draw(st.sampled_from(list(L.congruences)))
    pairs = list(minimal_generating_set(S, rho).pairs.pairs)
    assert rc_closure(S, pairs) == rho
    for p in pairs:
        assert rc_closure(S, [q for q in pairs if q != p]) != rho
    assert rc_closure(S, irredundant(S, list(rho.pairs()))) == rho
