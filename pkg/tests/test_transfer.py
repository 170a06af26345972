from __future__ import annotations

import json

import pytest

from sgwb.congruence import RightCongruence, rc_closure
from sgwb.constructions import RightActData, act_extension, direct_product
from sgwb.corpus import sample_contexts
from sgwb.errors import ContextMismatch, InputError, VerificationFailed
from sgwb.green import group_congruence_correspondence
from sgwb.semigroup import (
    adjoin,
    chain_semilattice,
    cyclic_group,
    induced,
    klein_four,
    right_zero,
    symmetric_inverse_monoid,
    null_semigroup,
)
from sgwb.transfer import KINDS, TransferRecipe, build_transfer, target_semigroup


def _closure_of(r: TransferRecipe, owner):
    return rc_closure(owner, r.result.pairs)


# --- documented examples ---------------------------------------------------


def test_quotient_example():
    Z4, Z2 = cyclic_group(4), cyclic_group(2)
    r = build_transfer("quotient", {"S": Z4, "T": Z2, "theta": [0, 1, 0, 1],
                                    "rho": RightCongruence.identity(Z2), "X": [(0, 2)]})
    assert r.verified and r.intermediates["Y"] == [(0, 0)]
    assert rc_closure(Z2, r.result.pairs) == RightCongruence.identity(Z2)


def test_finite_complement_down_with_identity_congruence():
    S = adjoin(cyclic_group(2), "zero")
    T = [0, 1]
    sub = induced(S, T)
    r = build_transfer("finite-complement/down",
                       {"S": S, "T": T, "rho": RightCongruence.identity(sub.semigroup)})
    assert r.verified
    assert rc_closure(sub.semigroup, r.result.pairs) == RightCongruence.identity(sub.semigroup)


def test_group_to_congruence_gens_example():
    G = cyclic_group(6)
    rho = group_congruence_correspondence(G, [0, 3])
    r = build_transfer("group/to-congruence-gens", {"G": G, "rho": rho, "X": [3]})
    assert r.verified and rc_closure(G, r.result.pairs).num_classes == 3


def test_dp_finite_monoid_example():
    M, S = cyclic_group(2), right_zero(2)
    P = direct_product(M, S).semigroup
    r = build_transfer("dp-finite-monoid", {"M": M, "S": S, "rho": RightCongruence.universal(P)})
    assert r.verified and rc_closure(P, r.result.pairs) == RightCongruence.universal(P)


def test_group_to_subgroup_gens():
    G = klein_four()
    r = build_transfer("group/to-subgroup-gens", {"G": G, "H": [0, 1]})
    assert r.verified and set(r.result) <= {0, 1}


def test_act_extension_generators_on_regular_act():
    S = adjoin(cyclic_group(2), "identity")
    r = build_transfer("act-extension-generators", {"S": S, "act": RightActData.regular(S)})
    assert r.verified
    assert RightActData.regular(S).orbit(r.result) == frozenset(S.elements)


# --- every kind on sampled contexts ----------------------------------------


@pytest.mark.parametrize("kind", KINDS)
def test_each_kind_verifies_on_samples(kind):
    for ctx in sample_contexts(kind, 8, seed=101):
        r = build_transfer(kind, ctx)
        assert r.verified and r.separating_pair is None
        json.dumps(r.to_json())
        if hasattr(r.result, "pairs"):
            owner = target_semigroup(kind, ctx)
            assert all(0 <= a < owner.order and 0 <= b < owner.order for a, b in r.result.pairs)


@pytest.mark.parametrize("kind", ["quotient", "dp-brandt", "semilattice", "act-extension"])
def test_recipes_are_deterministic(kind):
    ctx = sample_contexts(kind, 1, seed=7)[0]
    a, b = build_transfer(kind, ctx), build_transfer(kind, ctx)
    assert a.to_json() == b.to_json()


def test_restriction_candidate_is_inside_given_pairs():
    for ctx in sample_contexts("restriction/left-ideal", 10, seed=5):
        r = build_transfer("restriction/left-ideal", ctx)
        sub = induced(ctx["S"], ctx["T"])
        lifted = {(sub.up(a), sub.up(b)) for a, b in r.result.pairs}
        assert lifted <= set(r.intermediates["X"])


def test_finite_complement_size_bound():
    for ctx in sample_contexts("finite-complement/down", 10, seed=9):
        r = build_transfer("finite-complement/down", ctx)
        inter = r.intermediates
        assert len(inter["Y"]) <= len(inter["X"]) + len(inter["U"]) ** 2


# --- failures --------------------------------------------------------------


def test_act_extension_uncovered_generator_is_reported():
    """A generator outside A.S breaks the recipe; the failure must be loud."""
    S = null_semigroup(2)  # no identity, so x need not lie in A.S
    A = RightActData.make(S, [[1, 1], [1, 1]])  # x.s = y.s = y
    U = act_extension(S, A).semigroup
    rho = RightCongruence.universal(U)
    ctx = {"S": S, "act": A, "rho": rho, "X": [0]}
    with pytest.raises(VerificationFailed) as info:
        build_transfer("act-extension", ctx)
    assert info.value.separating_pair is not None
    r = build_transfer("act-extension", ctx, raise_on_failure=False)
    assert not r.verified and r.intermediates["uncovered_generators"] == [0]


def test_context_mismatches():
    Z4, Z2 = cyclic_group(4), cyclic_group(2)
    with pytest.raises(ContextMismatch):
        build_transfer("quotient", {"S": Z4, "T": Z2, "theta": [0, 1, 1, 0],
                                    "rho": RightCongruence.identity(Z2)})
    with pytest.raises(ContextMismatch):
        build_transfer("group/to-subgroup-gens", {"G": right_zero(2), "H": [0]})
    with pytest.raises(ContextMismatch):
        build_transfer("dp-finite-monoid", {"M": right_zero(2), "S": Z2,
                                            "rho": RightCongruence.identity(direct_product(right_zero(2), Z2).semigroup)})
    with pytest.raises(ContextMismatch):
        build_transfer("act-extension-generators", {"S": Z2, "act": RightActData.make(Z2, [[0, 0]])})
    C = chain_semilattice(3)
    with pytest.raises(ContextMismatch):
        build_transfer("ideal-extension", {"S": C, "I": [2], "rho": RightCongruence.identity(C)})
    with pytest.raises(ContextMismatch):
        build_transfer("inverse-semilattice", {"S": right_zero(2), "T": [0, 1],
                                               "rho": RightCongruence.identity(right_zero(2))})
    with pytest.raises(InputError):
        build_transfer("restriction/left-ideal", {"S": Z4})


def test_inverse_semilattice_on_symmetric_inverse_monoid():
    S = symmetric_inverse_monoid(2)
    E = sorted(x for x in S.elements if S.m(x, x) == x)
    sub = induced(S, E)
    r = build_transfer("inverse-semilattice", {"S": S, "T": list(S.elements),
                                               "rho": RightCongruence.universal(sub.semigroup)})
    assert r.verified


def test_unknown_kind():
    with pytest.raises(InputError):
        build_transfer("no-such-kind", {})
