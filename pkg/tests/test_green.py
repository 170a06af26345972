from __future__ import annotations

import itertools

import pytest
from hypothesis import given

from sgwb.congruence import RightCongruence, enumerate_right_congruences
from sgwb.constructions import brandt
from sgwb.corpus import group_h_classes_of_corpus, groups
from sgwb.errors import EmptySubset, NotAGroup, NotAnHClass, NotASubgroup, NotASubgroupOfSchutz
from sgwb.green import (
    green_partitions,
    group_congruence_correspondence,
    hs1,
    is_subgroup,
    left_stabilizer,
    rho_G,
    right_cosets,
    right_stabilizer,
    schutzenberger_group,
    sigma_is_congruence,
    subgroup_closure,
    subgroups_of,
    verify_lattice_embedding,
)
from sgwb.semigroup import (
    adjoin,
    cyclic_group,
    klein_four,
    principal_left_ideal,
    principal_right_ideal,
    right_zero,
    symmetric_group,
    trivial,
)

from conftest import semigroups


def B22():
    return brandt(cyclic_group(2), 2)


def brute_subgroups(G):
    """Every subset closed under products and inverses and containing the identity."""
    out = []
    for r in range(1, G.order + 1):
        for sub in itertools.combinations(G.elements, r):
            s = set(sub)
            if G.identity in s and all(G.m(a, b) in s for a in s for b in s):
                out.append(sub)
    return out


# --- Green's relations -----------------------------------------------------


@given(semigroups())
def test_green_classes_match_ideal_definitions(S):
    gp = green_partitions(S)
    for a, b in itertools.combinations(S.elements, 2):
        r = principal_right_ideal(S, a) == principal_right_ideal(S, b)
        l = principal_left_ideal(S, a) == principal_left_ideal(S, b)
        assert (gp.R[a] == gp.R[b]) == r
        assert (gp.L[a] == gp.L[b]) == l
        assert (gp.H[a] == gp.H[b]) == (r and l)


def test_green_examples():
    gp = green_partitions(symmetric_group(3))
    assert len(gp.classes("R")) == len(gp.classes("L")) == len(gp.classes("H")) == 1
    gp = green_partitions(right_zero(2))
    assert len(gp.classes("R")) == 1 and len(gp.classes("L")) == 2 and len(gp.classes("H")) == 2
    B = B22()
    gp = green_partitions(B.semigroup)
    assert sorted(len(h) for h in gp.classes("H")) == [1, 2, 2, 2, 2]
    assert len(gp.group_h_classes()) == 3  # two diagonal classes and {0}


# --- stabilisers -----------------------------------------------------------


def test_stabiliser_examples():
    G = cyclic_group(3)
    st = right_stabilizer(G, G.elements)
    assert set(st.members) == set(G.elements) and len(st) == 4
    B = B22()
    S = B.semigroup
    H = [B.index((1, g, 2)) for g in (0, 1)]
    st = right_stabilizer(S, H)
    assert set(st.members) == {B.index((2, h, 2)) for h in (0, 1)}
    assert st.as_monoid().order == 3
    st = right_stabilizer(S, [S.zero])
    assert set(st.members) == set(S.elements)
    assert set(left_stabilizer(S, H).members) == {B.index((1, h, 1)) for h in (0, 1)}
    with pytest.raises(EmptySubset):
        right_stabilizer(S, [])


# --- Schutzenberger groups -------------------------------------------------


def test_schutzenberger_examples():
    G = cyclic_group(3)
    assert schutzenberger_group(G, G.elements).order == 3
    B = B22()
    S = B.semigroup
    H = [B.index((1, g, 2)) for g in (0, 1)]
    for side in ("right", "left"):
        g = schutzenberger_group(S, H, side)
        assert g.order == 2 and g.acts_regularly_on_H()
        assert sigma_is_congruence(g)
    R0 = adjoin(right_zero(2), "zero")
    assert schutzenberger_group(R0, [0]).order == 1
    with pytest.raises(NotAnHClass):
        schutzenberger_group(S, H[:1])


@pytest.mark.parametrize("S, H", group_h_classes_of_corpus()[:40])
def test_group_h_classes_have_isomorphic_schutzenberger_group(S, H):
    g = schutzenberger_group(S, H)
    assert g.order == len(H) and g.acts_regularly_on_H()
    # the induced table on H is isomorphic to Gamma via h -> the unique g with e.g = h
    e = next(x for x in H if S.m(x, x) == x)
    to_g = {g.act(k, e): k for k in g.group.elements}
    assert set(to_g) == set(H)
    for a, b in itertools.product(H, repeat=2):
        assert to_g[S.m(a, b)] == g.group.m(to_g[a], to_g[b])


# --- subgroups and correspondence ------------------------------------------


@pytest.mark.parametrize("G, count", [(trivial(), 1), (cyclic_group(6), 4), (klein_four(), 5),
                                      (symmetric_group(3), 6)])
def test_subgroup_counts(G, count):
    subs = subgroups_of(G)
    assert len(subs) == count
    assert sorted(subs) == sorted(brute_subgroups(G))


@pytest.mark.parametrize("G", groups())
def test_correspondence_is_a_bijection(G):
    congs = list(enumerate_right_congruences(G))
    subs = subgroups_of(G)
    assert len(congs) == len(subs)
    images = {group_congruence_correspondence(G, H) for H in subs}
    assert images == set(congs)
    for H in subs:
        rho = group_congruence_correspondence(G, H)
        assert sorted(rho.classes()) == right_cosets(G, H)
        assert group_congruence_correspondence(G, rho) == H


def test_correspondence_examples():
    G = cyclic_group(4)
    assert sorted(group_congruence_correspondence(G, [0, 2]).classes()) == [(0, 2), (1, 3)]
    assert group_congruence_correspondence(G, [0]) == RightCongruence.identity(G)
    assert group_congruence_correspondence(G, G.elements) == RightCongruence.universal(G)
    with pytest.raises(NotASubgroup):
        group_congruence_correspondence(G, [1])
    with pytest.raises(NotAGroup):
        group_congruence_correspondence(right_zero(2), [0])
    assert subgroup_closure(cyclic_group(6), [2]) == {0, 2, 4}
    assert is_subgroup(klein_four(), [0, 1]) and not is_subgroup(klein_four(), [1])


# --- rho_G and the lattice embedding ---------------------------------------


def test_rho_g_examples():
    B = B22()
    S = B.semigroup
    H = [B.index((1, g, 2)) for g in (0, 1)]
    triv = rho_G(S, H, [0])
    full = rho_G(S, H, [0, 1])
    assert triv.leq(full) and triv != full
    assert triv.is_right_compatible() and full.is_right_compatible()
    assert S.zero in hs1(S, H)
    with pytest.raises(NotASubgroupOfSchutz):
        rho_G(S, H, [1])


@pytest.mark.parametrize("G, chain", [(cyclic_group(2), 2), (cyclic_group(4), 3), (klein_four(), 5)])
def test_lattice_embedding(G, chain):
    B = brandt(G, 2)
    S = B.semigroup
    H = [B.index((1, g, 2)) for g in G.elements]
    rep = verify_lattice_embedding(S, H)
    assert rep.passed
    assert len(rep.subgroups) == chain
    assert len(set(rep.congruences)) == chain


def test_lattice_embedding_trivial_group_is_vacuous():
    S = adjoin(right_zero(2), "zero")
    rep = verify_lattice_embedding(S, [0])
    assert rep.passed and rep.entries == []
