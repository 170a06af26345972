from __future__ import annotations

import itertools
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sgwb.congruence import RightCongruence, rc_closure
from sgwb.constructions import (
    RightActData,
    SemigroupAction,
    SemilatticeDiagram,
    act_extension,
    brandt,
    direct_product,
    function_space,
    rees_quotient,
    semidirect_product,
    slice_congruence,
    strong_semilattice,
    wreath_product,
    zero_direct_union,
)
from sgwb.corpus import random_act, random_diagram, small_monoids
from sgwb.errors import (
    ActAxiomViolation,
    ActionAxiomViolation,
    DiagramInvalid,
    NoIdentityInSecondFactor,
    NotAGroup,
    NotAMonoid,
    NotAnIdeal,
)
from sgwb.semigroup import (
    chain_semilattice,
    cyclic_group,
    is_ideal,
    klein_four,
    right_ideal,
    right_zero,
    special_elements,
    trivial,
    two_element_semilattice_monoid,
)

from conftest import semigroups


# --- direct products -------------------------------------------------------


@given(semigroups().filter(lambda S: S.order <= 4), semigroups().filter(lambda S: S.order <= 4))
def test_direct_product_componentwise(S, T):
    P = direct_product(S, T)
    assert P.order == S.order * T.order
    for (s1, t1), (s2, t2) in itertools.product(P.keys, repeat=2):
        got = P.key(P.semigroup.m(P.index((s1, t1)), P.index((s2, t2))))
        assert got == (S.m(s1, s2), T.m(t1, t2))


def test_direct_product_examples():
    P = direct_product(cyclic_group(2), cyclic_group(3))
    assert P.order == 6 and P.semigroup.is_group and P.semigroup.is_commutative
    assert direct_product(cyclic_group(3), right_zero(2)).order == 6
    Q = direct_product(right_zero(3), trivial())
    assert Q.semigroup.table == right_zero(3).table


def test_slice_congruence_examples():
    S, M = cyclic_group(2), cyclic_group(2)
    P = direct_product(S, M)
    for m in M.elements:
        assert slice_congruence(RightCongruence.universal(P.semigroup), P, m).num_classes == 1
        assert slice_congruence(RightCongruence.identity(P.semigroup), P, m).num_classes == 2
    rho = rc_closure(P.semigroup, [(P.index((0, 0)), P.index((1, 0)))])
    assert slice_congruence(rho, P, 0) == RightCongruence.universal(S)
    with pytest.raises(NoIdentityInSecondFactor):
        Q = direct_product(S, right_zero(2))
        slice_congruence(RightCongruence.identity(Q.semigroup), Q, 0)


# --- semidirect and wreath products ----------------------------------------


def test_trivial_action_is_direct_product():
    for S, T in ((cyclic_group(3), right_zero(2)), (right_zero(2), klein_four())):
        sd = semidirect_product(S, T, SemigroupAction.trivial(T, S))
        assert sd.semigroup.table == direct_product(S, T).semigroup.table


def test_inversion_action_gives_nonabelian_group():
    S, T = cyclic_group(3), cyclic_group(2)
    act = SemigroupAction.make(T, S, [[0, 1, 2], [0, 2, 1]])
    P = semidirect_product(S, T, act)
    assert P.order == 6 and P.semigroup.is_group and not P.semigroup.is_commutative
    for (s1, t1), (s2, t2) in itertools.product(P.keys, repeat=2):
        want = (S.m(s1, act.table[t1][s2]), T.m(t1, t2))
        assert P.key(P.semigroup.m(P.index((s1, t1)), P.index((s2, t2)))) == want


def test_bad_action_rejected():
    S, T = cyclic_group(3), cyclic_group(2)
    with pytest.raises(ActionAxiomViolation):
        SemigroupAction.make(T, S, [[0, 1, 2], [1, 2, 0]])  # not an endomorphism
    with pytest.raises(ActionAxiomViolation):
        SemigroupAction.make(T, S, [[0, 1, 2]])


def test_wreath_product():
    W = wreath_product(cyclic_group(2), cyclic_group(2))
    assert W.order == 8
    assert W.semigroup.identity == W.index(((0, 0), 0))
    # the non-identity element of N swaps coordinates
    f = ((1, 0), 0)
    n = ((0, 0), 1)
    prod = W.key(W.semigroup.m(W.index(n), W.index(f)))
    assert prod == ((0, 1), 1)
    M, N = two_element_semilattice_monoid(), cyclic_group(3)
    W = wreath_product(M, N)
    assert W.order == M.order ** N.order * N.order
    with pytest.raises(NotAMonoid):
        function_space(right_zero(2), cyclic_group(2))


@pytest.mark.parametrize("M, N", [(small_monoids()[i], small_monoids()[j]) for i, j in ((0, 1), (1, 2), (2, 0))])
def test_wreath_product_rule(M, N):
    W = wreath_product(M, N)
    for (f, n), (g, k) in itertools.product(W.keys, repeat=2):
        shifted = tuple(g[N.m(x, n)] for x in N.elements)
        want = (tuple(M.m(a, b) for a, b in zip(f, shifted)), N.m(n, k))
        assert W.key(W.semigroup.m(W.index((f, n)), W.index((g, k)))) == want


# --- unions ----------------------------------------------------------------


def test_zero_direct_union():
    S, T = cyclic_group(2), right_zero(3)
    U = zero_direct_union(S, T)
    assert U.order == S.order + T.order + 1
    z = U.semigroup.zero
    for s, t in itertools.product(S.elements, T.elements):
        a, b = U.index(("S", s)), U.index(("T", t))
        assert U.semigroup.m(a, b) == U.semigroup.m(b, a) == z
    assert U.semigroup.mul[:2, :2].tolist() == S.table


def _clifford_diagram():
    Y = chain_semilattice(2)  # min: 0 below 1
    return SemilatticeDiagram(Y, [cyclic_group(2), cyclic_group(2)], {(1, 0): (0, 1)})


def test_strong_semilattice_examples():
    C = strong_semilattice(_clifford_diagram())
    assert C.order == 4
    top = [C.index((1, a)) for a in (0, 1)]
    bottom = [C.index((0, a)) for a in (0, 1)]
    assert C.semigroup.m(top[1], bottom[1]) == bottom[0]
    C1 = strong_semilattice(_clifford_diagram(), adjoin_identities=True)
    assert C1.order == 4 + 2


def test_strong_semilattice_rule_on_random_diagrams():
    rng = random.Random(4)
    for _ in range(20):
        d = random_diagram(rng)
        C = strong_semilattice(d)
        Y = d.Y
        for (al, a), (be, b) in itertools.product(C.keys, repeat=2):
            g = Y.m(al, be)
            want = (g, d.parts[g].m(d.hom(al, g)[a], d.hom(be, g)[b]))
            assert C.key(C.semigroup.m(C.index((al, a)), C.index((be, b)))) == want


def test_invalid_diagrams():
    Y = chain_semilattice(2)
    with pytest.raises(DiagramInvalid):
        strong_semilattice(SemilatticeDiagram(Y, [cyclic_group(2), cyclic_group(3)], {(1, 0): (0, 1)}))
    with pytest.raises(DiagramInvalid):
        strong_semilattice(SemilatticeDiagram(Y, [cyclic_group(2), cyclic_group(2)], {}))
    with pytest.raises(DiagramInvalid):
        strong_semilattice(SemilatticeDiagram(Y, [cyclic_group(2)], {}))
    Y3 = chain_semilattice(3)
    parts = [right_zero(2)] * 3
    # composition fails: 2->1 swaps, 1->0 identity, 2->0 identity
    homs = {(2, 1): (1, 0), (1, 0): (0, 1), (2, 0): (0, 1)}
    with pytest.raises(DiagramInvalid):
        strong_semilattice(SemilatticeDiagram(Y3, parts, homs))


# --- act extension ---------------------------------------------------------


def test_act_extension_regular():
    S = cyclic_group(2)
    U = act_extension(S, RightActData.regular(S))
    assert U.order == 4
    A = U.maps["A"]
    assert is_ideal(U.semigroup, A)
    assert right_ideal(U.semigroup, A).members == set(A)
    for x in U.semigroup.elements:
        for y in A:
            assert U.semigroup.m(x, y) == y


@given(st.sampled_from(small_monoids() + [right_zero(2), cyclic_group(3)]), st.integers(0, 10_000))
def test_act_extension_rule(S, seed):
    A = random_act(S, random.Random(seed))
    U = act_extension(S, A)
    n = S.order
    for x, y in itertools.product(U.semigroup.elements, repeat=2):
        if y >= n:
            want = y
        elif x >= n:
            want = n + A.act(x - n, y)
        else:
            want = S.m(x, y)
        assert U.semigroup.m(x, y) == want


def test_bad_act_rejected():
    S = cyclic_group(2)
    with pytest.raises(ActAxiomViolation):
        RightActData.make(S, [[1, 0]])  # a.1 != a
    with pytest.raises(ActAxiomViolation):
        RightActData.make(S, [[0, 2]])


# --- Brandt and Rees quotients ---------------------------------------------


def test_brandt_examples():
    B = brandt(cyclic_group(2), 2)
    S = B.semigroup
    assert B.order == 9
    assert special_elements(S, "idempotent") == {B.index((i, 0, i)) for i in (1, 2)} | {S.zero}
    for g, h in itertools.product((0, 1), repeat=2):
        assert S.m(B.index((1, g, 2)), B.index((2, h, 1))) == B.index((1, (g + h) % 2, 1))
        assert S.m(B.index((1, g, 2)), B.index((1, h, 1))) == S.zero
    with pytest.raises(NotAGroup):
        brandt(right_zero(2), 2)


@pytest.mark.parametrize("G", [cyclic_group(3), klein_four()])
@pytest.mark.parametrize("k", [1, 3])
def test_brandt_size_and_rule(G, k):
    B = brandt(G, k)
    S = B.semigroup
    assert B.order == k * k * G.order + 1
    for x, y in itertools.product(range(B.order - 1), repeat=2):
        (i, g, j), (kk, h, l) = B.key(x), B.key(y)
        want = B.index((i, G.m(g, h), l)) if j == kk else S.zero
        assert S.m(x, y) == want


def test_rees_quotient():
    S = cyclic_group(3)
    assert rees_quotient(S, S.elements).order == 1
    B = brandt(cyclic_group(2), 2)
    Q = rees_quotient(B.semigroup, [B.semigroup.zero])
    assert Q.order == B.order
    assert np.array_equal(Q.semigroup.mul, B.semigroup.mul)
    T = chain_semilattice(4)
    Q = rees_quotient(T, [0, 1])
    assert Q.order == 4 - 2 + 1
    with pytest.raises(NotAnIdeal):
        rees_quotient(T, [3])
