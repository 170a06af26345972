"""Test corpus: exhaustive small tables, random tables and transfer contexts.

Everything here is driven by an explicit ``random.Random`` so runs are
reproducible from a seed.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import numpy as np

from .congruence import RightCongruence, rc_closure
from .constructions import (
    RightActData,
    SemigroupAction,
    SemilatticeDiagram,
    brandt,
    direct_product,
    rees_quotient,
    semidirect_product,
    strong_semilattice,
)
from .green import green_partitions, right_stabilizer, subgroups_of
from .semigroup import (
    FiniteSemigroup,
    adjoin,
    chain_semilattice,
    cyclic_group,
    full_transformation_monoid,
    induced,
    is_closed,
    is_left_ideal,
    klein_four,
    left_ideal,
    left_zero,
    null_semigroup,
    right_zero,
    subsemigroup,
    symmetric_group,
    symmetric_inverse_monoid,
    trivial,
    two_element_semilattice_monoid,
    validate_table,
)
from .transfer import is_inverse_subsemigroup

# ---------------------------------------------------------------------------
# tables


def _consistent(mul, n, x, y):
    """Check every associativity triple that became decidable after setting (x, y)."""
    for a in range(n):
        for b in range(n):
            ab = mul[a][b]
            if ab < 0:
                continue
            for c in range(n):
                bc = mul[b][c]
                if bc < 0:
                    continue
                l, r = mul[ab][c], mul[a][bc]
                if l >= 0 and r >= 0 and l != r:
                    return False
    return True


def _fill(n, rng=None, limit=None):
    mul = [[-1] * n for _ in range(n)]
    cells = [(x, y) for x in range(n) for y in range(n)]
    out = []

    def rec(k):
        if limit is not None and len(out) >= limit:
            return
        if k == len(cells):
            out.append(tuple(tuple(r) for r in mul))
            return
        x, y = cells[k]
        values = list(range(n))
        if rng is not None:
            rng.shuffle(values)
        for v in values:
            mul[x][y] = v
            if _consistent(mul, n, x, y):
                rec(k + 1)
                if limit is not None and len(out) >= limit:
                    break
        mul[x][y] = -1

    rec(0)
    return out


@lru_cache(maxsize=None)
def all_tables(n: int) -> tuple:
    """Every associative table on {0..n-1} (n <= 3), as tuples of rows."""
    if n > 3:
        raise ValueError("exhaustive generation is only offered up to order 3")
    return tuple(_fill(n)) if n > 0 else ()


def small_semigroups(max_order: int = 3) -> list:
    return [validate_table(len(t), t) for n in range(1, max_order + 1) for t in all_tables(n)]


def random_table(n: int, rng: random.Random) -> FiniteSemigroup:
    """A random associative table of order n (randomised backtracking)."""
    t = _fill(n, rng, limit=1)[0]
    return validate_table(n, t)


def random_tables(n: int, count: int, seed: int = 0) -> list:
    rng = random.Random(seed)
    seen, out = set(), []
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        S = random_table(n, rng)
        if S not in seen:
            seen.add(S)
            out.append(S)
    return out


# ---------------------------------------------------------------------------
# named pieces


def groups() -> list:
    return [trivial(), cyclic_group(2), cyclic_group(3), cyclic_group(4), klein_four(),
            cyclic_group(5), cyclic_group(6), symmetric_group(3)]


def small_monoids() -> list:
    return [trivial(), cyclic_group(2), cyclic_group(3), two_element_semilattice_monoid(),
            chain_semilattice(3), adjoin(right_zero(2), "identity"), adjoin(left_zero(2), "identity"),
            adjoin(null_semigroup(2), "identity"), klein_four()]


def named_semigroups() -> list:
    return [cyclic_group(2), cyclic_group(3), cyclic_group(4), klein_four(), right_zero(2), right_zero(3),
            left_zero(2), left_zero(3), null_semigroup(3), chain_semilattice(3),
            two_element_semilattice_monoid(), brandt(cyclic_group(2), 2).semigroup,
            full_transformation_monoid(2), symmetric_inverse_monoid(2), symmetric_group(3)]


def random_transformation_semigroup(rng: random.Random, degree: int = 3, gens: int = 2,
                                    max_order: int = 12) -> FiniteSemigroup:
    """Subsemigroup of T_degree generated by random maps, retried until small enough."""
    T = _full_transformations(degree)
    while True:
        g = [rng.randrange(T.order) for _ in range(gens)]
        elems = subsemigroup(T, g)
        if len(elems) <= max_order:
            return induced(T, elems).semigroup


@lru_cache(maxsize=None)
def _full_transformations(n):
    return full_transformation_monoid(n)


def random_semigroup(rng: random.Random, max_order: int = 8) -> FiniteSemigroup:
    pick = rng.random()
    if pick < 0.3:
        pool = [S for S in named_semigroups() if S.order <= max_order]
        return rng.choice(pool)
    if pick < 0.6:
        n = rng.randint(1, min(3, max_order))
        return validate_table(n, rng.choice(all_tables(n)))
    return random_transformation_semigroup(rng, 3, rng.randint(1, 2), max_order)


def random_monoid(rng: random.Random, max_order: int = 6) -> FiniteSemigroup:
    pick = rng.random()
    if pick < 0.4:
        return rng.choice([M for M in small_monoids() if M.order <= max_order])
    S = random_semigroup(rng, max_order - 1)
    return S if S.identity is not None else adjoin(S, "identity")


def random_group(rng: random.Random, max_order: int = 6) -> FiniteSemigroup:
    return rng.choice([G for G in groups() if G.order <= max_order])


def random_right_congruence(S: FiniteSemigroup, rng: random.Random, max_pairs: int = 3) -> RightCongruence:
    k = rng.choice([0, 1, 1, 1, 2, 2, max_pairs])
    pairs = [(rng.randrange(S.order), rng.randrange(S.order)) for _ in range(k)]
    return rc_closure(S, pairs)


def random_pairs(S: FiniteSemigroup, rng: random.Random, max_pairs: int = 3) -> list:
    return [(rng.randrange(S.order), rng.randrange(S.order)) for _ in range(rng.randint(0, max_pairs))]


# ---------------------------------------------------------------------------
# structure helpers for samplers


def _idempotents(S):
    return [x for x in S.elements if S.m(x, x) == x]


def random_diagram(rng: random.Random, want_monoid_component: bool = False) -> SemilatticeDiagram:
    """A strong semilattice diagram on a small semilattice with constant or identity maps."""
    Y = rng.choice([trivial(), chain_semilattice(2), chain_semilattice(3),
                    validate_table(3, [[0, 2, 2], [2, 1, 2], [2, 2, 2]])])
    parts = []
    for a in Y.elements:
        if want_monoid_component or rng.random() < 0.5:
            parts.append(random_monoid(rng, 4))
        else:
            parts.append(random_semigroup(rng, 4))
    # for each covering pair pick a homomorphism, then compose along chains
    homs = {}
    order = sorted(Y.elements, key=lambda a: -len([b for b in Y.elements if Y.m(a, b) == b]))
    for a in order:
        for b in Y.elements:
            if a == b or Y.m(a, b) != b:
                continue
            # is there c strictly between a and b?
            mids = [c for c in Y.elements if c not in (a, b) and Y.m(a, c) == c and Y.m(c, b) == b]
            if mids:
                continue
            Pa, Pb = parts[a], parts[b]
            if Pa == Pb and rng.random() < 0.5:
                homs[(a, b)] = tuple(Pa.elements)
            else:
                e = rng.choice(_idempotents(Pb))
                homs[(a, b)] = tuple([e] * Pa.order)
    changed = True
    while changed:
        changed = False
        for (a, b), f in list(homs.items()):
            for (b2, c), g in list(homs.items()):
                if b2 == b and (a, c) not in homs:
                    homs[(a, c)] = tuple(g[x] for x in f)
                    changed = True
    d = SemilatticeDiagram(Y, parts, homs)
    d.validate()
    return d


def random_act(S: FiniteSemigroup, rng: random.Random) -> RightActData:
    pick = rng.random()
    if pick < 0.4:
        return RightActData.regular(S)
    if pick < 0.8:
        return RightActData.quotient(random_right_congruence(S, rng))
    # disjoint union of two quotient acts
    A1 = RightActData.quotient(random_right_congruence(S, rng))
    A2 = RightActData.quotient(random_right_congruence(S, rng))
    table = np.vstack([A1.table, A2.table + A1.size])
    return RightActData.make(S, table)


def _inverse(S, t, within):
    for u in within:
        if S.prod(t, u, t) == t and S.prod(u, t, u) == u:
            return u
    return None


def random_automorphism_action(G, H, rng):
    """H acting on G: trivially, or by inversion when G is abelian and |H| is even."""
    if G.is_commutative and H.order % 2 == 0 and H.is_group and rng.random() < 0.6:
        # h acts by inversion iff h lies outside the index-2 subgroup of squares-closure
        sq = frozenset(H.m(h, h) for h in H.elements)
        from .green import subgroup_closure
        K = subgroup_closure(H, sq)
        if len(K) * 2 == H.order:
            table = [[x if h in K else G.inverse(x) for x in G.elements] for h in H.elements]
            return SemigroupAction.make(H, G, table)
    return SemigroupAction.trivial(H, G)


def random_endomorphism_action(S, T, rng):
    """T monoid acting on S: identity acts trivially, others by a constant idempotent or trivially."""
    if T.identity is not None and T.order == 2 and rng.random() < 0.6:
        e = rng.choice(_idempotents(S))
        t_other = 1 - T.identity
        if T.m(t_other, t_other) == t_other:
            table = [[x for x in S.elements] if t == T.identity else [e] * S.order for t in T.elements]
            return SemigroupAction.make(T, S, table)
    return SemigroupAction.trivial(T, S)


# ---------------------------------------------------------------------------
# samplers, one per transfer kind; each returns a context dict or None (retry)


def _s_restriction_left_ideal(rng):
    if rng.random() < 0.4:
        S0 = random_semigroup(rng, 12)
        S = adjoin(S0, "zero")
        T = list(S0.elements)
    else:
        S = random_semigroup(rng, 14)
        L = left_ideal(S, [rng.randrange(S.order)])
        T = [x for x in S.elements if x not in L]
        if not T or not is_closed(S, T):
            return None
    sub = induced(S, T)
    return {"S": S, "T": T, "rho": random_right_congruence(sub.semigroup, rng)}


def _s_restriction_stabiliser(rng):
    S = random_semigroup(rng, 14)
    subset = rng.sample(list(S.elements), rng.randint(1, min(2, S.order)))
    M = right_stabilizer(S, subset).as_monoid()
    return {"S": S, "subset": subset, "rho": random_right_congruence(M, rng)}


def _s_restriction_monoid_component(rng):
    d = random_diagram(rng, want_monoid_component=True)
    beta = rng.randrange(d.Y.order)
    con = strong_semilattice(d)
    part = d.parts[beta]
    sub = induced(con.semigroup, [con.index((beta, a)) for a in part.elements])
    return {"diagram": d, "beta": beta, "rho": random_right_congruence(sub.semigroup, rng)}


def _random_subsemigroup(S, rng):
    gens = rng.sample(list(S.elements), rng.randint(1, min(2, S.order)))
    return sorted(subsemigroup(S, gens))


def _s_fc_down(rng):
    S = random_semigroup(rng, 14)
    T = _random_subsemigroup(S, rng)
    sub = induced(S, T)
    return {"S": S, "T": T, "rho": random_right_congruence(sub.semigroup, rng)}


def _s_fc_up(rng):
    S = random_semigroup(rng, 14)
    return {"S": S, "T": _random_subsemigroup(S, rng), "rho": random_right_congruence(S, rng)}


def _s_quotient(rng):
    pick = rng.random()
    if pick < 0.35:
        A, B = random_semigroup(rng, 3), random_semigroup(rng, 3)
        P = direct_product(A, B)
        S, T, theta = P.semigroup, A, list(P.maps["left"])
    elif pick < 0.7:
        S = random_semigroup(rng, 8)
        I = _random_ideal(S, rng)
        Q = rees_quotient(S, I)
        T, theta = Q.semigroup, list(Q.maps["quotient"])
    else:
        n = rng.choice([2, 3])
        S, T = cyclic_group(n * 2), cyclic_group(n)
        theta = [x % n for x in S.elements]
    return {"S": S, "T": T, "theta": theta, "rho": random_right_congruence(T, rng)}


def _random_ideal(S, rng):
    x = rng.randrange(S.order)
    S1 = [None, *S.elements]
    return sorted({S.mul1(S.mul1(x, b) if a is None else S.mul1(S.m(a, x), b), None)
                   for a in S1 for b in S1})


def _s_ideal_extension(rng):
    S = random_semigroup(rng, 14)
    return {"S": S, "I": _random_ideal(S, rng), "rho": random_right_congruence(S, rng)}


def _s_group_subgroup(rng):
    G = random_group(rng)
    return {"G": G, "H": list(rng.choice(subgroups_of(G)))}


def _s_group_congruence(rng):
    from .green import group_congruence_correspondence
    G = random_group(rng)
    return {"G": G, "rho": group_congruence_correspondence(G, rng.choice(subgroups_of(G)))}


def _s_dp_finite_monoid(rng):
    M, S = random_monoid(rng, 4), random_semigroup(rng, 4)
    return {"M": M, "S": S, "rho": random_right_congruence(direct_product(M, S).semigroup, rng)}


def _s_slice_reps(rng):
    M, N = random_monoid(rng, 4), random_monoid(rng, 4)
    return {"M": M, "N": N, "rho": random_right_congruence(direct_product(M, N).semigroup, rng)}


def _s_dp_group(rng):
    G, M = random_group(rng, 4), random_monoid(rng, 4)
    return {"G": G, "M": M, "rho": random_right_congruence(direct_product(G, M).semigroup, rng)}


def _s_dp_brandt(rng):
    G = random_group(rng, 2)
    k = rng.choice([1, 2])
    M = random_monoid(rng, 3)
    P = direct_product(brandt(G, k).semigroup, M)
    return {"G": G, "k": k, "M": M, "rho": random_right_congruence(P.semigroup, rng)}


def _s_sdp_subgroup(rng):
    G, H = random_group(rng, 4), random_group(rng, 4)
    act = random_automorphism_action(G, H, rng)
    U = semidirect_product(G, H, act).semigroup
    return {"G": G, "H": H, "action": act, "subgroup": list(rng.choice(subgroups_of(U)))}


def _s_sdp_factor(rng):
    S, T = random_semigroup(rng, 5), random_monoid(rng, 3)
    return {"S": S, "T": T, "action": random_endomorphism_action(S, T, rng),
            "rho": random_right_congruence(S, rng)}


def _s_semilattice(rng):
    d = random_diagram(rng)
    con = strong_semilattice(d)
    return {"diagram": d, "rho": random_right_congruence(con.semigroup, rng)}


def _s_act_extension(rng):
    from .constructions import act_extension
    S = random_monoid(rng, 4)
    A = random_act(S, rng)
    U = act_extension(S, A).semigroup
    return {"S": S, "act": A, "rho": random_right_congruence(U, rng)}


def _s_act_generators(rng):
    S = random_semigroup(rng, 5)
    A = random_act(S, rng)
    if A.size < 2:
        return None
    return {"S": S, "act": A}


def _s_inverse_semilattice(rng):
    S = rng.choice([symmetric_inverse_monoid(2), symmetric_inverse_monoid(3), chain_semilattice(3),
                    brandt(cyclic_group(2), 2).semigroup, cyclic_group(4)])
    gens = rng.sample(list(S.elements), rng.randint(1, 2))
    gens += [_inverse(S, g, S.elements) for g in gens]
    T = sorted(subsemigroup(S, gens))
    if not is_inverse_subsemigroup(S, T):
        return None
    E = sorted(t for t in T if S.m(t, t) == t)
    return {"S": S, "T": T, "rho": random_right_congruence(induced(S, E).semigroup, rng)}


SAMPLERS = {
    "restriction/left-ideal": _s_restriction_left_ideal,
    "restriction/stabiliser": _s_restriction_stabiliser,
    "restriction/monoid-component": _s_restriction_monoid_component,
    "finite-complement/down": _s_fc_down,
    "finite-complement/up": _s_fc_up,
    "quotient": _s_quotient,
    "ideal-extension": _s_ideal_extension,
    "group/to-subgroup-gens": _s_group_subgroup,
    "group/to-congruence-gens": _s_group_congruence,
    "dp-finite-monoid": _s_dp_finite_monoid,
    "slice-representatives": _s_slice_reps,
    "dp-group": _s_dp_group,
    "dp-brandt": _s_dp_brandt,
    "sdp-subgroup": _s_sdp_subgroup,
    "sdp-factor": _s_sdp_factor,
    "semilattice": _s_semilattice,
    "act-extension": _s_act_extension,
    "act-extension-generators": _s_act_generators,
    "inverse-semilattice": _s_inverse_semilattice,
}


def sample_contexts(kind: str, count: int, seed: int = 0) -> list:
    """``count`` valid random contexts for ``kind``."""
    rng = random.Random(f"{kind}:{seed}")
    sampler = SAMPLERS[kind]
    out = []
    while len(out) < count:
        ctx = sampler(rng)
        if ctx is not None:
            out.append(ctx)
    return out


def group_h_classes_of_corpus() -> list:
    """(S, H) for every group H-class in the named corpus and the order <= 3 tables."""
    out = []
    for S in named_semigroups() + small_semigroups(3):
        gp = green_partitions(S)
        for H in gp.group_h_classes():
            out.append((S, H))
    return out
