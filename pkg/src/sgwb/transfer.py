"""Generating-set transfers.

Each kind takes the hypotheses of a finiteness argument as a finite
context, builds the candidate generating set the argument prescribes, and
checks it: by right congruence closure for pair sets, by subgroup closure
for the semidirect subgroup kind, and by act closure for act generators.
Every "choose" step picks the lowest-index admissible element.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional

from .congruence import (
    GenPairs,
    RightCongruence,
    Step,
    XSequence,
    consequence,
    irredundant,
    rc_closure,
    replay,
)
from .constructions import (
    Construction,
    RightActData,
    SemigroupAction,
    SemilatticeDiagram,
    act_extension,
    brandt,
    direct_product,
    rees_quotient,
    semidirect_product,
    slice_congruence,
    strong_semilattice,
)
from .errors import ContextMismatch, InputError, VerificationFailed
from .green import group_congruence_correspondence, is_subgroup, right_stabilizer, subgroup_closure
from .semigroup import (
    FiniteSemigroup,
    adjoin,
    check_homomorphism,
    induced,
    is_closed,
    is_ideal,
    is_left_ideal,
    right_ideal,
    subsemigroup,
)

KINDS = (
    "restriction/left-ideal",
    "restriction/stabiliser",
    "restriction/monoid-component",
    "finite-complement/down",
    "finite-complement/up",
    "quotient",
    "ideal-extension",
    "group/to-subgroup-gens",
    "group/to-congruence-gens",
    "dp-finite-monoid",
    "slice-representatives",
    "dp-group",
    "dp-brandt",
    "sdp-subgroup",
    "sdp-factor",
    "semilattice",
    "act-extension",
    "act-extension-generators",
    "inverse-semilattice",
)


@dataclass
class TransferRecipe:
    kind: str
    context: dict
    result: object  # GenPairs, or a tuple of elements for the generator kinds
    verified: bool
    intermediates: dict = field(default_factory=dict)
    separating_pair: Optional[tuple] = None

    def to_json(self) -> dict:
        res = self.result
        res = [list(p) for p in res.pairs] if isinstance(res, GenPairs) else list(res)
        return {"kind": self.kind, "result": res, "verified": self.verified,
                "separating_pair": None if self.separating_pair is None else list(self.separating_pair),
                "intermediates": _jsonable(self.intermediates)}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in items]
    if isinstance(obj, RightCongruence):
        return obj.to_json()
    if isinstance(obj, GenPairs):
        return [list(p) for p in obj.pairs]
    if hasattr(obj, "item"):
        return obj.item()
    return obj


# ---------------------------------------------------------------------------
# shared helpers


def _require(ctx, *keys):
    missing = [k for k in keys if k not in ctx]
    if missing:
        raise InputError(f"context is missing {', '.join(missing)}")
    return [ctx[k] for k in keys]


def _hyp(ok, hypothesis, detail=""):
    if not ok:
        raise ContextMismatch(hypothesis, detail)


def generating_pairs(S: FiniteSemigroup, rho: RightCongruence) -> list:
    """An irredundant generating set of rho (greedy reduction of a spanning set)."""
    return irredundant(S, list(rho.spanning_pairs()), rho)


def ideal_generators(S: FiniteSemigroup, members) -> tuple:
    """Generators of the right ideal members*S^1, drawn from members, lowest index first."""
    return right_ideal(S, members).generators


def _separating(rho1: RightCongruence, rho2: RightCongruence):
    for a, b in itertools.combinations(rho1.owner.elements, 2):
        if rho1.related(a, b) != rho2.related(a, b):
            return (a, b)
    return None


def _sorted_pairs(pairs):
    out = []
    seen = set()
    for p in pairs:
        p = (int(p[0]), int(p[1]))
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _check_cong(rho, owner, name="rho"):
    if not isinstance(rho, RightCongruence):
        raise InputError(f"{name} must be a RightCongruence")
    if rho.owner != owner:
        raise ContextMismatch(f"{name} is a right congruence on the expected semigroup",
                              f"order {rho.owner.order} vs {owner.order}")
    _hyp(rho.is_right_compatible(), f"{name} is right compatible")


def _restricted(rho: RightCongruence, elems) -> RightCongruence:
    """rho on S restricted to the subsemigroup on ``elems`` (ascending)."""
    sub = induced(rho.owner, elems)
    return RightCongruence(sub.semigroup, [rho.class_of[x] for x in sub.elements])


def _finish(kind, ctx, owner, target, pairs, inter, raise_on_failure):
    pairs = _sorted_pairs(pairs)
    got = rc_closure(owner, pairs)
    sep = None if got == target else _separating(got, target)
    recipe = TransferRecipe(kind, ctx, GenPairs(owner, pairs), sep is None, inter, sep)
    if sep is not None and raise_on_failure:
        raise VerificationFailed(kind, sep)
    return recipe


def _pairs_in(rho: RightCongruence, X, up=None) -> bool:
    """All pairs of X (optionally mapped by ``up``) are rho-related."""
    for a, b in X:
        if up is not None:
            a, b = up[a], up[b]
        if not rho.related(a, b):
            return False
    return True


# ---------------------------------------------------------------------------
# restriction kinds: a generating set of the induced congruence on the big
# semigroup, drawn from rho itself, already generates rho


def _restriction_core(kind, big: FiniteSemigroup, elems, rho: RightCongruence, X, raise_on_failure,
                      extra=None):
    """rho lives on the subsemigroup on ``elems``; X are pairs in big-indices."""
    sub = induced(big, elems)
    _check_cong(rho, sub.semigroup)
    rho_pairs_big = [(sub.up(a), sub.up(b)) for a, b in rho.spanning_pairs()]
    rho_bar = rc_closure(big, rho_pairs_big)
    if X is None:
        X = irredundant(big, rho_pairs_big, rho_bar)
    X = _sorted_pairs(X)
    _hyp(all(a in sub.index and b in sub.index for a, b in X), "X is a subset of T x T")
    _hyp(all(rho.related(sub.down(a), sub.down(b)) for a, b in X), "X is a subset of rho")
    _hyp(rc_closure(big, X) == rho_bar, "X generates the congruence induced on the larger semigroup")
    inter = {"X": X, "rho_bar": rho_bar, **(extra or {})}
    local = [(sub.down(a), sub.down(b)) for a, b in X]
    return sub, inter, local


def _t_restriction_left_ideal(ctx, raise_on_failure):
    S, T, rho = _require(ctx, "S", "T", "rho")
    T = sorted(set(T))
    _hyp(is_closed(S, T), "T is a subsemigroup")
    comp = [x for x in S.elements if x not in set(T)]
    _hyp(not comp or is_left_ideal(S, comp), "S \\ T is a left ideal")
    sub, inter, local = _restriction_core("restriction/left-ideal", S, T, rho, ctx.get("X"),
                                          raise_on_failure)
    return _finish("restriction/left-ideal", ctx, sub.semigroup, rho, local, inter, raise_on_failure)


def _t_restriction_stabiliser(ctx, raise_on_failure):
    S, subset, rho = _require(ctx, "S", "subset", "rho")
    stab = right_stabilizer(S, subset)
    M = stab.as_monoid()
    S1 = adjoin(S, "identity")
    # monoid element 0 is the formal identity (index n in S^1), i+1 is members[i]
    elems = [S1.identity, *stab.members]
    order = sorted(range(len(elems)), key=lambda i: elems[i])
    # rho is given on the monoid table; move it to the ascending-S^1 order used by induced()
    _check_cong(rho, M)
    sub = induced(S1, elems)
    rho_sub = RightCongruence(sub.semigroup, [rho.class_of[order[p]] for p in range(len(elems))])
    X = ctx.get("Y")
    if X is not None:  # given in monoid indices
        X = [(elems[a], elems[b]) for a, b in X]
    _, inter, local = _restriction_core("restriction/stabiliser", S1, elems, rho_sub, X, raise_on_failure,
                                        {"stabiliser": list(stab.members)})
    local_m = [(order[a], order[b]) for a, b in local]
    inter["Y"] = local_m
    return _finish("restriction/stabiliser", ctx, M, rho, local_m, inter, raise_on_failure)


def _t_restriction_monoid_component(ctx, raise_on_failure):
    diagram, beta, rho = _require(ctx, "diagram", "beta", "rho")
    con = strong_semilattice(diagram, ctx.get("adjoin_identities", False))
    S = con.semigroup
    d = con.factors["diagram"]
    part = d.parts[beta]
    _hyp(part.identity is not None, "S_beta is a monoid")
    elems = [con.index((beta, a)) for a in part.elements]
    sub, inter, local = _restriction_core("restriction/monoid-component", S, elems,
                                          _as_sub_cong(rho, S, elems), ctx.get("X"), raise_on_failure)
    # rewrite every certificate in S by the multiplier 1_beta s_i and replay it in S_beta
    one = con.index((beta, part.identity))
    Xb = inter["X"]
    target = _as_sub_cong(rho, S, elems)
    replayed = 0
    for a, b in target.spanning_pairs():
        res = consequence(S, Xb, (sub.up(a), sub.up(b)))
        _hyp(bool(res), "X generates the induced congruence")
        steps = res.certificate.steps
        mults = [None if st.mul is None else S.m(one, st.mul) for st in steps]
        _hyp(all(m is None or m in sub.index for m in mults), "1_beta s_i lies in S_beta")
        seq = XSequence(a, b, tuple(Step(st.pair, st.dir, None if m is None else sub.down(m))
                                    for st, m in zip(steps, mults)))
        replay(sub.semigroup.mul1, local, seq)
        replayed += 1
    inter["rewritten_certificates"] = replayed
    return _finish("restriction/monoid-component", ctx, sub.semigroup, target, local, inter,
                   raise_on_failure)


def _as_sub_cong(rho, S, elems):
    """Accept rho on the induced subsemigroup (ascending elems)."""
    sub = induced(S, elems)
    if isinstance(rho, RightCongruence) and rho.owner == sub.semigroup:
        return rho
    raise ContextMismatch("rho is a right congruence on the component", "wrong owner")


# ---------------------------------------------------------------------------
# finite complement


def _t_finite_complement_down(ctx, raise_on_failure):
    S, T, rho = _require(ctx, "S", "T", "rho")
    T = sorted(set(T))
    _hyp(is_closed(S, T), "T is a subsemigroup")
    sub = induced(S, T)
    _check_cong(rho, sub.semigroup)
    rho_big = [(sub.up(a), sub.up(b)) for a, b in rho.spanning_pairs()]
    rho_bar = rc_closure(S, rho_big)
    X = ctx.get("X")
    if X is None:
        X = irredundant(S, rho_big, rho_bar)
    X = _sorted_pairs(X)
    _hyp(all(a in sub.index and b in sub.index and rho.related(sub.down(a), sub.down(b)) for a, b in X),
         "X is a subset of rho")
    _hyp(rc_closure(S, X) == rho_bar, "X generates the congruence induced on S")
    V = [s for s in S.elements if s not in sub.index]
    Xbar = X + [(y, x) for x, y in X]
    U = sorted({S.m(x, s) for x, y in Xbar if y in sub.index for s in V})
    UT = [u for u in U if u in sub.index]
    rho_UU = [(u, v) for u in UT for v in UT if u != v and rho.related(sub.down(u), sub.down(v))]
    Y = _sorted_pairs(X + rho_UU)
    assert len(Y) <= len(X) + len(U) ** 2
    inter = {"X": X, "U": U, "rho_UU": rho_UU, "Y": Y}
    local = [(sub.down(a), sub.down(b)) for a, b in Y]
    return _finish("finite-complement/down", ctx, sub.semigroup, rho, local, inter, raise_on_failure)


def _lowest_related(rho, x, candidates):
    for c in sorted(candidates):
        if rho.related(x, c):
            return c
    return None


def _t_finite_complement_up(ctx, raise_on_failure):
    S, T, rho = _require(ctx, "S", "T", "rho")
    T = sorted(set(T))
    _hyp(is_closed(S, T), "T is a subsemigroup")
    _check_cong(rho, S)
    sub = induced(S, T)
    rho_T = RightCongruence(sub.semigroup, [rho.class_of[x] for x in sub.elements])
    X = ctx.get("X")
    if X is None:
        X = [(sub.up(a), sub.up(b)) for a, b in generating_pairs(sub.semigroup, rho_T)]
    X = _sorted_pairs(X)
    _hyp(rc_closure(sub.semigroup, [(sub.down(a), sub.down(b)) for a, b in X]) == rho_T,
         "X generates the restriction of rho to T")
    V = [s for s in S.elements if s not in sub.index]
    alpha = {}
    for s in V:
        t = _lowest_related(rho, s, T)
        if t is not None:
            alpha[s] = t
    rho_VV = [(u, v) for u in V for v in V if u != v and rho.related(u, v)]
    Y = X + [(s, alpha[s]) for s in sorted(alpha)] + rho_VV
    inter = {"X": X, "V": V, "alpha": alpha, "rho_VV": rho_VV}
    return _finish("finite-complement/up", ctx, S, rho, Y, inter, raise_on_failure)


# ---------------------------------------------------------------------------
# quotients and ideal extensions


def _t_quotient(ctx, raise_on_failure):
    S, T, theta, rho = _require(ctx, "S", "T", "theta", "rho")
    theta = [int(v) for v in theta]
    hc = check_homomorphism(S, T, theta)
    _hyp(hc.is_hom, "theta is a homomorphism", f"witness {hc.witness}")
    _hyp(hc.surjective, "theta is surjective")
    _check_cong(rho, T)
    pull = RightCongruence(S, [rho.class_of[theta[x]] for x in S.elements])
    X = ctx.get("X")
    if X is None:
        X = generating_pairs(S, pull)
    X = _sorted_pairs(X)
    _hyp(rc_closure(S, X) == pull, "X generates the pulled-back congruence")
    Y = [(theta[x], theta[y]) for x, y in X]
    inter = {"X": X, "pullback": pull, "Y": _sorted_pairs(Y)}
    return _finish("quotient", ctx, T, rho, Y, inter, raise_on_failure)


def _t_ideal_extension(ctx, raise_on_failure):
    S, I, rho = _require(ctx, "S", "I", "rho")
    I = sorted(set(I))
    _hyp(bool(I) and is_ideal(S, I), "I is an ideal")
    _check_cong(rho, S)
    sub = induced(S, I)
    rho_I = RightCongruence(sub.semigroup, [rho.class_of[x] for x in sub.elements])
    X = ctx.get("X")
    if X is None:
        X = [(sub.up(a), sub.up(b)) for a, b in generating_pairs(sub.semigroup, rho_I)]
    X = _sorted_pairs(X)
    _hyp(rc_closure(sub.semigroup, [(sub.down(a), sub.down(b)) for a, b in X]) == rho_I,
         "X generates the restriction of rho to I")
    U = [s for s in S.elements if s not in sub.index]
    alpha = {}
    for s in U:
        i = _lowest_related(rho, s, I)
        if i is not None:
            alpha[s] = i
    Y = [(u, v) for u in U for v in U if u != v and rho.related(u, v)] + [(s, "0") for s in sorted(alpha)]
    Yp = list(Y)  # the finite subset Y' is taken to be Y itself
    Y1 = [p for p in Yp if p[1] != "0"]
    Y2 = [(x, alpha[x]) for x, z in Yp if z == "0"]
    # check that Y generates the induced congruence on S/I
    quo = rees_quotient(S, I)
    q = quo.maps["quotient"]
    zero = quo.semigroup.zero
    Yq = [(q[a], zero if b == "0" else q[b]) for a, b in Y]
    rho_q = RightCongruence(quo.semigroup, _quotient_labels(S, rho, q, alpha, quo.semigroup.order, zero))
    _hyp(rc_closure(quo.semigroup, Yq) == rho_q, "Y generates the induced congruence on S/I")
    inter = {"X": X, "U": U, "alpha": alpha, "Y": Y, "Y_prime": "Y", "Y1": Y1, "Y2": Y2}
    return _finish("ideal-extension", ctx, S, rho, X + Y1 + Y2, inter, raise_on_failure)


def _quotient_labels(S, rho, q, alpha, order, zero):
    """The congruence on S/I induced by rho: classes meeting I collapse onto 0."""
    labels = [None] * order
    for s in S.elements:
        if q[s] == zero:
            continue
        labels[q[s]] = 0 if s in alpha else 1 + rho.class_of[s]
    labels[zero] = 0
    return labels


# ---------------------------------------------------------------------------
# groups


def _t_group_to_subgroup_gens(ctx, raise_on_failure):
    G, H = _require(ctx, "G", "H")
    _hyp(G.is_group, "G is a group")
    H = tuple(sorted(set(H)))
    _hyp(is_subgroup(G, H), "H is a subgroup")
    rho = group_congruence_correspondence(G, H)
    U = ctx.get("U")
    if U is None:
        U = generating_pairs(G, rho)
    U = _sorted_pairs(U)
    _hyp(rc_closure(G, U) == rho, "U generates the coset congruence")
    X = sorted({G.m(x, G.inverse(y)) for x, y in U})
    got = tuple(sorted(subgroup_closure(G, X)))
    ok = got == H
    sep = None if ok else (sorted(set(got) ^ set(H))[0],)
    if not ok and raise_on_failure:
        raise VerificationFailed("group/to-subgroup-gens", sep)
    return TransferRecipe("group/to-subgroup-gens", ctx, tuple(X), ok,
                          {"rho": rho, "U": U, "X": X}, sep)


def _t_group_to_congruence_gens(ctx, raise_on_failure):
    G, rho = _require(ctx, "G", "rho")
    _hyp(G.is_group, "G is a group")
    _check_cong(rho, G)
    H = group_congruence_correspondence(G, rho)
    X = ctx.get("X")
    if X is None:
        X = _greedy_group_gens(G, H)
    X = sorted(set(int(x) for x in X))
    _hyp(tuple(sorted(subgroup_closure(G, X))) == H, "X generates the subgroup {xy^-1 : x rho y}")
    Xs = set(X)
    U = [(x, y) for x in G.elements for y in G.elements if G.m(x, G.inverse(y)) in Xs]
    return _finish("group/to-congruence-gens", ctx, G, rho, U, {"H": H, "X": X, "U": U},
                   raise_on_failure)


def _greedy_group_gens(G, H) -> list:
    gens = [h for h in H if h != G.identity]
    target = frozenset(H)
    for h in list(gens):
        trial = [g for g in gens if g != h]
        if subgroup_closure(G, trial) == target:
            gens = trial
    return gens


# ---------------------------------------------------------------------------
# direct products


def _t_dp_finite_monoid(ctx, raise_on_failure):
    M, S, rho = _require(ctx, "M", "S", "rho")
    _hyp(M.identity is not None, "M is a monoid")
    P = direct_product(M, S)
    _check_cong(rho, P.semigroup)
    at = lambda m, s: P.index((m, s))
    Ym, Xm = {}, {}
    for m in M.elements:
        rho_m = slice_congruence(rho, P, m, monoid_side="left")
        Xm[m] = generating_pairs(S, rho_m)
        Ym[m] = [(at(m, x), at(m, y)) for x, y in Xm[m]]
    Q, I, Pmn, alpha = [], {}, {}, {}
    for m, n in itertools.permutations(M.elements, 2):
        Imn = [s for s in S.elements if any(rho.related(at(m, s), at(n, t)) for t in S.elements)]
        if not Imn:
            continue
        Q.append((m, n))
        I[(m, n)] = Imn
        Pmn[(m, n)] = list(ideal_generators(S, Imn))
        for p in Pmn[(m, n)]:
            alpha[(m, n, p)] = next(t for t in S.elements if rho.related(at(m, p), at(n, t)))
    H = [(at(m, p), at(n, alpha[(m, n, p)])) for (m, n) in Q for p in Pmn[(m, n)]]
    Y = [p for m in M.elements for p in Ym[m]] + H
    inter = {"X_m": Xm, "Y_m": Ym, "Q": Q, "I": I, "P": Pmn, "alpha": alpha, "H": H}
    return _finish("dp-finite-monoid", ctx, P.semigroup, rho, Y, inter, raise_on_failure)


def slice_representatives(M: FiniteSemigroup, N: FiniteSemigroup, rho: RightCongruence):
    """A set X of M with every m = x m' and rho_m = rho_x, plus the intermediates."""
    P = direct_product(M, N)
    slices = {m: slice_congruence(rho, P, m, monoid_side="left") for m in M.elements}
    U = []
    for m in M.elements:
        if all(slices[u] != slices[m] for u in U):
            U.append(m)
    Yu = {}
    for u in U:
        same = [m for m in M.elements if slices[m] == slices[u]]
        Yu[u] = list(ideal_generators(M, same))
    X = sorted({x for u in U for x in Yu[u]})
    return X, {"U": U, "Y_u": Yu, "slices": {m: slices[m] for m in M.elements}}


def _slice_reps_ok(M, X, slices):
    for m in M.elements:
        if not any(slices[x] == slices[m] and any(M.m(x, mp) == m for mp in M.elements) for x in X):
            return m
    return None


def _t_slice_representatives(ctx, raise_on_failure):
    M, N, rho = _require(ctx, "M", "N", "rho")
    _hyp(M.identity is not None and N.identity is not None, "M and N are monoids")
    P = direct_product(M, N)
    _check_cong(rho, P.semigroup)
    X, inter = slice_representatives(M, N, rho)
    # slices only grow along right multiplication
    slices = inter["slices"]
    for m, n in itertools.product(M.elements, repeat=2):
        assert slices[m].leq(slices[M.m(m, n)])
    bad = _slice_reps_ok(M, X, slices)
    ok = bad is None
    if not ok and raise_on_failure:
        raise VerificationFailed("slice-representatives", (bad,))
    return TransferRecipe("slice-representatives", ctx, tuple(X), ok, {"X": X, **inter},
                          None if ok else (bad,))


def _t_dp_group(ctx, raise_on_failure):
    G, M, rho = _require(ctx, "G", "M", "rho")
    _hyp(G.is_group, "G is a group")
    _hyp(M.identity is not None, "M is a monoid")
    P = direct_product(G, M)
    _check_cong(rho, P.semigroup)
    inter, Z = dp_group_pairs(G, M, P, rho)
    return _finish("dp-group", ctx, P.semigroup, rho, Z, inter, raise_on_failure)


def dp_group_pairs(G, M, P, rho):
    at = lambda g, m: P.index((g, m))
    # m rho' n iff (g, m) rho (h, n) for some g, h
    lab = list(M.elements)

    def find(x):
        while lab[x] != x:
            x = lab[x]
        return x

    for m, n in itertools.combinations(M.elements, 2):
        if any(rho.related(at(g, m), at(h, n)) for g in G.elements for h in G.elements):
            a, b = find(m), find(n)
            if a != b:
                lab[max(a, b)] = min(a, b)
    rho_p = RightCongruence(M, [find(x) for x in M.elements])
    assert rho_p.is_right_compatible()
    X = generating_pairs(M, rho_p)
    Xbar = X + [(y, x) for x, y in X]
    alpha, beta, Y = {}, {}, []
    for x, y in Xbar:
        a, b = next((a, b) for a in G.elements for b in G.elements if rho.related(at(a, x), at(b, y)))
        alpha[(x, y)], beta[(x, y)] = a, b
        Y.append((at(a, x), at(b, y)))
    # slice representatives: rho_m on G with m in the second coordinate
    slices = {m: slice_congruence(rho, P, m, monoid_side="right") for m in M.elements}
    reps = []
    for m in M.elements:
        if all(slices[u] != slices[m] for u in reps):
            reps.append(m)
    Sset = sorted({x for u in reps
                   for x in ideal_generators(M, [m for m in M.elements if slices[m] == slices[u]])})
    assert _slice_reps_ok(M, Sset, slices) is None
    Us, Vs = {}, {}
    for s in Sset:
        Us[s] = generating_pairs(G, slices[s])
        Vs[s] = [(at(u, s), at(v, s)) for u, v in Us[s]]
    Z = Y + [p for s in Sset for p in Vs[s]]
    inter = {"rho_prime": rho_p, "X": X, "alpha": alpha, "beta": beta, "Y": Y,
             "S": Sset, "U_s": Us, "V_s": Vs}
    return inter, Z


def _t_dp_brandt(ctx, raise_on_failure):
    G, k, M, rho = _require(ctx, "G", "k", "M", "rho")
    _hyp(G.is_group, "G is a group")
    _hyp(M.identity is not None, "M is a monoid")
    B = brandt(G, int(k))
    P = direct_product(B.semigroup, M)
    _check_cong(rho, P.semigroup)
    Sb = B.semigroup
    zero = Sb.zero
    e = G.identity
    at = lambda s, m: P.index((s, m))
    el = lambda i, g, j: B.index((i, g, j))
    I = list(range(1, int(k) + 1))
    # X_i: generating sets of the restrictions to G_i x M and {0} x M
    X_i = {}
    for i in I + [0]:
        comp = [zero] if i == 0 else [el(i, g, i) for g in G.elements]
        elems = sorted(at(s, m) for s in comp for m in M.elements)
        sub = induced(P.semigroup, elems)
        r = RightCongruence(sub.semigroup, [rho.class_of[x] for x in sub.elements])
        X_i[i] = [(sub.up(a), sub.up(b)) for a, b in generating_pairs(sub.semigroup, r)]
    i0 = I[0]
    Pset, J, A, ab = [], {}, {}, {}
    for i, j in itertools.permutations(I, 2):
        Jij = [m for m in M.elements
               if any(rho.related(at(el(i, e, i0), m), at(el(j, g, i0), n))
                      for g in G.elements for n in M.elements)]
        if not Jij:
            continue
        Pset.append((i, j))
        J[(i, j)] = Jij
        A[(i, j)] = list(ideal_generators(M, Jij))
        for a in A[(i, j)]:
            # lowest-index related element ((j, g, i0), n) of S x M
            cands = sorted((at(el(j, g, i0), n), g, n) for g in G.elements for n in M.elements)
            _, g, n = next(c for c in cands if rho.related(at(el(i, e, i0), a), c[0]))
            ab[(i, j, a)] = (g, n)
    H = [(at(el(i, e, i0), a), at(el(j, ab[(i, j, a)][0], i0), ab[(i, j, a)][1]))
         for (i, j) in Pset for a in A[(i, j)]]
    R, Ji, Ai, alpha_i = [], {}, {}, {}
    for i in I:
        Jm = [m for m in M.elements if any(rho.related(at(el(i, e, i0), m), at(zero, n)) for n in M.elements)]
        if not Jm:
            continue
        R.append(i)
        Ji[i] = Jm
        Ai[i] = list(ideal_generators(M, Jm))
        for a in Ai[i]:
            alpha_i[(i, a)] = next(n for n in M.elements if rho.related(at(el(i, e, i0), a), at(zero, n)))
    K = [(at(el(i, e, i0), a), at(zero, alpha_i[(i, a)])) for i in R for a in Ai[i]]
    X = [p for i in I + [0] for p in X_i[i]] + H + K
    inter = {"i0": i0, "X_i": X_i, "P": Pset, "J": J, "A": A, "alpha_beta": ab, "H": H,
             "R": R, "J_i": Ji, "A_i": Ai, "alpha_i": alpha_i, "K": K}
    return _finish("dp-brandt", ctx, P.semigroup, rho, X, inter, raise_on_failure)


# ---------------------------------------------------------------------------
# semidirect products


def _action(ctx, S, T):
    act = ctx["action"]
    if isinstance(act, SemigroupAction):
        return act
    return SemigroupAction.make(T, S, act)


def _t_sdp_subgroup(ctx, raise_on_failure):
    G, H, sub = _require(ctx, "G", "H", "subgroup")
    _hyp(G.is_group and H.is_group, "G and H are groups")
    act = _action(ctx, G, H)
    U = semidirect_product(G, H, act)
    Us = U.semigroup
    _hyp(Us.is_group, "the semidirect product is a group")
    Ssub = frozenset(int(x) for x in sub)
    _hyp(is_subgroup(Us, Ssub), "S is a subgroup of the semidirect product")
    one = H.identity
    G_S = sorted(g for g in G.elements if U.index((g, one)) in Ssub)
    H_S = sorted({U.key(x)[1] for x in Ssub})
    X = _greedy_group_gens(G, G_S)
    Y = _greedy_group_gens(H, H_S)
    g_y = {y: next(g for g in G.elements if U.index((g, y)) in Ssub) for y in Y}
    Z = sorted({U.index((x, one)) for x in X} | {U.index((g_y[y], y)) for y in Y})
    got = subgroup_closure(Us, Z)
    ok = got == Ssub
    sep = None if ok else (sorted(got ^ Ssub)[0],)
    if not ok and raise_on_failure:
        raise VerificationFailed("sdp-subgroup", sep)
    inter = {"G_S": G_S, "H_S": H_S, "X": X, "Y": Y, "g_y": g_y, "Z": Z}
    return TransferRecipe("sdp-subgroup", ctx, tuple(Z), ok, inter, sep)


def _t_sdp_factor(ctx, raise_on_failure):
    S, T, rho = _require(ctx, "S", "T", "rho")
    act = _action(ctx, S, T)
    _check_cong(rho, S)
    U = semidirect_product(S, T, act)
    Us = U.semigroup
    rho_p = RightCongruence(Us, [rho.class_of[s] * T.order + t for s, t in U.keys])
    assert rho_p.is_right_compatible()
    X = generating_pairs(Us, rho_p)
    Y = [(U.key(a)[0], U.key(b)[0]) for a, b in X]
    return _finish("sdp-factor", ctx, S, rho, Y, {"rho_prime": rho_p, "X": X, "Y": _sorted_pairs(Y)},
                   raise_on_failure)


# ---------------------------------------------------------------------------
# semilattices of semigroups


def _t_semilattice(ctx, raise_on_failure):
    diagram, rho = _require(ctx, "diagram", "rho")
    con = strong_semilattice(diagram, ctx.get("adjoin_identities", False))
    S = con.semigroup
    _check_cong(rho, S)
    d = con.factors["diagram"]
    Y = d.Y
    comp = {a: [con.index((a, x)) for x in d.parts[a].elements] for a in Y.elements}
    X_a = {}
    for a in Y.elements:
        sub = induced(S, comp[a])
        r = RightCongruence(sub.semigroup, [rho.class_of[x] for x in sub.elements])
        X_a[a] = [(sub.up(p), sub.up(q)) for p, q in generating_pairs(sub.semigroup, r)]
    Q, Uab, Uprime, lam = [], {}, {}, {}
    for a, b in itertools.permutations(Y.elements, 2):
        U = [u for u in comp[a] if any(rho.related(u, v) for v in comp[b])]
        if not U:
            continue
        Q.append((a, b))
        Uab[(a, b)] = U
        sub = induced(S, comp[a])
        gens = ideal_generators(sub.semigroup, [sub.down(u) for u in U])
        Uprime[(a, b)] = [sub.up(g) for g in gens]
        for u in Uprime[(a, b)]:
            lam[(a, b, u)] = _lowest_related(rho, u, comp[b])
    H = [(u, lam[(a, b, u)]) for (a, b) in Q for u in Uprime[(a, b)]]
    Z = [p for a in Y.elements for p in X_a[a]] + H
    inter = {"X_alpha": X_a, "Q": Q, "U": Uab, "U_prime": Uprime, "lambda": lam, "H": H}
    return _finish("semilattice", ctx, S, rho, Z, inter, raise_on_failure)


# ---------------------------------------------------------------------------
# act extensions


def act_generators(A: RightActData) -> list:
    """A minimal generating set of the act, lowest index first (greedy removal)."""
    gens = list(range(A.size))
    for x in range(A.size):
        trial = [g for g in gens if g != x]
        if trial and A.orbit(trial) == frozenset(range(A.size)):
            gens = trial
    return gens


def _t_act_extension(ctx, raise_on_failure):
    S, A, rho = _require(ctx, "S", "act", "rho")
    if not isinstance(A, RightActData):
        A = RightActData.make(S, A)
    con = act_extension(S, A)
    Uu = con.semigroup
    _check_cong(rho, Uu)
    n = S.order
    a_ = lambda a: n + a  # act element -> U index
    X = ctx.get("X")
    if X is None:
        X = act_generators(A)
    X = sorted(set(int(x) for x in X))
    _hyp(A.orbit(X) == frozenset(range(A.size)), "X generates the act")
    dot = lambda x, s: a_(A.act(x, s))
    Sel = list(S.elements)
    QX, Ix, Px, alpha_x = [], {}, {}, {}
    for x in X:
        I = [s for s in Sel if any(rho.related(dot(x, s), t) for t in Sel)]
        if not I:
            continue
        QX.append(x)
        Ix[x] = I
        Px[x] = list(ideal_generators(S, I))
        for p in Px[x]:
            # the chosen t satisfies x.p rho t
            alpha_x[(x, p)] = _lowest_related(rho, dot(x, p), Sel)
    Hs = [(dot(x, p), alpha_x[(x, p)]) for x in QX for p in Px[x]]
    RX, Ixy, Pxy, alpha_xy = [], {}, {}, {}
    for x, y in itertools.permutations(X, 2):
        I = [s for s in Sel if any(rho.related(dot(x, s), dot(y, t)) for t in Sel)]
        if not I:
            continue
        RX.append((x, y))
        Ixy[(x, y)] = I
        Pxy[(x, y)] = list(ideal_generators(S, I))
        for p in Pxy[(x, y)]:
            alpha_xy[(x, y, p)] = next(t for t in Sel if rho.related(dot(x, p), dot(y, t)))
    K = [(dot(x, p), dot(y, alpha_xy[(x, y, p)])) for (x, y) in RX for p in Pxy[(x, y)]]
    subS = induced(Uu, range(n))
    rho_S = RightCongruence(subS.semigroup, [rho.class_of[s] for s in Sel])
    Y = generating_pairs(subS.semigroup, rho_S)
    Yx, Zx = {}, {}
    for x in X:
        rho_x = RightCongruence(S, [rho.class_of[dot(x, s)] for s in Sel])
        assert rho_x.is_right_compatible()
        Yx[x] = generating_pairs(S, rho_x)
        Zx[x] = [(dot(x, y), dot(x, yp)) for y, yp in Yx[x]]
    Z = Hs + K + Y + [p for x in X for p in Zx[x]]
    inter = {"X": X, "Q_X": QX, "I_x": Ix, "P_x": Px, "alpha_x": alpha_x, "H": Hs, "R_X": RX,
             "I_xy": Ixy, "P_xy": Pxy, "alpha_xy": alpha_xy, "K": K, "Y": Y, "Y_x": Yx, "Z_x": Zx,
             "uncovered_generators": [x for x in X if x not in {A.act(a, s) for a in range(A.size) for s in Sel}]}
    return _finish("act-extension", ctx, Uu, rho, Z, inter, raise_on_failure)


def _t_act_extension_generators(ctx, raise_on_failure):
    S, A = _require(ctx, "S", "act")
    if not isinstance(A, RightActData):
        A = RightActData.make(S, A)
    _hyp(A.size >= 2, "the act has at least two elements")
    con = act_extension(S, A)
    Uu = con.semigroup
    n = S.order
    AA = [n + a for a in range(A.size)]
    spanning = [(AA[0], b) for b in AA[1:]]
    rho = rc_closure(Uu, spanning)
    Y = irredundant(Uu, spanning, rho)
    Ybar = Y + [(y, x) for x, y in Y]
    X = sorted({x - n for x, y in Ybar if x >= n and y >= n})
    ok = A.orbit(X) == frozenset(range(A.size))
    missing = sorted(frozenset(range(A.size)) - A.orbit(X))
    sep = None if ok else (missing[0],)
    if not ok and raise_on_failure:
        raise VerificationFailed("act-extension-generators", sep)
    return TransferRecipe("act-extension-generators", ctx, tuple(X), ok,
                          {"rho": rho, "Y": Y, "X": X}, sep)


# ---------------------------------------------------------------------------
# idempotents of an inverse subsemigroup


def is_inverse_subsemigroup(S: FiniteSemigroup, T) -> bool:
    T = sorted(set(T))
    if not T or not is_closed(S, T):
        return False
    for t in T:
        if not any(S.prod(t, u, t) == t and S.prod(u, t, u) == u for u in T):
            return False
    E = [t for t in T if S.m(t, t) == t]
    return all(S.m(e, f) == S.m(f, e) for e in E for f in E)


def _t_inverse_semilattice(ctx, raise_on_failure):
    S, T, rho = _require(ctx, "S", "T", "rho")
    _hyp(is_inverse_subsemigroup(S, T), "T is an inverse subsemigroup")
    E = sorted(t for t in set(T) if S.m(t, t) == t)
    sub = induced(S, E)
    _check_cong(rho, sub.semigroup)
    rho_pairs = [(sub.up(a), sub.up(b)) for a, b in rho.spanning_pairs()]
    rho_bar = rc_closure(S, rho_pairs)
    X = ctx.get("X")
    if X is None:
        X = irredundant(S, rho_pairs, rho_bar)
    X = _sorted_pairs(X)
    _hyp(all(a in sub.index and b in sub.index and rho.related(sub.down(a), sub.down(b)) for a, b in X),
         "X is a subset of rho")
    _hyp(rc_closure(S, X) == rho_bar, "X generates the congruence induced on S")
    Xbar = X + [(y, x) for x, y in X]
    Pset = sorted({e for e, f in Xbar if f in sub.index})
    U = sorted(_subsemigroup_or_empty(S, Pset))
    Z = [(u, v) for u in U for v in U if u != v and rho.related(sub.down(u), sub.down(v))]
    assert set(X) <= set(Z) | {(a, a) for a in U}
    local = [(sub.down(a), sub.down(b)) for a, b in Z]
    inter = {"E": E, "X": X, "P": Pset, "U": U, "Z": Z}
    return _finish("inverse-semilattice", ctx, sub.semigroup, rho, local, inter, raise_on_failure)


def _subsemigroup_or_empty(S, gens):
    if not gens:
        return frozenset()
    return subsemigroup(S, gens)


# ---------------------------------------------------------------------------


_RECIPES: dict = {
    "restriction/left-ideal": _t_restriction_left_ideal,
    "restriction/stabiliser": _t_restriction_stabiliser,
    "restriction/monoid-component": _t_restriction_monoid_component,
    "finite-complement/down": _t_finite_complement_down,
    "finite-complement/up": _t_finite_complement_up,
    "quotient": _t_quotient,
    "ideal-extension": _t_ideal_extension,
    "group/to-subgroup-gens": _t_group_to_subgroup_gens,
    "group/to-congruence-gens": _t_group_to_congruence_gens,
    "dp-finite-monoid": _t_dp_finite_monoid,
    "slice-representatives": _t_slice_representatives,
    "dp-group": _t_dp_group,
    "dp-brandt": _t_dp_brandt,
    "sdp-subgroup": _t_sdp_subgroup,
    "sdp-factor": _t_sdp_factor,
    "semilattice": _t_semilattice,
    "act-extension": _t_act_extension,
    "act-extension-generators": _t_act_extension_generators,
    "inverse-semilattice": _t_inverse_semilattice,
}
assert tuple(_RECIPES) == KINDS


def build_transfer(kind: str, context: dict, raise_on_failure: bool = True) -> TransferRecipe:
    """Run one transfer recipe on a finite context and verify its output.

    Raises :class:`ContextMismatch` when a hypothesis fails and, unless
    ``raise_on_failure`` is false, :class:`VerificationFailed` when the
    candidate does not generate the target.
    """
    try:
        recipe = _RECIPES[kind]
    except KeyError:
        raise InputError(f"unknown transfer kind {kind!r}; expected one of {', '.join(KINDS)}") from None
    return recipe(dict(context), raise_on_failure)


def target_semigroup(kind: str, context: dict) -> FiniteSemigroup:
    """The semigroup carrying the congruence ``rho`` for each kind (used by context loaders)."""
    c = context
    if kind in ("restriction/left-ideal", "finite-complement/down"):
        return induced(c["S"], c["T"]).semigroup
    if kind == "restriction/stabiliser":
        return right_stabilizer(c["S"], c["subset"]).as_monoid()
    if kind == "restriction/monoid-component":
        con = strong_semilattice(c["diagram"], c.get("adjoin_identities", False))
        part = con.factors["diagram"].parts[c["beta"]]
        return induced(con.semigroup, [con.index((c["beta"], a)) for a in part.elements]).semigroup
    if kind in ("finite-complement/up", "ideal-extension", "sdp-factor"):
        return c["S"]
    if kind == "quotient":
        return c["T"]
    if kind == "group/to-congruence-gens":
        return c["G"]
    if kind == "dp-finite-monoid":
        return direct_product(c["M"], c["S"]).semigroup
    if kind == "slice-representatives":
        return direct_product(c["M"], c["N"]).semigroup
    if kind == "dp-group":
        return direct_product(c["G"], c["M"]).semigroup
    if kind == "dp-brandt":
        return direct_product(brandt(c["G"], int(c["k"])).semigroup, c["M"]).semigroup
    if kind == "semilattice":
        return strong_semilattice(c["diagram"], c.get("adjoin_identities", False)).semigroup
    if kind == "act-extension":
        A = c["act"] if isinstance(c["act"], RightActData) else RightActData.make(c["S"], c["act"])
        return act_extension(c["S"], A).semigroup
    if kind == "inverse-semilattice":
        E = sorted(t for t in set(c["T"]) if c["S"].m(t, t) == t)
        return induced(c["S"], E).semigroup
    if kind == "sdp-subgroup":
        return semidirect_product(c["G"], c["H"], _action(c, c["G"], c["H"])).semigroup
    raise InputError(f"kind {kind!r} has no target congruence")
