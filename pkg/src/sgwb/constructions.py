"""Product and union constructions over finite semigroups.

Every builder returns a :class:`Construction`: the validated table plus a
structural key per element (``keys[i]``) and named structure maps.
Associativity is re-checked on every table by :func:`validate_table`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .congruence import RightCongruence
from .errors import (
    ActAxiomViolation,
    ActionAxiomViolation,
    DiagramInvalid,
    InputError,
    NoIdentityInSecondFactor,
    NotAGroup,
    NotAMonoid,
    NotAnIdeal,
    OrderTooLarge,
)
from .semigroup import FiniteSemigroup, adjoin, check_homomorphism, is_ideal, validate_table

MAX_CONSTRUCTION_ORDER = 4096


def _check_size(n):
    if n > MAX_CONSTRUCTION_ORDER:
        raise OrderTooLarge(f"construction would have {n} elements (limit {MAX_CONSTRUCTION_ORDER})")


@dataclass(frozen=True)
class Construction:
    semigroup: FiniteSemigroup
    kind: str
    keys: tuple
    factors: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)

    @cached_property
    def _index(self) -> dict:
        return {k: i for i, k in enumerate(self.keys)}

    def index(self, key) -> int:
        return self._index[key]

    def key(self, i: int):
        return self.keys[i]

    @property
    def order(self) -> int:
        return self.semigroup.order


def _build(kind, keys, mul, labels, factors, maps=None, identity=None, zero=None, name=None):
    S = validate_table(len(keys), mul, identity=identity, zero=zero, labels=labels, name=name)
    return Construction(S, kind, tuple(keys), dict(factors), dict(maps or {}))


# ---------------------------------------------------------------------------
# direct product and slices


def direct_product(S: FiniteSemigroup, T: FiniteSemigroup) -> Construction:
    """S x T with (s, t) at index s*|T| + t; maps 'left' and 'right' are the projections."""
    n, m = S.order, T.order
    _check_size(n * m)
    mul = (S.mul[:, None, :, None] * m + T.mul[None, :, None, :]).reshape(n * m, n * m)
    keys = [(s, t) for s in S.elements for t in T.elements]
    labels = [f"({S.labels[s]},{T.labels[t]})" for s, t in keys]
    maps = {"left": tuple(k[0] for k in keys), "right": tuple(k[1] for k in keys)}
    name = f"{S.name or 'S'}x{T.name or 'T'}"
    return _build("direct_product", keys, mul, labels, {"left": S, "right": T}, maps, name=name)


def slice_congruence(rho: RightCongruence, product: Construction, m: int,
                     monoid_side: str = "right") -> RightCongruence:
    """The partition induced on the semigroup factor by fixing the monoid coordinate m.

    ``monoid_side='right'`` reads the product as S x M (s ~ t iff (s,m) rho (t,m));
    ``'left'`` reads it as M x S (s ~ t iff (m,s) rho (m,t)).
    """
    if product.kind != "direct_product":
        raise InputError("slice_congruence needs a direct product")
    if monoid_side == "right":
        S, M = product.factors["left"], product.factors["right"]
        at = lambda s: product.index((s, m))
    elif monoid_side == "left":
        M, S = product.factors["left"], product.factors["right"]
        at = lambda s: product.index((m, s))
    else:
        raise InputError(f"monoid_side must be 'left' or 'right', got {monoid_side!r}")
    if M.identity is None:
        raise NoIdentityInSecondFactor(f"{M!r} has no identity")
    if not 0 <= m < M.order:
        raise InputError(f"slice index {m} out of range")
    out = RightCongruence(S, [rho.class_of[at(s)] for s in S.elements])
    assert out.is_right_compatible(), "slice of a right congruence must be right compatible"
    return out


# ---------------------------------------------------------------------------
# actions and semidirect products


@dataclass(frozen=True)
class SemigroupAction:
    """A left action of ``actor`` on ``acted``: table[t][s] = t.s."""

    actor: FiniteSemigroup
    acted: FiniteSemigroup
    table: np.ndarray

    @classmethod
    def make(cls, actor, acted, table) -> "SemigroupAction":
        arr = np.array(table, dtype=np.int64)
        if arr.shape != (actor.order, acted.order):
            raise ActionAxiomViolation(f"action table has shape {arr.shape}")
        if arr.min() < 0 or arr.max() >= acted.order:
            raise ActionAxiomViolation("action value out of range")
        arr.setflags(write=False)
        act = cls(actor, acted, arr)
        act.validate()
        return act

    @classmethod
    def trivial(cls, actor, acted) -> "SemigroupAction":
        return cls.make(actor, acted, np.tile(np.arange(acted.order), (actor.order, 1)))

    def validate(self) -> None:
        T, S, a = self.actor, self.acted, self.table
        # t1.(t2.s) = (t1 t2).s
        lhs = a[np.arange(T.order)[:, None, None], a[None, :, :]]
        rhs = a[T.mul][:, :, :]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            t1, t2, s = map(int, bad[0])
            raise ActionAxiomViolation("t1.(t2.s) != (t1t2).s", (t1, t2, s))
        # t.(s1 s2) = (t.s1)(t.s2)
        lhs = a[:, S.mul]
        rhs = S.mul[a[:, :, None], a[:, None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            t, s1, s2 = map(int, bad[0])
            raise ActionAxiomViolation("t.(s1s2) != (t.s1)(t.s2)", (t, s1, s2))
        if T.identity is not None:
            bad = np.flatnonzero(a[T.identity] != np.arange(S.order))
            if len(bad):
                raise ActionAxiomViolation("1.s != s", (T.identity, int(bad[0])))


def semidirect_product(S: FiniteSemigroup, T: FiniteSemigroup, act: SemigroupAction) -> Construction:
    """S x T with (s1, t1)(s2, t2) = (s1 (t1.s2), t1 t2); (s, t) at index s*|T| + t."""
    if act.actor != T or act.acted != S:
        raise ActionAxiomViolation("action does not match the factors")
    n, m = S.order, T.order
    _check_size(n * m)
    s1 = np.arange(n)[:, None, None, None]
    t1 = np.arange(m)[None, :, None, None]
    s2 = np.arange(n)[None, None, :, None]
    t2 = np.arange(m)[None, None, None, :]
    s_part = S.mul[s1, act.table[t1, s2]]
    t_part = T.mul[t1, t2]
    mul = (s_part * m + t_part).reshape(n * m, n * m)
    keys = [(s, t) for s in S.elements for t in T.elements]
    labels = [f"({S.labels[s]},{T.labels[t]})" for s, t in keys]
    maps = {"left": tuple(k[0] for k in keys), "right": tuple(k[1] for k in keys)}
    return _build("semidirect_product", keys, mul, labels, {"left": S, "right": T, "action": act}, maps)


def function_space(M: FiniteSemigroup, N: FiniteSemigroup) -> Construction:
    """M^N under componentwise product; f is the tuple (f(0), ..., f(|N|-1))."""
    if M.identity is None:
        raise NotAMonoid(f"{M!r} is not a monoid")
    if N.identity is None:
        raise NotAMonoid(f"{N!r} is not a monoid")
    size = M.order ** N.order
    _check_size(size)
    funcs = list(itertools.product(range(M.order), repeat=N.order))
    F = np.array(funcs, dtype=np.int64).reshape(size, N.order)
    # product index of the componentwise product
    weights = M.order ** np.arange(N.order - 1, -1, -1)
    prod = M.mul[F[:, None, :], F[None, :, :]]
    mul = (prod * weights).sum(axis=2)
    labels = ["[" + ",".join(M.labels[v] for v in f) + "]" for f in funcs]
    ident = funcs.index(tuple([M.identity] * N.order))
    return _build("function_space", funcs, mul, labels, {"base": M, "exponent": N}, identity=ident)


def wreath_product(M: FiniteSemigroup, N: FiniteSemigroup) -> Construction:
    """M^N semidirect N with (n.f)(x) = f(xn); identity (c_1, 1)."""
    FS = function_space(M, N)
    funcs = FS.keys
    act = np.empty((N.order, len(funcs)), dtype=np.int64)
    for n in N.elements:
        for i, f in enumerate(funcs):
            act[n, i] = FS.index(tuple(f[N.m(x, n)] for x in N.elements))
    action = SemigroupAction.make(N, FS.semigroup, act)
    sdp = semidirect_product(FS.semigroup, N, action)
    keys = [(funcs[i], n) for i, n in sdp.keys]
    labels = [f"({FS.semigroup.labels[i]},{N.labels[n]})" for i, n in sdp.keys]
    ident = sdp.index((FS.index(tuple([M.identity] * N.order)), N.identity))
    return _build("wreath_product", keys, sdp.semigroup.mul, labels,
                  {"base": M, "exponent": N, "functions": FS, "action": action},
                  sdp.maps, identity=ident, name=f"{M.name or 'M'}wr{N.name or 'N'}")


# ---------------------------------------------------------------------------
# unions


def zero_direct_union(S: FiniteSemigroup, T: FiniteSemigroup) -> Construction:
    """S, then T, then a new zero; cross products are 0."""
    n, m = S.order, T.order
    size = n + m + 1
    _check_size(size)
    z = size - 1
    mul = np.full((size, size), z, dtype=np.int64)
    mul[:n, :n] = S.mul
    mul[n:n + m, n:n + m] = T.mul + n
    keys = [("S", s) for s in S.elements] + [("T", t) for t in T.elements] + [("0",)]
    labels = [f"S{S.labels[s]}" for s in S.elements] + [f"T{T.labels[t]}" for t in T.elements] + ["0"]
    return _build("zero_direct_union", keys, mul, labels, {"S": S, "T": T}, zero=z)


@dataclass
class SemilatticeDiagram:
    """Y a semilattice, parts[alpha] = S_alpha, homs[(alpha, beta)] for alpha >= beta (alpha*beta = beta)."""

    Y: FiniteSemigroup
    parts: list
    homs: dict

    def geq(self, a: int, b: int) -> bool:
        return self.Y.m(a, b) == b

    def hom(self, a: int, b: int) -> tuple:
        if a == b and (a, b) not in self.homs:
            return tuple(self.parts[a].elements)
        return tuple(self.homs[(a, b)])

    def validate(self) -> None:
        Y = self.Y
        if not (Y.is_commutative and Y.is_band):
            raise DiagramInvalid("Y is a semilattice", "Y")
        if len(self.parts) != Y.order:
            raise DiagramInvalid("one part per element of Y", f"{len(self.parts)} parts")
        for key in self.homs:
            a, b = key
            if not self.geq(a, b):
                raise DiagramInvalid("homs only for alpha >= beta", key)
        for a in Y.elements:
            if self.hom(a, a) != tuple(self.parts[a].elements):
                raise DiagramInvalid("phi(alpha,alpha) = id", (a, a))
        for a, b in itertools.product(Y.elements, repeat=2):
            if not self.geq(a, b):
                continue
            if (a, b) not in self.homs and a != b:
                raise DiagramInvalid("phi(alpha,beta) present", (a, b))
            phi = self.hom(a, b)
            if len(phi) != self.parts[a].order:
                raise DiagramInvalid("phi(alpha,beta) is a map S_alpha -> S_beta", (a, b))
            try:
                ok = check_homomorphism(self.parts[a], self.parts[b], phi)
            except InputError:
                raise DiagramInvalid("phi(alpha,beta) is a map S_alpha -> S_beta", (a, b)) from None
            if not ok:
                raise DiagramInvalid("phi(alpha,beta) is a homomorphism", (a, b))
        for a, b, c in itertools.product(Y.elements, repeat=3):
            if self.geq(a, b) and self.geq(b, c):
                ab, bc, ac = self.hom(a, b), self.hom(b, c), self.hom(a, c)
                if any(bc[ab[x]] != ac[x] for x in self.parts[a].elements):
                    raise DiagramInvalid("phi(alpha,beta) phi(beta,gamma) = phi(alpha,gamma)", (a, b, c))

    def with_identities(self) -> "SemilatticeDiagram":
        """Adjoin 1_alpha to every part and extend each phi by 1_alpha -> 1_beta."""
        parts = [adjoin(P, "identity") for P in self.parts]
        homs = {}
        for a, b in itertools.product(self.Y.elements, repeat=2):
            if self.geq(a, b):
                homs[(a, b)] = self.hom(a, b) + (parts[b].identity,)
        return SemilatticeDiagram(self.Y, parts, homs)


def strong_semilattice(diagram: SemilatticeDiagram, adjoin_identities: bool = False) -> Construction:
    """Disjoint union of the parts with ab = (a phi)(b phi) in S_{alpha beta}."""
    diagram.validate()
    if adjoin_identities:
        diagram = diagram.with_identities()
        diagram.validate()
    Y, parts = diagram.Y, diagram.parts
    keys = [(alpha, a) for alpha in Y.elements for a in parts[alpha].elements]
    _check_size(len(keys))
    idx = {k: i for i, k in enumerate(keys)}
    mul = np.empty((len(keys), len(keys)), dtype=np.int64)
    for i, (alpha, a) in enumerate(keys):
        for j, (beta, b) in enumerate(keys):
            g = Y.m(alpha, beta)
            pa = diagram.hom(alpha, g)[a]
            pb = diagram.hom(beta, g)[b]
            mul[i, j] = idx[(g, parts[g].m(pa, pb))]
    labels = [f"{Y.labels[al]}:{parts[al].labels[a]}" for al, a in keys]
    return _build("strong_semilattice", keys, mul, labels,
                  {"diagram": diagram}, {"component": tuple(k[0] for k in keys)})


# ---------------------------------------------------------------------------
# act extension


@dataclass(frozen=True)
class RightActData:
    """A right S-act on {0..size-1}: table[a][s] = a.s."""

    owner: FiniteSemigroup
    table: np.ndarray
    labels: tuple = ()

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def act(self, a: int, s: Optional[int]) -> int:
        return a if s is None else int(self.table[a, s])

    @classmethod
    def make(cls, owner, table, labels=None) -> "RightActData":
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != owner.order or arr.shape[0] < 1:
            raise ActAxiomViolation(f"act table has shape {arr.shape}")
        if arr.min() < 0 or arr.max() >= arr.shape[0]:
            raise ActAxiomViolation("act value out of range")
        arr.setflags(write=False)
        labels = tuple(labels) if labels else tuple(f"a{i}" for i in range(arr.shape[0]))
        act = cls(owner, arr, labels)
        act.validate()
        return act

    @classmethod
    def regular(cls, S) -> "RightActData":
        """S acting on itself by right multiplication."""
        return cls.make(S, S.mul, [f"a{S.labels[x]}" for x in S.elements])

    @classmethod
    def quotient(cls, rho: RightCongruence) -> "RightActData":
        """S/rho with [a].s = [as]."""
        S = rho.owner
        classes = rho.classes()
        table = [[rho.class_of[S.m(block[0], s)] for s in S.elements] for block in classes]
        return cls.make(S, table, [f"[{block[0]}]" for block in classes])

    def validate(self) -> None:
        S, a = self.owner, self.table
        lhs = a[:, S.mul]  # a.(st)
        rhs = a[a[:, :, None], np.arange(S.order)[None, None, :]]  # (a.s).t
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            x, s, t = map(int, bad[0])
            raise ActAxiomViolation("a.(st) != (a.s).t", (x, s, t))
        if S.identity is not None:
            bad = np.flatnonzero(a[:, S.identity] != np.arange(self.size))
            if len(bad):
                raise ActAxiomViolation("a.1 != a", (int(bad[0]), S.identity))

    def orbit(self, X) -> frozenset:
        """X S^1."""
        out = set(X)
        for x in X:
            out.update(self.table[x].tolist())
        return frozenset(out)


def act_extension(S: FiniteSemigroup, A: RightActData) -> Construction:
    """U(S, A) on S then A: xy in S; a.s for a in A, s in S; y whenever y in A."""
    if A.owner != S:
        raise ActAxiomViolation("act is over a different semigroup")
    n, m = S.order, A.size
    _check_size(n + m)
    mul = np.empty((n + m, n + m), dtype=np.int64)
    mul[:n, :n] = S.mul
    mul[n:, :n] = A.table + n
    mul[:, n:] = np.arange(n, n + m)[None, :]
    keys = [("S", s) for s in S.elements] + [("A", a) for a in range(m)]
    labels = list(S.labels) + list(A.labels)
    seen = set()
    for i, lab in enumerate(labels):
        while lab in seen:
            lab += "'"
        seen.add(lab)
        labels[i] = lab
    return _build("act_extension", keys, mul, labels, {"S": S, "A": A},
                  {"A": tuple(range(n, n + m))})


# ---------------------------------------------------------------------------
# Brandt semigroups and Rees quotients


def brandt(G: FiniteSemigroup, k: int) -> Construction:
    """B(G, {1..k}): (i,g,j) in lexicographic order, zero last."""
    if not G.is_group:
        raise NotAGroup(f"{G!r} is not a group")
    if k < 1:
        raise InputError("index set must be non-empty")
    size = k * k * G.order + 1
    _check_size(size)
    keys = [(i, g, j) for i in range(1, k + 1) for g in G.elements for j in range(1, k + 1)]
    idx = {key: x for x, key in enumerate(keys)}
    z = size - 1
    mul = np.full((size, size), z, dtype=np.int64)
    for x, (i, g, j) in enumerate(keys):
        for y, (kk, h, l) in enumerate(keys):
            if j == kk:
                mul[x, y] = idx[(i, G.m(g, h), l)]
    labels = [f"({i},{G.labels[g]},{j})" for i, g, j in keys] + ["0"]
    return _build("brandt", keys + [("0",)], mul, labels, {"group": G, "k": k},
                  zero=z, name=f"B({G.name or 'G'},{k})")


def rees_quotient(S: FiniteSemigroup, I) -> Construction:
    """S/I: elements of S outside I in order, then 0; map 'quotient' is the natural map."""
    I = frozenset(int(x) for x in I)
    if not I or not is_ideal(S, I):
        raise NotAnIdeal(f"{sorted(I)} is not a two-sided ideal")
    rest = [x for x in S.elements if x not in I]
    z = len(rest)
    pos = {x: i for i, x in enumerate(rest)}
    q = tuple(pos.get(x, z) for x in S.elements)
    size = z + 1
    mul = np.empty((size, size), dtype=np.int64)
    reps = rest + [min(I)]
    for i, x in enumerate(reps):
        for j, y in enumerate(reps):
            mul[i, j] = q[S.m(x, y)]
    keys = [("S", x) for x in rest] + [("0",)]
    labels = [S.labels[x] for x in rest] + ["0"]
    labels = labels if "0" not in labels[:-1] else labels[:-1] + ["0'"]
    out = _build("rees_quotient", keys, mul, labels, {"S": S, "I": I}, {"quotient": q}, zero=z)
    assert check_homomorphism(S, out.semigroup, q)
    return out
