"""Green's relations, stabilisers, Schützenberger groups and their subgroup lattices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .congruence import RightCongruence, join, meet, rc_closure
from .errors import (
    EmptySubset,
    IndexOutOfRange,
    NotAGroup,
    NotAnHClass,
    NotASubgroup,
    NotASubgroupOfSchutz,
    OrderTooLarge,
    SgwbError,
)
from .semigroup import (
    FiniteSemigroup,
    principal_left_ideal,
    principal_right_ideal,
    validate_table,
)

SUBGROUP_BOUND = 24


def _labels_from_keys(keys) -> tuple:
    seen = {}
    return tuple(seen.setdefault(k, len(seen)) for k in keys)


@dataclass(frozen=True)
class GreenPartition:
    owner: FiniteSemigroup
    R: tuple
    L: tuple
    H: tuple

    def classes(self, kind: str = "H") -> list:
        labels = getattr(self, kind)
        out = {}
        for x, c in enumerate(labels):
            out.setdefault(c, []).append(x)
        return [tuple(v) for _, v in sorted(out.items())]

    def h_class_of(self, x: int) -> tuple:
        return tuple(y for y, c in enumerate(self.H) if c == self.H[x])

    def is_h_class(self, X) -> bool:
        X = tuple(sorted(set(X)))
        return bool(X) and self.h_class_of(X[0]) == X

    def is_group_h_class(self, X) -> bool:
        return self.is_h_class(X) and any(self.owner.mul[x, x] == x for x in X)

    def group_h_classes(self) -> list:
        return [h for h in self.classes("H") if any(self.owner.mul[x, x] == x for x in h)]


def green_partitions(S: FiniteSemigroup) -> GreenPartition:
    R = _labels_from_keys(principal_right_ideal(S, a) for a in S.elements)
    L = _labels_from_keys(principal_left_ideal(S, a) for a in S.elements)
    H = _labels_from_keys(zip(R, L))
    return GreenPartition(S, R, L, H)


# ---------------------------------------------------------------------------
# stabilisers


@dataclass(frozen=True)
class StabiliserMonoid:
    """Stab(X) inside S^1.  ``members`` are S-indices; the formal identity is implicit."""

    owner: FiniteSemigroup
    X: frozenset
    members: tuple
    side: str = "right"

    def __len__(self):
        return len(self.members) + 1

    def elements(self) -> list:
        """S^1 multipliers, formal identity (None) first."""
        return [None, *self.members]

    def as_monoid(self) -> FiniteSemigroup:
        """The stabiliser as a table; element 0 is the formal identity, i+1 is members[i]."""
        idx = {x: i + 1 for i, x in enumerate(self.members)}
        k = len(self.members) + 1
        mul = np.zeros((k, k), dtype=np.int64)
        mul[0, :] = np.arange(k)
        mul[:, 0] = np.arange(k)
        for a in self.members:
            for b in self.members:
                mul[idx[a], idx[b]] = idx[self.owner.m(a, b)]
        labels = ["1", *(self.owner.labels[x] for x in self.members)]
        return validate_table(k, mul, identity=0, labels=labels)


def _check_subset(S, X):
    X = frozenset(int(x) for x in X)
    if not X:
        raise EmptySubset("subset is empty")
    for x in X:
        if not 0 <= x < S.order:
            raise IndexOutOfRange(f"element {x} out of range")
    return X


def _stabilizer(S, X, side):
    X = _check_subset(S, X)
    xs = np.array(sorted(X))
    members = []
    for s in S.elements:
        img = S.mul[xs, s] if side == "right" else S.mul[s, xs]
        if frozenset(img.tolist()) == X:
            members.append(s)
    stab = StabiliserMonoid(S, X, tuple(members), side)
    mset = set(members)
    for a, b in itertools.product(members, repeat=2):
        if S.m(a, b) not in mset:  # cannot happen for a genuine stabiliser
            raise SgwbError(f"stabiliser not closed at {a}*{b}")
    return stab


def right_stabilizer(S: FiniteSemigroup, X: Iterable[int]) -> StabiliserMonoid:
    """{s in S^1 : Xs = X}."""
    return _stabilizer(S, X, "right")


def left_stabilizer(S: FiniteSemigroup, X: Iterable[int]) -> StabiliserMonoid:
    """{s in S^1 : sX = X}."""
    return _stabilizer(S, X, "left")


# ---------------------------------------------------------------------------
# Schützenberger groups


@dataclass(frozen=True)
class SchutzGroup:
    """Stab(H) modulo sigma(H), materialised as a group table.

    ``projection`` maps each stabiliser multiplier (None for the formal
    identity) to its group element; ``reps[g]`` is the first multiplier
    projecting to g.  Element 0 is the identity.
    """

    owner: FiniteSemigroup
    H: tuple
    side: str
    stabiliser: StabiliserMonoid
    group: FiniteSemigroup
    projection: dict
    reps: tuple

    @property
    def order(self) -> int:
        return self.group.order

    def act(self, g: int, x: int) -> int:
        """g.x (left variant) or x.g (right variant)."""
        s = self.reps[g]
        if s is None:
            return x
        return self.owner.m(s, x) if self.side == "left" else self.owner.m(x, s)

    def orbit_map(self, x: int) -> tuple:
        return tuple(self.act(g, x) for g in self.group.elements)

    def acts_faithfully_on(self, x: int) -> bool:
        images = self.orbit_map(x)
        return len(set(images)) == len(images)

    def acts_regularly_on_H(self) -> bool:
        Hs = set(self.H)
        return all(sorted(self.orbit_map(h)) == sorted(Hs) and len(set(self.orbit_map(h))) == len(Hs)
                   for h in self.H)


def _check_h_class(S, H):
    H = _check_subset(S, H)
    gp = green_partitions(S)
    if not gp.is_h_class(H):
        raise NotAnHClass(f"{sorted(H)} is not an H-class")
    return tuple(sorted(H))


def schutzenberger_group(S: FiniteSemigroup, H: Iterable[int], side: str = "right") -> SchutzGroup:
    """Gamma(H) = Stab(H)/sigma(H) with sigma: s ~ t iff hs = ht for all h in H (dually on the left)."""
    H = _check_h_class(S, H)
    stab = _stabilizer(S, H, side)
    hs = np.array(H)

    def key(s):
        if s is None:
            return tuple(H)
        return tuple((S.mul[hs, s] if side == "right" else S.mul[s, hs]).tolist())

    mults = stab.elements()
    keys = [key(s) for s in mults]
    ids = {}
    reps = []
    projection = {}
    for s, k in zip(mults, keys):
        if k not in ids:
            ids[k] = len(ids)
            reps.append(s)
        projection[s] = ids[k]
    n = len(ids)

    def s1(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return S.m(a, b)

    mul = [[projection[s1(reps[a], reps[b])] for b in range(n)] for a in range(n)]
    group = validate_table(n, mul, identity=0, name=f"Gamma({','.join(map(str, H))})")
    if not group.is_group:
        raise SgwbError("stabiliser quotient is not a group")
    return SchutzGroup(S, H, side, stab, group, projection, tuple(reps))


def sigma_is_congruence(schutz: SchutzGroup) -> bool:
    """sigma(H) is two-sided compatible on Stab(H): checked on the monoid table."""
    M = schutz.stabiliser.as_monoid()
    mults = schutz.stabiliser.elements()
    labels = [schutz.projection[s] for s in mults]
    for a, b in itertools.combinations(range(M.order), 2):
        if labels[a] != labels[b]:
            continue
        for c in M.elements:
            if labels[M.m(a, c)] != labels[M.m(b, c)] or labels[M.m(c, a)] != labels[M.m(c, b)]:
                return False
    return True


# ---------------------------------------------------------------------------
# subgroups and the group / congruence correspondence


def _check_group(G):
    if not G.is_group:
        raise NotAGroup(f"{G!r} is not a group")


def subgroup_closure(G: FiniteSemigroup, gens: Iterable[int]) -> frozenset:
    """Subgroup generated by ``gens`` (finite, so closure under products suffices)."""
    members = {G.identity, *(int(g) for g in gens)}
    frontier = list(members)
    while frontier:
        new = []
        for x in frontier:
            for y in list(members):
                for p in (G.m(x, y), G.m(y, x)):
                    if p not in members:
                        members.add(p)
                        new.append(p)
        frontier = new
    return frozenset(members)


def subgroups_of(G: FiniteSemigroup, bound: int = SUBGROUP_BOUND) -> list:
    """All subgroups, sorted by (size, elements); joins seeded by cyclic subgroups."""
    _check_group(G)
    if G.order > bound:
        raise OrderTooLarge(f"group order {G.order} exceeds {bound}")
    cyclic = {subgroup_closure(G, [g]) for g in G.elements}
    found = {frozenset([G.identity])}
    frontier = list(found)
    while frontier:
        new = []
        for K in frontier:
            for C in cyclic:
                J = subgroup_closure(G, K | C)
                if J not in found:
                    found.add(J)
                    new.append(J)
        frontier = new
    return sorted((tuple(sorted(K)) for K in found), key=lambda K: (len(K), K))


def is_subgroup(G: FiniteSemigroup, H) -> bool:
    H = set(H)
    if not H or G.identity not in H:
        return False
    return all(G.m(a, G.inverse(b)) in H for a in H for b in H)


def group_congruence_correspondence(G: FiniteSemigroup, arg):
    """Subgroup H -> right congruence a ~ b iff ab^-1 in H; congruence -> {xy^-1 : x ~ y}."""
    _check_group(G)
    inv = [G.inverse(x) for x in G.elements]
    if isinstance(arg, RightCongruence):
        if arg.owner != G:
            raise NotASubgroup("congruence is on a different semigroup")
        H = frozenset(G.m(x, inv[y]) for x in G.elements for y in G.elements if arg.related(x, y))
        if not is_subgroup(G, H):
            raise NotASubgroup(f"{sorted(H)} is not a subgroup")
        return tuple(sorted(H))
    H = frozenset(int(h) for h in arg)
    if not is_subgroup(G, H):
        raise NotASubgroup(f"{sorted(H)} is not a subgroup")
    # class of b is the right coset Hb
    labels = [min(G.m(h, b) for h in H) for b in G.elements]
    return RightCongruence(G, labels)


def right_cosets(G: FiniteSemigroup, H) -> list:
    return sorted({tuple(sorted(G.m(h, b) for h in H)) for b in G.elements})


# ---------------------------------------------------------------------------
# embedding the subgroup lattice of Gamma(H) into right congruences


def hs1(S: FiniteSemigroup, H) -> frozenset:
    """HS^1."""
    out = set(H)
    for h in H:
        out.update(S.mul[h].tolist())
    return frozenset(out)


def rho_G(S: FiniteSemigroup, H: Iterable[int], G: Iterable[int],
          schutz: Optional[SchutzGroup] = None) -> RightCongruence:
    """The right congruence attached to a subgroup G of Gamma(H) (left action).

    (x, y) are related when x = y; or x = hs, y = h's with s in S^1,
    h = g.h' for some g in G and Gamma(H) faithful on x; or x = hs,
    y = h's with s in S and Gamma(H) not faithful on x.
    """
    H = _check_h_class(S, H)
    schutz = schutz or schutzenberger_group(S, H, side="left")
    G = frozenset(int(g) for g in G)
    if not G or not is_subgroup(schutz.group, G):
        raise NotASubgroupOfSchutz(f"{sorted(G)} is not a subgroup of Gamma(H) (order {schutz.order})")
    faithful = {}

    def is_faithful(x):
        if x not in faithful:
            faithful[x] = schutz.acts_faithfully_on(x)
        return faithful[x]

    rel = set((x, x) for x in S.elements)
    multipliers = [None, *S.elements]
    for hp in H:
        for g in G:
            h = schutz.act(g, hp)
            for s in multipliers:
                x, y = S.mul1(h, s), S.mul1(hp, s)
                if is_faithful(x):
                    rel.add((x, y))
    for h in H:
        for hp in H:
            for s in S.elements:
                x, y = S.m(h, s), S.m(hp, s)
                if not is_faithful(x):
                    rel.add((x, y))
    rho = rc_closure(S, [p for p in rel if p[0] != p[1]])
    # the relation must already be a right congruence: closure adds nothing
    if len(rel) != sum(len(b) ** 2 for b in rho.classes()):
        extra = next((a, b) for blk in rho.classes() for a in blk for b in blk if (a, b) not in rel)
        raise SgwbError(f"relation is not a right congruence; closure adds {extra}")
    return rho


@dataclass
class LatticeReport:
    H: tuple
    schutz_order: int
    subgroups: list
    congruences: list
    entries: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e["pass"] for e in self.entries)

    def to_json(self) -> dict:
        return {"H": list(self.H), "schutz_order": self.schutz_order,
                "subgroups": [list(g) for g in self.subgroups],
                "congruences": [r.to_json() for r in self.congruences],
                "pass": self.passed, "entries": self.entries}


def _separating_pair(r1: RightCongruence, r2: RightCongruence):
    for a, b in itertools.combinations(r1.owner.elements, 2):
        if r1.related(a, b) != r2.related(a, b):
            return [a, b]
    return None


def verify_lattice_embedding(S: FiniteSemigroup, H: Iterable[int]) -> LatticeReport:
    """Check G -> rho_G preserves meets and joins and is injective, pair by pair."""
    H = _check_h_class(S, H)
    schutz = schutzenberger_group(S, H, side="left")
    Gam = schutz.group
    subs = subgroups_of(Gam)
    rhos = {K: rho_G(S, H, K, schutz) for K in subs}
    report = LatticeReport(H, Gam.order, subs, [rhos[K] for K in subs])
    for G1, G2 in itertools.combinations(subs, 2):
        pair = [list(G1), list(G2)]
        inter = tuple(sorted(set(G1) & set(G2)))
        want, got = rhos[inter], meet(rhos[G1], rhos[G2])
        report.entries.append({"check": "a", "pair": pair, "pass": want == got,
                               "witness": _separating_pair(want, got)})
        U = tuple(sorted(subgroup_closure(Gam, set(G1) | set(G2))))
        want, got = rhos[U], join(rhos[G1], rhos[G2])
        report.entries.append({"check": "b", "pair": pair, "pass": want == got,
                               "witness": _separating_pair(want, got)})
        ok = rhos[G1] != rhos[G2]
        report.entries.append({"check": "c", "pair": pair, "pass": ok,
                               "witness": None if ok else [list(G1), list(G2)]})
    return report
