"""Right congruences on finite semigroups.

Closure from generating pairs, X-sequence certificates, Rees right
congruences, restriction, meet/join, the brute-force lattice of all
right congruences, and minimal generating sets.
"""

from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import _kernels
from .errors import (
    CertificateError,
    IndexOutOfRange,
    InputError,
    NotARightIdeal,
    OrderTooLarge,
    OwnerMismatch,
)
from .semigroup import FiniteSemigroup, RightIdeal, Sub, induced, is_right_ideal

DEFAULT_ENUMERATION_BOUND = 8
EXACT_SEARCH_LIMIT = 20

# counters for the certificate audit; when RECORDER["log"] is a list every
# Proven consequence is appended to it as (semigroup, pairs, certificate)
AUDIT = {"proven": 0, "replayed": 0}
RECORDER: dict = {"log": None}


def _record(owner, X, cert):
    log = RECORDER["log"]
    if log is not None:
        log.append((owner, X, cert))


@dataclass(frozen=True)
class GenPairs:
    """A set of generating pairs; the symmetric closure is derived on demand."""

    owner: object
    pairs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((int(a), int(b)) for a, b in self.pairs))
        order = getattr(self.owner, "order", None)
        if order is not None:
            for a, b in self.pairs:
                if not (0 <= a < order and 0 <= b < order):
                    raise IndexOutOfRange(f"pair {(a, b)} out of range for order {order}")

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def symmetric(self):
        """X-bar as (pair index, direction, x, y) with direction 'f' or 'b'."""
        for i, (x, y) in enumerate(self.pairs):
            yield i, "f", x, y
            yield i, "b", y, x

    def to_json(self):
        return {"pairs": [list(p) for p in self.pairs]}


def _pairs(X) -> tuple:
    if isinstance(X, GenPairs):
        return X.pairs
    return tuple((int(a), int(b)) for a, b in X)


class RightCongruence:
    """A partition of a finite semigroup, stored as canonical class labels.

    Class ids are assigned by first occurrence scanning 0..n-1, so two
    congruences are equal exactly when their label tuples are.
    """

    def __init__(self, owner: FiniteSemigroup, labels):
        self.owner = owner
        labels = _kernels.canonical_labels(np.asarray(labels, dtype=np.int64))
        if labels.shape != (owner.order,):
            raise InputError(f"partition has {labels.shape[0]} entries, expected {owner.order}")
        self.class_of = tuple(int(c) for c in labels)

    @classmethod
    def from_classes(cls, owner: FiniteSemigroup, classes, check=True) -> "RightCongruence":
        labels = [-1] * owner.order
        for c, block in enumerate(classes):
            for x in block:
                if labels[x] != -1:
                    raise InputError(f"element {x} appears in two classes")
                labels[x] = c
        nxt = len(classes)
        for x in range(owner.order):
            if labels[x] == -1:
                labels[x] = nxt
                nxt += 1
        rho = cls(owner, labels)
        if check and not rho.is_right_compatible():
            raise InputError(f"partition is not right compatible: {rho.compat_witness()}")
        return rho

    @classmethod
    def identity(cls, owner):
        return cls(owner, range(owner.order))

    @classmethod
    def universal(cls, owner):
        return cls(owner, [0] * owner.order)

    @property
    def num_classes(self) -> int:
        return max(self.class_of) + 1

    @cached_property
    def labels(self) -> np.ndarray:
        return np.array(self.class_of, dtype=np.int64)

    def classes(self) -> list:
        out = [[] for _ in range(self.num_classes)]
        for x, c in enumerate(self.class_of):
            out[c].append(x)
        return [tuple(b) for b in out]

    def block(self, x: int) -> tuple:
        c = self.class_of[x]
        return tuple(y for y, d in enumerate(self.class_of) if d == c)

    def related(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def pairs(self):
        """All related pairs (a, b) with a < b."""
        for block in self.classes():
            yield from itertools.combinations(block, 2)

    def spanning_pairs(self):
        """(first element of class, x) for every non-first x; generates the partition."""
        for block in self.classes():
            for x in block[1:]:
                yield (block[0], x)

    def leq(self, other: "RightCongruence") -> bool:
        """Containment as relations (self refines other)."""
        _same_owner(self, other)
        return all(other.class_of[a] == other.class_of[b] for a, b in self.spanning_pairs())

    def contains_pairs(self, X) -> bool:
        return all(self.class_of[a] == self.class_of[b] for a, b in _pairs(X))

    def compat_witness(self):
        return _kernels.compat_witness(self.owner.mul, self.labels)

    def is_right_compatible(self) -> bool:
        return self.compat_witness() is None

    def __eq__(self, other):
        return (isinstance(other, RightCongruence) and self.class_of == other.class_of
                and self.owner == other.owner)

    def __hash__(self):
        return hash(self.class_of)

    def __repr__(self):
        return f"RightCongruence({self.classes()})"

    def to_json(self) -> dict:
        return {"classes": [list(b) for b in self.classes()]}


def _same_owner(r1, r2):
    if r1.owner != r2.owner:
        raise OwnerMismatch("congruences live on different semigroups")


# ---------------------------------------------------------------------------
# closure and certificates


def rc_closure(S: FiniteSemigroup, X) -> RightCongruence:
    """Least right congruence on S containing the pairs X."""
    pairs = _pairs(X)
    for a, b in pairs:
        if not (0 <= a < S.order and 0 <= b < S.order):
            raise IndexOutOfRange(f"pair {(a, b)} out of range")
    seeds = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    return RightCongruence(S, _kernels.saturate(S.mul, seeds))


@dataclass(frozen=True)
class Step:
    pair: int
    dir: str  # "f": x -> y, "b": y -> x
    mul: Optional[int]  # None is the identity of S^1


@dataclass(frozen=True)
class XSequence:
    """a = x1 s1, y1 s1 = x2 s2, ..., yk sk = b with (xi, yi) in X-bar."""

    start: int
    end: int
    steps: tuple = ()

    def to_json(self) -> dict:
        return {"steps": [{"pair": s.pair, "dir": s.dir, "mul": s.mul} for s in self.steps]}

    @classmethod
    def from_json(cls, start, end, obj):
        steps = tuple(Step(int(d["pair"]), d["dir"], d["mul"]) for d in obj["steps"])
        return cls(start, end, steps)


def replay(mul1, X, seq: XSequence) -> int:
    """Re-execute a certificate; ``mul1(x, s)`` multiplies by s in S^1.

    Raises :class:`CertificateError` on the first bad step, returns the end.
    """
    pairs = _pairs(X)
    cur = seq.start
    for k, step in enumerate(seq.steps):
        if not 0 <= step.pair < len(pairs):
            raise CertificateError(f"step {k}: pair index {step.pair} out of range")
        x, y = pairs[step.pair]
        if step.dir == "b":
            x, y = y, x
        elif step.dir != "f":
            raise CertificateError(f"step {k}: bad direction {step.dir!r}")
        if mul1(x, step.mul) != cur:
            raise CertificateError(f"step {k}: {cur} != x*s")
        cur = mul1(y, step.mul)
    if cur != seq.end:
        raise CertificateError(f"certificate ends at {cur}, expected {seq.end}")
    AUDIT["replayed"] += 1
    return cur


@dataclass(frozen=True)
class Proven:
    certificate: XSequence

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Disproven:
    def __bool__(self):
        return False


def _preimages(S: FiniteSemigroup):
    """pre[x][c] = multipliers s with x*s = c."""
    pre = []
    for x in S.elements:
        d = {}
        for s, c in enumerate(S.mul[x].tolist()):
            d.setdefault(c, []).append(s)
        pre.append(d)
    return pre


def certificate_search(S: FiniteSemigroup, X, s: int, t: int, pre=None) -> Optional[XSequence]:
    """Breadth-first search for a shortest X-sequence from s to t."""
    pairs = _pairs(X)
    if s == t:
        return XSequence(s, t, ())
    pre = pre if pre is not None else _preimages(S)
    parent = {s: None}
    queue = deque([s])
    while queue:
        c = queue.popleft()
        for i, (x0, y0) in enumerate(pairs):
            for d, x, y in (("f", x0, y0), ("b", y0, x0)):
                mults = ([None] if x == c else []) + pre[x].get(c, [])
                for m in mults:
                    nxt = S.mul1(y, m)
                    if nxt in parent:
                        continue
                    parent[nxt] = (c, Step(i, d, m))
                    if nxt == t:
                        steps = []
                        cur = t
                        while parent[cur] is not None:
                            prev, step = parent[cur]
                            steps.append(step)
                            cur = prev
                        return XSequence(s, t, tuple(reversed(steps)))
                    queue.append(nxt)
    return None


def consequence(S: FiniteSemigroup, X, pair, pre=None) -> Union[Proven, Disproven]:
    """Decide whether ``pair`` is a consequence of X, with a replayed certificate."""
    s, t = pair
    seq = certificate_search(S, X, s, t, pre)
    if seq is None:
        return Disproven()
    replay(S.mul1, X, seq)
    AUDIT["proven"] += 1
    _record(S, _pairs(X), seq)
    return Proven(seq)


# ---------------------------------------------------------------------------
# Rees congruence, restriction, meet / join


def rees_right_congruence(S: FiniteSemigroup, I) -> RightCongruence:
    members = I.members if isinstance(I, RightIdeal) else frozenset(I)
    if not members:
        raise NotARightIdeal("empty set")
    if not is_right_ideal(S, members):
        raise NotARightIdeal(f"{sorted(members)} is not closed under right multiplication")
    block = sorted(members)
    return RightCongruence.from_classes(S, [block])


@dataclass(frozen=True)
class Restriction:
    sub: Sub
    congruence: RightCongruence  # on sub.semigroup
    right_compatible: bool

    def classes_in_parent(self) -> list:
        return [tuple(self.sub.up(i) for i in b) for b in self.congruence.classes()]


def restrict(rho: RightCongruence, T) -> Restriction:
    """rho intersected with T x T, on the subsemigroup T re-indexed."""
    sub = T if isinstance(T, Sub) else induced(rho.owner, T)
    labels = [rho.class_of[x] for x in sub.elements]
    cong = RightCongruence(sub.semigroup, labels)
    return Restriction(sub, cong, cong.is_right_compatible())


def meet(r1: RightCongruence, r2: RightCongruence) -> RightCongruence:
    _same_owner(r1, r2)
    return RightCongruence(r1.owner, _pair_labels(r1.class_of, r2.class_of))


def _pair_labels(c1, c2):
    seen = {}
    return [seen.setdefault(k, len(seen)) for k in zip(c1, c2)]


def join(r1: RightCongruence, r2: RightCongruence) -> RightCongruence:
    _same_owner(r1, r2)
    return rc_closure(r1.owner, list(r1.spanning_pairs()) + list(r2.spanning_pairs()))


def combine(r1: RightCongruence, r2: RightCongruence, mode: str) -> RightCongruence:
    if mode == "meet":
        return meet(r1, r2)
    if mode == "join":
        return join(r1, r2)
    raise InputError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# the lattice oracle


def enumeration_bound() -> int:
    raw = os.environ.get("SGWB_MAX_ORDER")
    return int(raw) if raw else DEFAULT_ENUMERATION_BOUND


@dataclass
class CongruenceLattice:
    owner: FiniteSemigroup
    congruences: tuple
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {r.class_of: i for i, r in enumerate(self.congruences)}

    def __len__(self):
        return len(self.congruences)

    def __iter__(self):
        return iter(self.congruences)

    def __getitem__(self, i):
        return self.congruences[i]

    def index(self, rho: RightCongruence) -> int:
        return self._index[rho.class_of]

    def __contains__(self, rho):
        return rho.class_of in self._index

    def leq(self, i: int, j: int) -> bool:
        return self.congruences[i].leq(self.congruences[j])

    def meet(self, i: int, j: int) -> int:
        return self.index(meet(self.congruences[i], self.congruences[j]))

    def join(self, i: int, j: int) -> int:
        return self.index(join(self.congruences[i], self.congruences[j]))

    def covers(self) -> list:
        """Hasse diagram edges (i, j): i < j with nothing strictly between."""
        n = len(self.congruences)
        below = [[j for j in range(n) if j != i and self.leq(j, i)] for i in range(n)]
        edges = []
        for i in range(n):
            for j in below[i]:
                if not any(k != j and j in below[k] for k in below[i]):
                    edges.append((j, i))
        return sorted(edges)

    def to_dot(self) -> str:
        lines = ["digraph L {", "  rankdir=BT;"]
        for i, rho in enumerate(self.congruences):
            text = "|".join(",".join(map(str, b)) for b in rho.classes())
            lines.append(f'  c{i} [label="{text}"];')
        for a, b in self.covers():
            lines.append(f"  c{a} -> c{b};")
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"congruences": [r.to_json() for r in self.congruences],
                "covers": [list(e) for e in self.covers()]}


def enumerate_right_congruences(S: FiniteSemigroup, bound: Optional[int] = None) -> CongruenceLattice:
    """Every partition of S tested for right compatibility (the brute-force oracle)."""
    bound = enumeration_bound() if bound is None else bound
    if S.order > bound:
        raise OrderTooLarge(f"order {S.order} exceeds the enumeration bound {bound}")
    rows = _kernels.compatible_partitions(S.mul)
    congs = [RightCongruence(S, row) for row in rows]
    congs.sort(key=lambda r: (r.num_classes, r.class_of))
    return CongruenceLattice(S, tuple(congs))


def oracle_closure(S: FiniteSemigroup, X, lattice: Optional[CongruenceLattice] = None) -> RightCongruence:
    """Meet of all enumerated right congruences containing X."""
    lattice = lattice or enumerate_right_congruences(S)
    result = RightCongruence.universal(S)
    for rho in lattice:
        if rho.contains_pairs(X):
            result = meet(result, rho)
    return result


# ---------------------------------------------------------------------------
# generating sets


@dataclass(frozen=True)
class MinimalGenerators:
    pairs: GenPairs
    mode: str  # "exact" or "greedy"


def irredundant(S: FiniteSemigroup, pairs, target: Optional[RightCongruence] = None) -> list:
    """Drop pairs in input order, keeping one only if its removal shrinks the closure."""
    pairs = list(_pairs(pairs))
    target = target if target is not None else rc_closure(S, pairs)
    kept = list(pairs)
    for p in pairs:
        trial = [q for q in kept if q != p]
        if rc_closure(S, trial) == target:
            kept = trial
    return kept


def minimal_generating_set(S: FiniteSemigroup, rho: RightCongruence,
                           exact_limit: int = EXACT_SEARCH_LIMIT) -> MinimalGenerators:
    """A generating set for rho with no redundant pair.

    With at most ``exact_limit`` related pairs the result has minimum
    cardinality (subsets searched by increasing size, first found wins);
    otherwise it is the greedy irredundant reduction of a spanning set.
    """
    if rho.owner != S:
        raise OwnerMismatch("congruence is not on S")
    related = list(rho.pairs())
    greedy = irredundant(S, list(rho.spanning_pairs()), rho)
    if len(related) > exact_limit:
        return MinimalGenerators(GenPairs(S, greedy), "greedy")
    for k in range(len(greedy)):
        for combo in itertools.combinations(related, k):
            if rc_closure(S, combo) == rho:
                return MinimalGenerators(GenPairs(S, combo), "exact")
    return MinimalGenerators(GenPairs(S, greedy), "exact")
