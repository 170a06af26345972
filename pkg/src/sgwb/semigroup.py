"""Finite semigroups as validated multiplication tables."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import (
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

MAX_TABLE_ORDER = 256


class FiniteSemigroup:
    """An order-n semigroup on the elements ``0..n-1``.

    Instances are built by :func:`validate_table` and never mutated.  The
    table is a read-only ``int64`` array; equality and hashing look at the
    table only, labels are for display.
    """

    def __init__(self, mul, labels, identity, zero, name=None):
        self.mul = mul
        self.labels = tuple(labels)
        self.identity = identity
        self.zero = zero
        self.name = name

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    def __len__(self):
        return self.mul.shape[0]

    def __repr__(self):
        tag = self.name or "FiniteSemigroup"
        return f"<{tag} order={self.order}>"

    def __eq__(self, other):
        return isinstance(other, FiniteSemigroup) and np.array_equal(self.mul, other.mul)

    def __hash__(self):
        return hash(self.mul.tobytes())

    @property
    def elements(self) -> range:
        return range(self.order)

    def m(self, x: int, y: int) -> int:
        return int(self.mul[x, y])

    def prod(self, *xs: int) -> int:
        it = iter(xs)
        acc = next(it)
        for x in it:
            acc = int(self.mul[acc, x])
        return acc

    def mul1(self, x: int, s: Optional[int]) -> int:
        """Product with a multiplier from S^1; ``None`` is the adjoined identity."""
        return x if s is None else int(self.mul[x, s])

    def label(self, x: int) -> str:
        return self.labels[x]

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    @cached_property
    def table(self) -> list:
        return self.mul.tolist()

    @cached_property
    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    @cached_property
    def is_band(self) -> bool:
        return all(self.mul[x, x] == x for x in self.elements)

    @cached_property
    def is_group(self) -> bool:
        if self.identity is None:
            return False
        e = self.identity
        return all(any(self.mul[x, y] == e for y in self.elements) for x in self.elements)

    def inverse(self, x: int) -> int:
        if not self.is_group:
            raise InputError(f"{self!r} is not a group")
        e = self.identity
        return int(np.flatnonzero(self.mul[x] == e)[0])

    def to_json(self) -> dict:
        out = {"order": self.order, "mul": self.table}
        if self.labels != tuple(str(i) for i in self.elements):
            out["labels"] = list(self.labels)
        if self.identity is not None:
            out["identity"] = self.identity
        if self.zero is not None:
            out["zero"] = self.zero
        return out


def _find_identity(mul):
    n = mul.shape[0]
    rng = np.arange(n)
    for e in range(n):
        if np.array_equal(mul[e], rng) and np.array_equal(mul[:, e], rng):
            return e
    return None


def _find_zero(mul):
    n = mul.shape[0]
    for z in range(n):
        if (mul[z] == z).all() and (mul[:, z] == z).all():
            return z
    return None


def validate_table(order, mul, identity=None, zero=None, labels=None, name=None) -> FiniteSemigroup:
    """Check a multiplication table and wrap it as a :class:`FiniteSemigroup`.

    Associativity is checked exhaustively over all triples.  When
    ``identity`` or ``zero`` is omitted it is detected from the table.
    """
    if order < 1:
        raise InputError("order must be positive")
    if order > MAX_TABLE_ORDER:
        raise OrderTooLarge(f"order {order} exceeds the exhaustive-check cap {MAX_TABLE_ORDER}")
    try:
        arr = np.array(mul, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise InputError(f"table is not an integer matrix: {exc}") from None
    if arr.shape != (order, order):
        raise InputError(f"table has shape {arr.shape}, expected {(order, order)}")
    if arr.min() < 0 or arr.max() >= order:
        bad = np.argwhere((arr < 0) | (arr >= order))[0]
        raise IndexOutOfRange(f"entry mul[{bad[0]}][{bad[1]}] = {arr[tuple(bad)]} not in [0, {order})")
    w = _kernels.assoc_witness(arr)
    if w is not None:
        raise NotAssociative(w)
    rng = np.arange(order)
    if identity is not None:
        if not 0 <= identity < order:
            raise IndexOutOfRange(f"identity {identity} out of range")
        bad = np.flatnonzero((arr[identity] != rng) | (arr[:, identity] != rng))
        if len(bad):
            raise BadIdentity(identity, int(bad[0]))
    else:
        identity = _find_identity(arr)
    if zero is not None:
        if not 0 <= zero < order:
            raise IndexOutOfRange(f"zero {zero} out of range")
        bad = np.flatnonzero((arr[zero] != zero) | (arr[:, zero] != zero))
        if len(bad):
            raise BadZero(zero, int(bad[0]))
    else:
        zero = _find_zero(arr)
    if labels is None:
        labels = [str(i) for i in range(order)]
    elif len(labels) != order:
        raise InputError(f"{len(labels)} labels for order {order}")
    arr.setflags(write=False)
    return FiniteSemigroup(arr, labels, identity, zero, name)


def from_json(obj: dict, name=None) -> FiniteSemigroup:
    try:
        order = int(obj["order"])
        mul = obj["mul"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad table object: {exc}") from None
    return validate_table(order, mul, obj.get("identity"), obj.get("zero"), obj.get("labels"), name)


def load_table(path) -> FiniteSemigroup:
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except FileNotFoundError:
        raise MissingFile(str(path)) from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    return from_json(obj, name=path.stem)


def dump_table(S: FiniteSemigroup, path) -> None:
    Path(path).write_text(json.dumps(S.to_json()))


def from_function(elements: Sequence, op, labels=None, name=None) -> FiniteSemigroup:
    """Tabulate ``op`` over a finite list of hashable elements."""
    index = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    mul = [[index[op(x, y)] for y in elements] for x in elements]
    if labels is None:
        labels = [str(x) for x in elements]
    return validate_table(n, mul, labels=labels, name=name)


# ---------------------------------------------------------------------------
# small catalogue


def cyclic_group(n: int) -> FiniteSemigroup:
    return validate_table(n, [[(x + y) % n for y in range(n)] for x in range(n)], name=f"Z{n}")


def right_zero(n: int) -> FiniteSemigroup:
    return validate_table(n, [[y for y in range(n)] for _ in range(n)], name=f"RZ{n}")


def left_zero(n: int) -> FiniteSemigroup:
    return validate_table(n, [[x for _ in range(n)] for x in range(n)], name=f"LZ{n}")


def null_semigroup(n: int) -> FiniteSemigroup:
    """xy = 0 for all x, y."""
    return validate_table(n, [[0] * n for _ in range(n)], name=f"N{n}")


def trivial() -> FiniteSemigroup:
    return validate_table(1, [[0]], name="1")


def chain_semilattice(n: int) -> FiniteSemigroup:
    """{0 < 1 < ... < n-1} under min."""
    return validate_table(n, [[min(x, y) for y in range(n)] for x in range(n)], name=f"Ch{n}")


def two_element_semilattice_monoid() -> FiniteSemigroup:
    """The monoid {0, 1} under multiplication (identity 1, zero 0)."""
    return validate_table(2, [[0, 0], [0, 1]], name="U1")


def klein_four() -> FiniteSemigroup:
    return validate_table(4, [[x ^ y for y in range(4)] for x in range(4)], name="V4")


def symmetric_group(n: int) -> FiniteSemigroup:
    perms = list(itertools.permutations(range(n)))
    # composition: apply p then q (right action)
    return from_function(perms, lambda p, q: tuple(q[p[i]] for i in range(n)),
                         labels=["".join(map(str, p)) for p in perms], name=f"S{n}")


def full_transformation_monoid(n: int) -> FiniteSemigroup:
    maps = list(itertools.product(range(n), repeat=n))
    return from_function(maps, lambda f, g: tuple(g[f[i]] for i in range(n)),
                         labels=["".join(map(str, f)) for f in maps], name=f"T{n}")


def symmetric_inverse_monoid(n: int) -> FiniteSemigroup:
    """Partial injections of {0..n-1}, composed left to right."""
    maps = []
    for dom_size in range(n + 1):
        for dom in itertools.combinations(range(n), dom_size):
            for img in itertools.permutations(range(n), dom_size):
                maps.append(tuple(sorted(zip(dom, img))))

    def comp(f, g):
        gd = dict(g)
        return tuple(sorted((x, gd[y]) for x, y in f if y in gd))

    labels = ["{" + ",".join(f"{x}>{y}" for x, y in f) + "}" for f in maps]
    return from_function(maps, comp, labels=labels, name=f"I{n}")


# ---------------------------------------------------------------------------
# adjoining identity / zero


def adjoin(S: FiniteSemigroup, kind: str) -> FiniteSemigroup:
    """S^1 or S^0: append a new element acting as identity or zero.

    The new element is always adjoined, even if S already has one.
    """
    n = S.order
    mul = np.empty((n + 1, n + 1), dtype=np.int64)
    mul[:n, :n] = S.mul
    if kind == "identity":
        mul[n, :] = np.arange(n + 1)
        mul[:, n] = np.arange(n + 1)
        labels = list(S.labels) + ["1"]
        return validate_table(n + 1, mul, identity=n, labels=_dedupe(labels), name=f"{S.name or 'S'}^1")
    if kind == "zero":
        mul[n, :] = n
        mul[:, n] = n
        labels = list(S.labels) + ["0"]
        return validate_table(n + 1, mul, zero=n, labels=_dedupe(labels), name=f"{S.name or 'S'}^0")
    raise InputError(f"unknown adjoin kind {kind!r}")


def _dedupe(labels):
    seen = set()
    out = []
    for lab in labels:
        while lab in seen:
            lab = lab + "'"
        seen.add(lab)
        out.append(lab)
    return out


# ---------------------------------------------------------------------------
# element classes, ideals, subsemigroups


def special_elements(S: FiniteSemigroup, kind: str) -> frozenset:
    if kind == "idempotent":
        return frozenset(x for x in S.elements if S.mul[x, x] == x)
    if kind == "indecomposable":
        square = set(np.unique(S.mul).tolist())
        return frozenset(x for x in S.elements if x not in square)
    raise InputError(f"unknown element kind {kind!r}")


def principal_right_ideal(S: FiniteSemigroup, a: int) -> frozenset:
    """aS^1."""
    return frozenset([a, *S.mul[a].tolist()])


def principal_left_ideal(S: FiniteSemigroup, a: int) -> frozenset:
    """S^1 a."""
    return frozenset([a, *S.mul[:, a].tolist()])


@dataclass(frozen=True)
class RightIdeal:
    owner: FiniteSemigroup
    members: frozenset
    generators: tuple

    def __contains__(self, x):
        return x in self.members


def _check_gens(S, gens):
    gens = sorted(set(int(g) for g in gens))
    if not gens:
        raise EmptyGeneratorSet("generator set is empty")
    for g in gens:
        if not 0 <= g < S.order:
            raise IndexOutOfRange(f"element {g} out of range for order {S.order}")
    return gens


def right_ideal(S: FiniteSemigroup, gens: Iterable[int]) -> RightIdeal:
    """The right ideal gens*S^1 with a minimum-size generating subset of ``gens``.

    A member x is needed as a generator exactly when its R-class is maximal
    among the members; one generator is kept per maximal R-class, the
    lowest-index element of ``gens`` in that class.
    """
    gens = _check_gens(S, gens)
    members = frozenset().union(*(principal_right_ideal(S, g) for g in gens))
    return RightIdeal(S, members, _minimal_right_generators(S, gens))


def _minimal_right_generators(S, gens):
    down = {g: principal_right_ideal(S, g) for g in gens}
    chosen = []
    for g in gens:  # ascending
        # g is redundant if some other generator strictly above it covers it,
        # or an already chosen generator is R-equivalent to it
        redundant = False
        for h in gens:
            if h == g or g not in down[h]:
                continue
            if h not in down[g] or h in chosen:
                redundant = True
                break
        if not redundant:
            chosen.append(g)
    return tuple(chosen)


def left_ideal(S: FiniteSemigroup, gens: Iterable[int]) -> frozenset:
    gens = _check_gens(S, gens)
    return frozenset().union(*(principal_left_ideal(S, g) for g in gens))


def is_right_ideal(S: FiniteSemigroup, X) -> bool:
    X = set(X)
    return all(int(S.mul[x, s]) in X for x in X for s in S.elements)


def is_left_ideal(S: FiniteSemigroup, X) -> bool:
    X = set(X)
    return all(int(S.mul[s, x]) in X for x in X for s in S.elements)


def is_ideal(S: FiniteSemigroup, X) -> bool:
    return is_left_ideal(S, X) and is_right_ideal(S, X)


def is_closed(S: FiniteSemigroup, X) -> bool:
    X = set(X)
    return all(int(S.mul[x, y]) in X for x in X for y in X)


def subsemigroup(S: FiniteSemigroup, gens: Iterable[int]) -> frozenset:
    """Smallest multiplicatively closed superset of ``gens``."""
    gens = _check_gens(S, gens)
    members = set(gens)
    frontier = list(gens)
    while frontier:
        new = []
        for x in frontier:
            for y in list(members):
                for p in (int(S.mul[x, y]), int(S.mul[y, x])):
                    if p not in members:
                        members.add(p)
                        new.append(p)
        frontier = new
    return frozenset(members)


class HomCheck(NamedTuple):
    is_hom: bool
    witness: Optional[tuple]
    surjective: bool

    def __bool__(self):
        return self.is_hom


def check_homomorphism(S: FiniteSemigroup, T: FiniteSemigroup, phi: Sequence[int]) -> HomCheck:
    """Whether ``phi`` (a list indexed by S's elements) is a homomorphism S -> T."""
    phi = np.asarray(phi, dtype=np.int64)
    if phi.shape != (S.order,):
        raise InputError(f"map must have {S.order} entries")
    if phi.min() < 0 or phi.max() >= T.order:
        raise IndexOutOfRange("map value out of range")
    lhs = phi[S.mul]
    rhs = T.mul[phi[:, None], phi[None, :]]
    bad = np.argwhere(lhs != rhs)
    witness = (int(bad[0][0]), int(bad[0][1])) if len(bad) else None
    surjective = len(set(phi.tolist())) == T.order
    return HomCheck(witness is None, witness, surjective)


@dataclass(frozen=True)
class Sub:
    """A subsemigroup T of S re-indexed as its own table.

    ``elements[i]`` is the S-index of T's element ``i``.
    """

    parent: FiniteSemigroup
    semigroup: FiniteSemigroup
    elements: tuple

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    def up(self, i: int) -> int:
        return self.elements[i]

    def down(self, x: int) -> int:
        return self.index[x]


def induced(S: FiniteSemigroup, T: Iterable[int], name=None) -> Sub:
    """The subsemigroup on T (ascending S-order) as a standalone table."""
    elems = tuple(sorted(set(int(t) for t in T)))
    if not elems:
        raise EmptyGeneratorSet("empty subset")
    if not is_closed(S, elems):
        x, y = next((x, y) for x in elems for y in elems if int(S.mul[x, y]) not in elems)
        raise NotASubsemigroup(f"{x}*{y} = {S.m(x, y)} leaves the subset")
    idx = {x: i for i, x in enumerate(elems)}
    sub = S.mul[np.ix_(elems, elems)]
    mul = np.vectorize(idx.__getitem__, otypes=[np.int64])(sub)
    labels = [S.labels[x] for x in elems]
    return Sub(S, validate_table(len(elems), mul, labels=labels, name=name), elems)
