"""Infinite semigroups with decidable normal forms, explored in bounded balls.

Families:

* ``FreeCommutative(k)``: exponent vectors, nonzero.
* ``FreeMonogenic`` / ``FreeMonogenicWithIdentity``: powers of one letter.
* ``IdempotentPair``: <e, f | ee = e, ff = f>, alternating strings.
* ``FlipIdem``: <a, b | aa = 1, bb = b>, a monoid of alternating strings.
* ``FreeProduct(S, T)``: semigroup free product of two finite semigroups.
* ``MonoidFreeProduct(M, N)``: monoid free product; factor identities vanish.

Nothing here ever answers "not related" for an infinite semigroup; bounded
searches answer Proven (with a certificate) or Unknown.
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .congruence import AUDIT, _record
from .errors import BadSpec, BallTooLarge, BoundTooSmall, CertificateError, ContextMismatch, InputError
from .semigroup import FiniteSemigroup, cyclic_group, two_element_semilattice_monoid

DEFAULT_BALL_CAP = 200_000


def ball_cap() -> int:
    raw = os.environ.get("SGWB_MAX_BALL")
    return int(raw) if raw else DEFAULT_BALL_CAP


class NormalFormSemigroup:
    """Base class: words are hashable canonical forms."""

    name = "?"
    is_monoid = False
    identity = None

    @property
    def letters(self) -> tuple:
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def length(self, w) -> int:
        return len(w)

    def lexkey(self, w):
        return w

    def format(self, w) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def prod(self, *ws):
        out = ws[0]
        for w in ws[1:]:
            out = self.mul(out, w)
        return out

    def power(self, w, n: int):
        if n == 0:
            if not self.is_monoid:
                raise InputError("zeroth power needs an identity")
            return self.identity
        return self.prod(*([w] * n))

    def mul1(self, x, u):
        """Multiply by u in the monoid with an identity adjoined (None)."""
        return x if u is None else self.mul(x, u)

    def ball(self, k: int) -> list:
        """All canonical words of length <= k, ordered by (length, lexicographic)."""
        if k < 0:
            raise InputError("ball radius must be non-negative")
        cap = ball_cap()
        level = list(self.letters) if k >= 1 else []
        seen = set(level)
        out = [self.identity] if self.is_monoid else []
        out += level
        for length in range(2, k + 1):
            nxt = []
            for w in level:
                for a in self.letters:
                    v = self.mul(w, a)
                    if self.length(v) == length and v not in seen:
                        seen.add(v)
                        nxt.append(v)
            out += nxt
            if len(out) > cap:
                raise BallTooLarge(f"ball({k}) of {self.name} exceeds {cap} words")
            level = nxt
        out.sort(key=lambda w: (self.length(w), self.lexkey(w)))
        return out

    def __repr__(self):
        return self.name


class FreeCommutative(NormalFormSemigroup):
    """Free commutative semigroup on k letters (a, b, c, ...)."""

    def __init__(self, rank: int, with_identity: bool = False):
        if not 1 <= rank <= 26:
            raise BadSpec(f"rank must be in 1..26, got {rank}")
        self.rank = rank
        self.is_monoid = with_identity
        self.identity = (0,) * rank if with_identity else None
        self.name = f"FreeCommutative({rank})"
        self._letters = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))

    @property
    def letters(self):
        return self._letters

    def mul(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def length(self, w):
        return sum(w)

    def lexkey(self, w):
        # lexicographic on the sorted letter string: more a's first
        return tuple(-e for e in w)

    def format(self, w):
        if sum(w) == 0:
            return "1"
        parts = []
        for i, e in enumerate(w):
            if e:
                c = chr(ord("a") + i)
                parts.append(c if e == 1 else f"{c}^{e}")
        return " ".join(parts)

    def parse(self, text):
        t = text.replace(" ", "")
        if t == "1" and self.is_monoid:
            return self.identity
        exps = [0] * self.rank
        pos = 0
        for m in re.finditer(r"([a-z])(?:\^(\d+))?", t):
            if m.start() != pos:
                break
            i = ord(m.group(1)) - ord("a")
            if i >= self.rank:
                raise InputError(f"letter {m.group(1)!r} outside rank {self.rank}")
            exps[i] += int(m.group(2) or 1)
            pos = m.end()
        if pos != len(t) or not t:
            raise InputError(f"cannot parse word {text!r}")
        w = tuple(exps)
        if sum(w) == 0 and not self.is_monoid:
            raise InputError("the empty word is not an element")
        return w


class FreeMonogenic(FreeCommutative):
    def __init__(self, with_identity: bool = False):
        super().__init__(1, with_identity)
        self.name = "FreeMonogenicWithIdentity" if with_identity else "FreeMonogenic"


class _Alternating(NormalFormSemigroup):
    """Strings over two letters with per-letter rules for a doubled letter."""

    alphabet = ""
    # rule[c]: "drop" (cc -> 1) or "keep" (cc -> c)
    rules: dict = {}

    @property
    def letters(self):
        return tuple(self.alphabet)

    def reduce(self, raw: str) -> str:
        stack = []
        for c in raw:
            if c not in self.alphabet:
                raise InputError(f"letter {c!r} not in {self.alphabet!r}")
            if stack and stack[-1] == c:
                if self.rules[c] == "drop":
                    stack.pop()
                continue
            stack.append(c)
        return "".join(stack)

    def mul(self, x, y):
        return self.reduce(x + y)

    def format(self, w):
        return w if w else "1"

    def parse(self, text):
        t = text.replace(" ", "")
        if t == "1":
            if not self.is_monoid:
                raise InputError("the empty word is not an element")
            return ""
        if not t:
            raise InputError("empty word")
        w = self.reduce(t)
        if not w and not self.is_monoid:
            raise InputError("the empty word is not an element")
        return w


class IdempotentPair(_Alternating):
    name = "IdempotentPair"
    alphabet = "ef"
    rules = {"e": "keep", "f": "keep"}


class FlipIdem(_Alternating):
    name = "FlipIdem"
    alphabet = "ab"
    rules = {"a": "drop", "b": "keep"}
    is_monoid = True
    identity = ""


class FreeProduct(NormalFormSemigroup):
    """Free product of two finite semigroups; words are tuples of (factor, element)."""

    def __init__(self, S: FiniteSemigroup, T: FiniteSemigroup, monoid: bool = False):
        self.factors = (S, T)
        self.is_monoid = monoid
        if monoid:
            if S.identity is None or T.identity is None:
                raise BadSpec("monoid free product needs two monoids")
            self.identity = ()
        self.name = ("MonoidFreeProduct" if monoid else "FreeProduct") + f"({S.name or 'S'},{T.name or 'T'})"

    @property
    def letters(self):
        out = []
        for f, F in enumerate(self.factors):
            out += [(f, x) for x in F.elements if not (self.is_monoid and x == F.identity)]
        return tuple((l,) for l in out)

    def letter(self, factor: int, x: int):
        return ((factor, x),)

    def reduce(self, raw) -> tuple:
        stack = []
        for f, x in raw:
            F = self.factors[f]
            if self.is_monoid and x == F.identity:
                continue
            while True:
                if stack and stack[-1][0] == f:
                    y = F.m(stack[-1][1], x)
                    stack.pop()
                    if self.is_monoid and y == F.identity:
                        break
                    x = y
                    continue
                stack.append((f, x))
                break
        return tuple(stack)

    def mul(self, x, y):
        return self.reduce(x + y)

    def format(self, w):
        if not w:
            return "1"
        return ";".join(f"{f}:{x}" for f, x in w)

    def parse(self, text):
        t = text.replace(" ", "")
        if t == "1":
            if not self.is_monoid:
                raise InputError("the empty word is not an element")
            return ()
        raw = []
        for tok in t.split(";"):
            m = re.fullmatch(r"([01]):(\d+)", tok)
            if not m:
                raise InputError(f"bad free-product token {tok!r}")
            f, x = int(m.group(1)), int(m.group(2))
            if x >= self.factors[f].order:
                raise InputError(f"element {x} out of range for factor {f}")
            raw.append((f, x))
        w = self.reduce(raw)
        if not w and not self.is_monoid:
            raise InputError("the empty word is not an element")
        return w

    def is_unit(self, factor: int, x: int) -> bool:
        F = self.factors[factor]
        return F.identity is not None and any(F.m(x, y) == F.identity for y in F.elements)


def MonoidFreeProduct(M: FiniteSemigroup, N: FiniteSemigroup) -> FreeProduct:
    return FreeProduct(M, N, monoid=True)


# ---------------------------------------------------------------------------
# building from a spec string


def _split_args(s: str) -> list:
    depth, cur, out = 0, [], []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [a.strip() for a in out]


def build_family(spec) -> NormalFormSemigroup:
    """Build a family from a string such as ``"FlipIdem"``, ``"FreeCommutative(2)"`` or
    ``"MonoidFreeProduct(Z2,ONE(Z1))"``, or from a dict ``{"family": ..., "rank": k,
    "factors": [S, T]}``."""
    if isinstance(spec, NormalFormSemigroup):
        return spec
    if isinstance(spec, dict):
        fam = spec.get("family")
        args = spec.get("factors") or ([spec["rank"]] if "rank" in spec else [])
    elif isinstance(spec, str):
        m = re.fullmatch(r"\s*([A-Za-z]+)\s*(?:\((.*)\))?\s*", spec, re.S)
        if not m:
            raise BadSpec(f"cannot parse family spec {spec!r}")
        fam = m.group(1)
        args = _split_args(m.group(2)) if m.group(2) is not None else []
    else:
        raise BadSpec(f"unsupported family spec {spec!r}")
    try:
        if fam == "FreeCommutative":
            if len(args) != 1:
                raise BadSpec("FreeCommutative takes one rank argument")
            return FreeCommutative(int(args[0]))
        if fam in ("FreeMonogenic", "FreeMonogenicWithIdentity") and not args:
            return FreeMonogenic(fam.endswith("WithIdentity"))
        if fam == "IdempotentPair" and not args:
            return IdempotentPair()
        if fam == "FlipIdem" and not args:
            return FlipIdem()
        if fam in ("FreeProduct", "MonoidFreeProduct"):
            if len(args) != 2:
                raise BadSpec(f"{fam} takes two factors")
            S, T = (_factor(a) for a in args)
            return FreeProduct(S, T, monoid=fam == "MonoidFreeProduct")
    except (ValueError, InputError) as exc:
        if isinstance(exc, BadSpec):
            raise
        raise BadSpec(f"bad arguments for {fam}: {exc}") from None
    raise BadSpec(f"unknown family {fam!r} with {len(args)} argument(s)")


def _factor(arg) -> FiniteSemigroup:
    if isinstance(arg, FiniteSemigroup):
        return arg
    from .expr import evaluate, parse_expression

    return evaluate(parse_expression(str(arg))).semigroup


# ---------------------------------------------------------------------------
# bounded right congruence closure


@dataclass(frozen=True)
class Edge:
    pair: int
    dir: str  # "f": x u -> y u ; "b": y u -> x u
    mul: object  # None is the adjoined identity


@dataclass(frozen=True)
class WordCertificate:
    start: object
    end: object
    steps: tuple


@dataclass(frozen=True)
class ProvenWords:
    certificate: WordCertificate

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Unknown:
    def __bool__(self):
        return False


def replay_words(F: NormalFormSemigroup, X, cert: WordCertificate):
    """Recompute every product of a word certificate."""
    cur = cert.start
    for k, st in enumerate(cert.steps):
        x, y = X[st.pair]
        if st.dir == "b":
            x, y = y, x
        if F.mul1(x, st.mul) != cur:
            raise CertificateError(f"step {k}: {F.format(cur)} is not x*u")
        cur = F.mul1(y, st.mul)
    if cur != cert.end:
        raise CertificateError("certificate does not reach its end")
    AUDIT["replayed"] += 1
    return cur


@dataclass
class PartialCongruence:
    owner: NormalFormSemigroup
    bound: int
    X: tuple
    words: list
    classes: list
    _class_of: dict = field(repr=False, default_factory=dict)
    _adj: dict = field(repr=False, default_factory=dict)

    def proven_related(self, a, b) -> bool:
        return a in self._class_of and self._class_of.get(a) == self._class_of.get(b)

    def status(self, a, b) -> Union[ProvenWords, Unknown]:
        """Proven with a shortest replayed certificate, or Unknown (never a disproof)."""
        if not self.proven_related(a, b):
            return Unknown()
        parent = {a: None}
        frontier = [a]
        while frontier and b not in parent:
            nxt = []
            for c in frontier:
                for d, e in self._adj.get(c, ()):
                    if d not in parent:
                        parent[d] = (c, e)
                        nxt.append(d)
            frontier = nxt
        steps = []
        cur = b
        while parent[cur] is not None:
            prev, e = parent[cur]
            steps.append(e)
            cur = prev
        cert = WordCertificate(a, b, tuple(reversed(steps)))
        replay_words(self.owner, self.X, cert)
        AUDIT["proven"] += 1
        _record(self.owner, self.X, cert)
        return ProvenWords(cert)

    def proven_pairs(self) -> set:
        out = set()
        for cls in self.classes:
            for u, v in itertools.combinations(cls, 2):
                out.add((u, v))
                out.add((v, u))
        return out

    def to_json(self) -> dict:
        f = self.owner.format
        return {"family": self.owner.name, "bound": self.bound,
                "X": [[f(x), f(y)] for x, y in self.X],
                "classes": [[f(w) for w in c] for c in self.classes if len(c) > 1]}


def bounded_rc_closure(F: NormalFormSemigroup, X, k: int) -> PartialCongruence:
    """Components of the graph on ball(k) with edges (x u, y u), u in ball(k) or 1."""
    words = F.ball(k)
    idx = {w: i for i, w in enumerate(words)}
    X = tuple((x, y) for x, y in X)
    for x, y in X:
        if x not in idx or y not in idx:
            raise InputError(f"pair ({F.format(x)}, {F.format(y)}) is outside ball({k})")
    parent = list(range(len(words)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    adj: dict = {}
    mults = [None] + [w for w in words if w != F.identity or not F.is_monoid]
    for p, (x, y) in enumerate(X):
        for u in mults:
            xu, yu = F.mul1(x, u), F.mul1(y, u)
            if xu in idx and yu in idx and xu != yu:
                adj.setdefault(xu, []).append((yu, Edge(p, "f", u)))
                adj.setdefault(yu, []).append((xu, Edge(p, "b", u)))
                a, b = find(idx[xu]), find(idx[yu])
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: dict = {}
    for i, w in enumerate(words):
        groups.setdefault(find(i), []).append(w)
    classes = [groups[r] for r in sorted(groups)]
    class_of = {w: n for n, c in enumerate(classes) for w in c}
    return PartialCongruence(F, k, X, words, classes, class_of, adj)


# ---------------------------------------------------------------------------
# witnesses


@dataclass
class IndecomposableReport:
    bound: int
    ideal_size: int
    elements: list
    count: int

    def to_json(self) -> dict:
        return {"bound": self.bound, "ideal_size": self.ideal_size, "count": self.count,
                "elements": self.elements}


def witness_indecomposables(k: int) -> IndecomposableReport:
    """Elements of the ideal generated by a in FreeCommutative(2), degree <= k, that are
    not a product of two members of the ideal."""
    if k < 2:
        raise InputError("k must be at least 2")
    F = FreeCommutative(2)
    ball = F.ball(k)
    ideal = [w for w in ball if w[0] >= 1]
    members = set(ideal)
    products = {F.mul(x, y) for x in ideal for y in ideal if F.length(x) + F.length(y) <= k}
    products &= members
    out = [w for w in ideal if w not in products]
    return IndecomposableReport(k, len(ideal), [F.format(w) for w in out], len(out))


@dataclass
class IdealWitnessReport:
    family: str
    semigroup: str
    m: int
    bound: int
    choices: dict
    generators: list
    checks: list  # (i, j, radius, multipliers checked)
    refuted: bool

    def to_json(self) -> dict:
        return {"family": self.family, "semigroup": self.semigroup, "m": self.m, "bound": self.bound,
                "choices": self.choices, "generators": self.generators,
                "checks": [{"i": i, "j": j, "radius": r, "multipliers": n} for i, j, r, n in self.checks],
                "refuted": self.refuted}


def sfp_default() -> FreeProduct:
    """Semigroup free product of Z2 and the right-zero semigroup on two elements."""
    from .semigroup import right_zero

    return FreeProduct(cyclic_group(2), right_zero(2))


def mfp_default() -> FreeProduct:
    """Monoid free product of the {0, 1} monoid and Z3."""
    return FreeProduct(two_element_semilattice_monoid(), cyclic_group(3), monoid=True)


def _trailing_units(F: FreeProduct, w) -> int:
    if not F.is_monoid:
        return 0
    t = 0
    for f, x in reversed(w):
        if not F.is_unit(f, x):
            break
        t += 1
    return t


def _sfp_words(F: FreeProduct, m: int):
    S, T = F.factors
    sf, tf = 0, 1
    if T.order < 2:
        if S.order < 2:
            raise ContextMismatch("one factor is non-trivial", "both factors are trivial")
        sf, tf = 1, 0
    a = (sf, 0)
    b, c = (tf, 0), (tf, 1)
    u = [F.reduce([a, b] * i + [a, c, a]) for i in range(1, m + 1)]
    return u, {"a": list(a), "b": list(b), "c": list(c)}


def _mfp_words(F: FreeProduct, m: int):
    M, N = F.factors
    mf, nf = 0, 1
    if N.order < 3:
        if M.order < 3:
            raise ContextMismatch("one factor has at least three elements")
        mf, nf = 1, 0
    Mx, Nx = F.factors[mf], F.factors[nf]
    if Mx.order < 2:
        raise ContextMismatch("both factors are non-trivial")
    As = [x for x in Mx.elements if x != Mx.identity]
    Bs = [x for x in Nx.elements if x != Nx.identity]
    for a in As:
        for b, c in itertools.permutations(Bs, 2):
            if not (F.is_unit(mf, a) and F.is_unit(nf, b) and F.is_unit(nf, c)):
                A, B, C = (mf, a), (nf, b), (nf, c)
                u = [F.reduce([B, A] * i + [C, A, B, A, C]) for i in range(1, m + 1)]
                return u, {"a": list(A), "b": list(B), "c": list(C)}
    raise ContextMismatch("at least one of a, b, c is not a unit", "every candidate is a unit")


def witness_incomparable_ideals(F: Optional[FreeProduct], family: str, m: int, k: int) -> IdealWitnessReport:
    """Check u_i is not in u_j U^1 for all i != j <= m.

    In a free product, len(x y) >= len(x) + len(y) - 2t - 1 where t counts the
    trailing unit factors of x (zero in a semigroup free product), so only
    multipliers of length <= len(u_i) - len(u_j) + 2t + 1 can reach u_i.  If
    that radius exceeds k the check raises :class:`BoundTooSmall`.
    """
    if family not in ("sfp", "mfp"):
        raise BadSpec(f"family must be 'sfp' or 'mfp', got {family!r}")
    if F is None:
        F = sfp_default() if family == "sfp" else mfp_default()
    if not isinstance(F, FreeProduct) or F.is_monoid != (family == "mfp"):
        kind = "monoid" if family == "mfp" else "semigroup"
        raise ContextMismatch(f"a {kind} free product is required")
    if m < 1:
        raise InputError("m must be at least 1")
    u, choices = (_sfp_words if family == "sfp" else _mfp_words)(F, m)
    radius = {}
    for i, j in itertools.permutations(range(m), 2):
        radius[(i, j)] = max(0, len(u[i]) - len(u[j]) + 2 * _trailing_units(F, u[j]) + 1)
    short = [(i + 1, j + 1) for (i, j), r in radius.items() if r > k]
    if short:
        raise BoundTooSmall(f"ball radius {k} too small to decide {short}", short)
    need = max(radius.values(), default=0)
    words = F.ball(need) if need else ([F.identity] if F.is_monoid else [])
    checks, refuted = [], True
    for (i, j), r in radius.items():
        mults = [None] + [w for w in words if F.length(w) <= r and w != F.identity]
        hit = any(F.mul1(u[j], w) == u[i] for w in mults)
        refuted &= not hit
        checks.append((i + 1, j + 1, r, len(mults)))
    return IdealWitnessReport(family, F.name, m, k, choices, [F.format(w) for w in u], checks, refuted)


# ---------------------------------------------------------------------------
# classification of alternating words


@dataclass(frozen=True)
class Classification:
    kind: str  # "power", "atom", "identity", "U4", "residual"
    i: Optional[int] = None
    n: Optional[int] = None
    atom: Optional[str] = None

    def __str__(self):
        if self.kind == "power":
            return f"({self.i}, {self.n})"
        if self.kind == "atom":
            return f"Atom({self.atom})"
        if self.kind == "U4":
            return f"U4({self.i})"
        return self.kind.capitalize()


def classify_alternating(F: NormalFormSemigroup, w: str) -> Classification:
    """IdempotentPair: w = a_i^n with a_1 = ef, a_2 = fe, a_3 = efe, a_4 = fef, or an atom.
    FlipIdem: w = u_i^n with u_1 = ab, u_2 = ba, u_3 = bab, the identity, u_1^i a, or residual."""
    if isinstance(F, IdempotentPair):
        if len(w) == 1:
            return Classification("atom", atom=w)
        first, last, L = w[0], w[-1], len(w)
        if first == "e" and last == "f":
            return Classification("power", 1, L // 2)
        if first == "f" and last == "e":
            return Classification("power", 2, L // 2)
        if first == "e":
            return Classification("power", 3, (L - 1) // 2)
        return Classification("power", 4, (L - 1) // 2)
    if isinstance(F, FlipIdem):
        if w == "":
            return Classification("identity")
        L = len(w)
        if L == 1:
            return Classification("residual")
        first, last = w[0], w[-1]
        if first == "a" and last == "b":
            return Classification("power", 1, L // 2)
        if first == "b" and last == "a":
            return Classification("power", 2, L // 2)
        if first == "b":
            return Classification("power", 3, (L - 1) // 2)
        return Classification("U4", i=(L - 1) // 2)
    raise BadSpec("classification is defined for IdempotentPair and FlipIdem only")


def classification_word(F: NormalFormSemigroup, c: Classification) -> str:
    """Inverse of :func:`classify_alternating` (for round-trip checks)."""
    if isinstance(F, IdempotentPair):
        if c.kind == "atom":
            return c.atom
        base = {1: "ef", 2: "fe", 3: "efe", 4: "fef"}[c.i]
        return F.power(base, c.n)
    if isinstance(F, FlipIdem):
        if c.kind == "identity":
            return ""
        if c.kind == "U4":
            return F.mul(F.power("ab", c.i), "a")
        if c.kind == "power":
            return F.power({1: "ab", 2: "ba", 3: "bab"}[c.i], c.n)
    raise InputError(f"no word for {c}")


# ---------------------------------------------------------------------------
# isomorphism check on a ball


def isomorphic_on_ball(F: NormalFormSemigroup, G: NormalFormSemigroup, letter_map: dict, k: int) -> dict:
    """Extend a letter bijection to words and check it is a bijection ball(k) -> ball(k)
    respecting products whose factors lie in ball(k // 2)."""
    def image(w):
        if F.is_monoid and w == F.identity:
            return G.identity
        out = None
        for a in _letters_of(F, w):
            img = letter_map[a]
            out = img if out is None else G.mul(out, img)
        return out

    BF, BG = F.ball(k), G.ball(k)
    img = {w: image(w) for w in BF}
    bijective = len(set(img.values())) == len(BF) and set(img.values()) == set(BG)
    half = [w for w in BF if F.length(w) <= k // 2]
    bad = None
    for x in half:
        for y in half:
            if img[F.mul(x, y)] != G.mul(img[x], img[y]):
                bad = (F.format(x), F.format(y))
                break
        if bad:
            break
    return {"bijective": bijective, "homomorphic": bad is None, "witness": bad,
            "size": len(BF), "checked_products": len(half) ** 2}


def _letters_of(F, w):
    if isinstance(F, FreeProduct):
        return [(l,) for l in w]
    if isinstance(F, _Alternating):
        return list(w)
    if isinstance(F, FreeCommutative):
        return [F.letters[i] for i, e in enumerate(w) for _ in range(e)]
    raise BadSpec(f"no letter decomposition for {F.name}")
