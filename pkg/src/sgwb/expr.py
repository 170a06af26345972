"""Construction expressions.

Grammar (whitespace-insensitive, case-sensitive)::

    e := Zn | RZn | LZn | T@file | Tn-table@file
       | DP(e,e) | SDP(e,e,act@file) | WR(e,e) | B(e,k) | ZDU(e,e)
       | SSL(diagram@file) | ACT(e,act@file) | REES(e,{i,j,...})
       | ONE(e) | ZERO(e)

``ONE`` and ``ZERO`` adjoin an identity or a zero.  Positions in syntax
errors are 1-based line/column of the original text.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Union

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
    strong_semilattice,
    wreath_product,
    zero_direct_union,
)
from .errors import ExprSyntaxError, InputError, MissingFile, UnknownConstructor
from .semigroup import FiniteSemigroup, adjoin, cyclic_group, from_json, left_zero, load_table, right_zero

# constructor -> argument kinds ("e" expression, "k" integer, "file" tagged path, "set" index set)
SIGNATURES = {
    "DP": ("e", "e"),
    "SDP": ("e", "e", "act"),
    "WR": ("e", "e"),
    "B": ("e", "k"),
    "ZDU": ("e", "e"),
    "SSL": ("diagram",),
    "ACT": ("e", "act"),
    "REES": ("e", "set"),
    "ONE": ("e",),
    "ZERO": ("e",),
}
FAMILIES = ("RZ", "LZ", "Z")


@dataclass(frozen=True)
class Leaf:
    family: str  # "Z", "RZ", "LZ"
    n: int

    def __str__(self):
        return f"{self.family}{self.n}"


@dataclass(frozen=True)
class TableFile:
    path: str
    n: int = None

    def __str__(self):
        return f"T{self.n}-table@{self.path}" if self.n is not None else f"T@{self.path}"


@dataclass(frozen=True)
class FileRef:
    tag: str  # "act" or "diagram"
    path: str

    def __str__(self):
        return f"{self.tag}@{self.path}"


@dataclass(frozen=True)
class Node:
    op: str
    args: tuple

    def __str__(self):
        parts = []
        for a in self.args:
            if isinstance(a, frozenset):
                parts.append("{" + ",".join(str(x) for x in sorted(a)) + "}")
            else:
                parts.append(str(a))
        return f"{self.op}({','.join(parts)})"


Expr = Union[Leaf, TableFile, Node]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def where(self, pos=None):
        pos = self.pos if pos is None else pos
        before = self.text[:pos]
        line = before.count("\n") + 1
        col = pos - (before.rfind("\n") + 1) + 1
        return line, col

    def error(self, msg, pos=None):
        line, col = self.where(pos)
        raise ExprSyntaxError(msg, line, col)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            self.error(f"expected {ch!r}, got {got!r}")
        self.pos += 1

    def word(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] in "_-"):
            self.pos += 1
        return self.text[start:self.pos], start

    def integer(self):
        w, start = self.word()
        if not w.isdigit():
            self.error("expected an integer", start)
        return int(w)

    def path(self):
        self.skip()
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c == "(":
                depth += 1
            elif c == ")":
                if depth == 0:
                    break
                depth -= 1
            elif c == "," and depth == 0:
                break
            self.pos += 1
        p = self.text[start:self.pos].strip()
        if not p:
            self.error("expected a file path", start)
        return p

    def tagged(self, tag):
        w, start = self.word()
        if w != tag:
            self.error(f"expected {tag}@file", start)
        self.expect("@")
        return FileRef(tag, self.path())

    def index_set(self):
        self.expect("{")
        out = []
        if self.peek() == "}":
            self.pos += 1
            return frozenset()
        while True:
            out.append(self.integer())
            if self.peek() == ",":
                self.pos += 1
                continue
            self.expect("}")
            return frozenset(out)

    def expr(self) -> Expr:
        w, start = self.word()
        if not w:
            got = self.peek() or "end of input"
            self.error(f"expected an expression, got {got!r}", start if self.peek() else None)
        if self.peek() == "(" and w in SIGNATURES:
            self.pos += 1
            args = []
            for i, kind in enumerate(SIGNATURES[w]):
                if i:
                    self.expect(",")
                if kind == "e":
                    args.append(self.expr())
                elif kind == "k":
                    args.append(self.integer())
                elif kind == "set":
                    args.append(self.index_set())
                else:
                    args.append(self.tagged(kind))
            self.expect(")")
            return Node(w, tuple(args))
        if w in SIGNATURES:
            self.error(f"expected '(' after {w}")
        if w == "T" or (w.startswith("T") and w.endswith("-table")):
            n = None
            if w != "T":
                digits = w[1:-len("-table")]
                if not digits.isdigit():
                    self.error(f"bad table reference {w!r}", start)
                n = int(digits)
            self.expect("@")
            return TableFile(self.path(), n)
        for fam in FAMILIES:
            if w.startswith(fam) and w[len(fam):].isdigit():
                n = int(w[len(fam):])
                if n < 1:
                    self.error(f"{fam} needs a positive order", start)
                return Leaf(fam, n)
        raise UnknownConstructor(f"unknown constructor {w!r} at col {self.where(start)[1]}")


def parse_expression(text: str) -> Expr:
    p = _Parser(text)
    e = p.expr()
    if p.peek():
        p.error(f"unexpected {p.peek()!r}")
    return e


def print_expression(e: Expr) -> str:
    return str(e)


# ---------------------------------------------------------------------------
# evaluation


def _read_json(path, base):
    full = Path(base) / path if base is not None else Path(path)
    try:
        return json.loads(full.read_text())
    except FileNotFoundError:
        raise MissingFile(str(full)) from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{full}: invalid JSON ({exc})") from None


def _semigroup_from(obj, base) -> FiniteSemigroup:
    """A table object or an expression string."""
    if isinstance(obj, str):
        return evaluate(parse_expression(obj), base).semigroup
    return from_json(obj)


def _plain(S: FiniteSemigroup, kind="table") -> Construction:
    return Construction(S, kind, tuple(S.elements))


def load_diagram(obj, base=None) -> tuple:
    """{"Y": sgp, "parts": [sgp...], "homs": {"a,b": [...]}, "adjoin_identities": bool}."""
    try:
        Y = _semigroup_from(obj["Y"], base)
        parts = [_semigroup_from(p, base) for p in obj["parts"]]
        homs = {}
        for key, val in obj.get("homs", {}).items():
            a, b = (int(x) for x in str(key).split(","))
            homs[(a, b)] = tuple(int(v) for v in val)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad diagram object: {exc}") from None
    return SemilatticeDiagram(Y, parts, homs), bool(obj.get("adjoin_identities", False))


def evaluate(e: Expr, base=None) -> Construction:
    """Build the semigroup an expression denotes; file paths resolve against ``base``."""
    if isinstance(e, Leaf):
        maker = {"Z": cyclic_group, "RZ": right_zero, "LZ": left_zero}[e.family]
        return _plain(maker(e.n), e.family)
    if isinstance(e, TableFile):
        full = Path(base) / e.path if base is not None else Path(e.path)
        S = load_table(full)
        if e.n is not None and S.order != e.n:
            raise InputError(f"{e.path} has order {S.order}, expression says {e.n}")
        return _plain(S)
    op, args = e.op, e.args
    if op in ("ONE", "ZERO"):
        S = evaluate(args[0], base).semigroup
        return _plain(adjoin(S, "identity" if op == "ONE" else "zero"), "adjoin")
    if op == "B":
        return brandt(evaluate(args[0], base).semigroup, args[1])
    if op == "REES":
        return rees_quotient(evaluate(args[0], base).semigroup, args[1])
    if op == "SSL":
        d, adj = load_diagram(_read_json(args[0].path, base), base)
        return strong_semilattice(d, adj)
    if op == "ACT":
        S = evaluate(args[0], base).semigroup
        obj = _read_json(args[1].path, base)
        table = obj["table"] if isinstance(obj, dict) else obj
        labels = obj.get("labels") if isinstance(obj, dict) else None
        return act_extension(S, RightActData.make(S, table, labels))
    S = evaluate(args[0], base).semigroup
    T = evaluate(args[1], base).semigroup
    if op == "DP":
        return direct_product(S, T)
    if op == "WR":
        return wreath_product(S, T)
    if op == "ZDU":
        return zero_direct_union(S, T)
    if op == "SDP":
        obj = _read_json(args[2].path, base)
        table = obj["table"] if isinstance(obj, dict) else obj
        return semidirect_product(S, T, SemigroupAction.make(T, S, table))
    raise UnknownConstructor(op)  # pragma: no cover - guarded by the parser


def construct(text: str, base=None) -> Construction:
    return evaluate(parse_expression(text), base)
