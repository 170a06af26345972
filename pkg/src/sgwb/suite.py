"""Registered end-to-end checks, run in registration order by ``sgwb verify``.

Every check returns a :class:`CheckResult`; failures are entries in the
report, never exceptions.  The certificate audit re-executes every Proven
consequence recorded during the run with its own table lookups.
"""

from __future__ import annotations

import itertools
import random
import time
import traceback
import warnings
from dataclasses import dataclass, field
from typing import Callable

from . import congruence as _cong
from .congruence import (
    consequence,
    enumerate_right_congruences,
    oracle_closure,
    rc_closure,
)
from .constructions import (
    SemigroupAction,
    act_extension,
    brandt,
    direct_product,
    semidirect_product,
    wreath_product,
)
from .corpus import (
    group_h_classes_of_corpus,
    random_act,
    random_pairs,
    random_tables,
    sample_contexts,
    small_semigroups,
)
from .fp import (
    FlipIdem,
    IdempotentPair,
    MonoidFreeProduct,
    WordCertificate,
    bounded_rc_closure,
    classify_alternating,
    isomorphic_on_ball,
    witness_incomparable_ideals,
    witness_indecomposables,
)
from .green import (
    green_partitions,
    group_congruence_correspondence,
    schutzenberger_group,
    subgroups_of,
    verify_lattice_embedding,
)
from .semigroup import (
    cyclic_group,
    is_ideal,
    klein_four,
    right_zero,
    symmetric_group,
    two_element_semilattice_monoid,
)
from .transfer import KINDS, build_transfer


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    time_bound: float = 0.0
    witnesses: list = field(default_factory=list)

    @property
    def in_time(self) -> bool:
        return self.seconds <= self.time_bound

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed and self.in_time, "detail": self.detail,
                "seconds": round(self.seconds, 3), "time_bound": self.time_bound,
                "witnesses": self.witnesses}


@dataclass
class Check:
    name: str
    func: Callable
    time_bound: float
    description: str


REGISTRY: list = []


def register(name: str, time_bound: float, description: str):
    def deco(func):
        REGISTRY.append(Check(name, func, time_bound, description))
        return func
    return deco


# ---------------------------------------------------------------------------


@register("closure-oracle", 60.0, "rc_closure equals the meet of all containing right congruences")
def check_closure_oracle(seed: int = 0):
    rng = random.Random(seed)
    tables = small_semigroups(3) + random_tables(4, 30, seed)
    bad, cases = [], 0
    for S in tables:
        lattice = enumerate_right_congruences(S)
        for _ in range(20):
            X = random_pairs(S, rng, 4)
            cases += 1
            if rc_closure(S, X) != oracle_closure(S, X, lattice):
                bad.append({"table": S.table, "X": X})
    return not bad, f"{len(tables)} tables, {cases} pair sets", bad[:3]


GROUP_COUNTS = [("Z2", cyclic_group(2), 2), ("Z6", cyclic_group(6), 4), ("V4", klein_four(), 5),
                ("S3", symmetric_group(3), 6)]


@register("group-correspondence", 5.0, "right congruences of a group match its subgroups")
def check_group_correspondence():
    bad, parts = [], []
    for name, G, expected in GROUP_COUNTS:
        congs = list(enumerate_right_congruences(G))
        subs = subgroups_of(G)
        ok = len(congs) == len(subs) == expected
        for H in subs:
            ok &= group_congruence_correspondence(G, group_congruence_correspondence(G, H)) == H
        for rho in congs:
            ok &= group_congruence_correspondence(G, group_congruence_correspondence(G, rho)) == rho
        parts.append(f"{name}:{len(congs)}/{len(subs)}")
        if not ok:
            bad.append(name)
    return not bad, " ".join(parts), bad


@register("right-zero-bell", 5.0, "RZn has Bell(n) right congruences")
def check_right_zero_bell():
    counts = {n: len(enumerate_right_congruences(right_zero(n))) for n in (2, 3, 4)}
    ok = counts == {2: 2, 3: 5, 4: 15}
    return ok, " ".join(f"RZ{n}:{c}" for n, c in counts.items()), [] if ok else [counts]


@register("schutzenberger", 5.0, "Schutzenberger groups of group H-classes are isomorphic to H")
def check_schutzenberger():
    bad, n = [], 0
    for S, H in group_h_classes_of_corpus():
        n += 1
        g = schutzenberger_group(S, H)
        if g.order != len(H) or not g.acts_regularly_on_H():
            bad.append({"table": S.table, "H": list(H)})
    B = brandt(cyclic_group(2), 2).semigroup
    gp = green_partitions(B)
    non_group = [H for H in gp.classes("H") if not gp.is_group_h_class(H) and B.zero not in H]
    orders = sorted({schutzenberger_group(B, H).order for H in non_group})
    ok = not bad and orders == [2]
    return ok, f"{n} group H-classes; non-group H-classes of B(Z2,2) give orders {orders}", bad[:3]


@register("lattice-embedding", 30.0, "subgroups of the Schutzenberger group embed in the right congruences")
def check_lattice_embedding():
    bad, n = [], 0
    for G in (cyclic_group(2), cyclic_group(4), klein_four()):
        B = brandt(G, 2).semigroup
        for H in green_partitions(B).classes("H"):
            if B.zero in H:
                continue
            n += 1
            rep = verify_lattice_embedding(B, H)
            if not rep.passed:
                bad.append({"semigroup": B.name, "H": list(H),
                            "failures": [e for e in rep.entries if not e["pass"]][:2]})
    return not bad, f"{n} H-classes across B(Z2,2), B(Z4,2), B(V4,2)", bad


@register("transfer-soundness", 180.0, "every transfer recipe verifies on 50 random contexts")
def check_transfer_soundness(per_kind: int = 50, seed: int = 0):
    bad, parts = [], []
    for kind in KINDS:
        ok = 0
        for i, ctx in enumerate(sample_contexts(kind, per_kind, seed)):
            try:
                r = build_transfer(kind, ctx, raise_on_failure=False)
            except Exception as exc:  # a crash on a valid context is a failure too
                bad.append({"kind": kind, "context": i, "error": repr(exc)})
                continue
            if r.verified:
                ok += 1
            else:
                bad.append({"kind": kind, "context": i, "separating_pair": r.separating_pair})
        parts.append(f"{kind}:{ok}/{per_kind}")
    return not bad, "; ".join(parts), bad[:5]


def dpex_instance(n: int):
    """Z_n x RZ2 with X = {((s, a), (s, b)) : s in Z_n}."""
    P = direct_product(cyclic_group(n), right_zero(2))
    X = [(P.index((s, 0)), P.index((s, 1))) for s in range(n)]
    return P, X


@register("dpex", 5.0, "the slice pairs in Zn x RZ2 form a minimal generating set")
def check_dpex():
    bad, parts = [], []
    for n in (2, 3, 4):
        P, X = dpex_instance(n)
        S = P.semigroup
        rho = rc_closure(S, X)
        ok = all(consequence(S, X, p) for p in rho.pairs())
        for p in X:
            rest = [q for q in X if q != p]
            ok &= not consequence(S, rest, p)
        parts.append(f"Z{n}xRZ2: {rho.num_classes} classes, {len(X)} pairs")
        if not ok:
            bad.append(n)
    return not bad, "; ".join(parts), bad


@register("fp-witnesses", 60.0, "bounded witnesses in the free-product families")
def check_fp_witnesses():
    notes, bad = [], []
    rep = witness_indecomposables(6)
    want = ["a"] + ["a b" if i == 1 else f"a b^{i}" for i in range(1, 6)]
    if rep.elements != want:
        bad.append({"indecomposables": rep.elements})
    notes.append(f"indecomposables(6)={rep.count}")
    F = IdempotentPair()
    atoms = []
    for w in F.ball(12):
        c = classify_alternating(F, w)
        if c.kind == "atom":
            atoms.append(w)
        elif c.kind != "power":
            bad.append({"unclassified": w})
    if sorted(atoms) != ["e", "f"]:
        bad.append({"atoms": atoms})
    notes.append(f"atoms={atoms}")
    for fam, k in (("sfp", 16), ("mfp", 12)):
        r = witness_incomparable_ideals(None, fam, 3, k)
        if not r.refuted:
            bad.append({fam: r.to_json()})
        notes.append(f"{fam}: {len(r.checks)} pairs refuted={r.refuted}")
    G = FlipIdem()
    iso = isomorphic_on_ball(MonoidFreeProduct(cyclic_group(2), two_element_semilattice_monoid()), G,
                             {((0, 1),): "a", ((1, 0),): "b"}, 6)
    if not (iso["bijective"] and iso["homomorphic"]):
        bad.append({"isomorphism": iso})
    u1 = "ab"
    X = [(G.power(u1, 2), G.mul(u1, "a"))]
    pc = bounded_rc_closure(G, X, 8)
    # the two right multiplications: by b gives (u1^2, u1^2), by u1 gives (u1^3, u1)
    by_b = (G.mul(X[0][0], "b"), G.mul(X[0][1], "b"))
    by_u1 = (G.mul(X[0][0], u1), G.mul(X[0][1], u1))
    st = pc.status(G.power(u1, 3), u1)
    if not st or by_u1 != (G.power(u1, 3), u1) or by_b[0] != by_b[1]:
        bad.append({"mfp derivation": str(st)})
    notes.append(f"(u1^3,u1) {'Proven' if st else 'Unknown'} in ball(8)")
    return not bad, "; ".join(notes), bad


@register("certificate-audit", 10.0, "every Proven consequence replays against X and the table")
def check_certificate_audit(log=None, seed: int = 0):
    """Replay recorded certificates; also generates fresh ones so it is never vacuous."""
    rng = random.Random(seed)
    fresh = []
    prev = _cong.RECORDER["log"]
    _cong.RECORDER["log"] = fresh
    try:
        for S in small_semigroups(3)[::4] + random_tables(4, 10, seed + 1):
            X = random_pairs(S, rng, 3)
            pre = _cong._preimages(S)
            for p in rc_closure(S, X).pairs():
                consequence(S, X, p, pre)
    finally:
        _cong.RECORDER["log"] = prev
    entries = list(log or []) + fresh
    bad = 0
    for owner, X, cert in entries:
        if not _independent_replay(owner, X, cert):
            bad += 1
    return bad == 0, f"{len(entries) - bad}/{len(entries)} certificates replayed", []


def _independent_replay(owner, X, cert) -> bool:
    if isinstance(cert, WordCertificate):
        cur = cert.start
        for st in cert.steps:
            x, y = X[st.pair] if st.dir == "f" else X[st.pair][::-1]
            if (x if st.mul is None else owner.mul(x, st.mul)) != cur:
                return False
            cur = y if st.mul is None else owner.mul(y, st.mul)
        return cur == cert.end
    table = owner.table
    cur = cert.start
    for st in cert.steps:
        x, y = X[st.pair]
        if st.dir == "b":
            x, y = y, x
        elif st.dir != "f":
            return False
        xs = x if st.mul is None else table[x][st.mul]
        if xs != cur:
            return False
        cur = y if st.mul is None else table[y][st.mul]
    return cur == cert.end


@register("construction-conformance", 10.0, "sizes and multiplication rules of the constructions")
def check_construction_conformance():
    bad = []
    for G in (cyclic_group(2), cyclic_group(3), klein_four()):
        for k in (1, 2, 3):
            B = brandt(G, k)
            if B.order != k * k * G.order + 1:
                bad.append(("brandt size", G.name, k))
            S, z = B.semigroup, B.semigroup.zero
            for x, y in itertools.product(S.elements, repeat=2):
                kx, ky = B.key(x), B.key(y)
                if x == z or y == z:
                    want = z
                elif kx[2] == ky[0]:
                    want = B.index((kx[0], G.m(kx[1], ky[1]), ky[2]))
                else:
                    want = z
                if S.m(x, y) != want:
                    bad.append(("brandt rule", G.name, k, x, y))
                    break
    M, N = two_element_semilattice_monoid(), cyclic_group(2)
    for M_, N_ in ((M, N), (N, M), (cyclic_group(3), N)):
        W = wreath_product(M_, N_)
        if W.order != M_.order ** N_.order * N_.order:
            bad.append(("wreath size", M_.name, N_.name))
        ident = W.index((tuple([M_.identity] * N_.order), N_.identity))
        if W.semigroup.identity != ident:
            bad.append(("wreath identity", M_.name, N_.name))
    for S, T in ((cyclic_group(3), right_zero(2)), (M, klein_four())):
        sd = semidirect_product(S, T, SemigroupAction.trivial(T, S)).semigroup
        dp = direct_product(S, T).semigroup
        if sd.table != dp.table:
            bad.append(("semidirect trivial", S.name, T.name))
    rng = random.Random(0)
    for S in (cyclic_group(3), right_zero(2), two_element_semilattice_monoid()):
        A = random_act(S, rng)
        U = act_extension(S, A)
        if not is_ideal(U.semigroup, U.maps["A"]):
            bad.append(("act ideal", S.name))
    return not bad, f"{len(bad)} mismatches", bad[:5]


# ---------------------------------------------------------------------------


def run_suite(filter: str = None, log_certificates: bool = True) -> list:
    """Run the registered checks whose names contain ``filter`` (all when None)."""
    checks = [c for c in REGISTRY if not filter or filter in c.name]
    if filter and not checks:
        warnings.warn(f"no check matches {filter!r}", stacklevel=2)
    log = [] if log_certificates else None
    prev = _cong.RECORDER["log"]
    _cong.RECORDER["log"] = log
    results = []
    try:
        for c in checks:
            t0 = time.perf_counter()
            try:
                if c.name == "certificate-audit":
                    out = c.func(log=list(log or []))
                else:
                    out = c.func()
                passed, detail, wit = out
            except Exception as exc:
                passed, detail, wit = False, f"crashed: {exc!r}", [traceback.format_exc(limit=3)]
            results.append(CheckResult(c.name, bool(passed), detail, time.perf_counter() - t0,
                                       c.time_bound, _jsonable(wit)))
    finally:
        _cong.RECORDER["log"] = prev
    return results


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)
