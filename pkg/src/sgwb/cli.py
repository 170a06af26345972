"""Command-line front end (``sgwb``).

Exit codes: 0 success, 1 verification failure, 2 input error.
A semigroup argument is either a table JSON file or a construction
expression such as ``B(Z2,2)``.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from .congruence import RightCongruence, consequence, enumerate_right_congruences, rc_closure
from .errors import InputError, SgwbError, VerificationFailed
from .expr import construct, load_diagram
from .fp import (
    bounded_rc_closure,
    build_family,
    classify_alternating,
    witness_incomparable_ideals,
    witness_indecomposables,
)
from .green import green_partitions, schutzenberger_group
from .semigroup import FiniteSemigroup, from_json, induced, load_table
from .transfer import KINDS, build_transfer, target_semigroup

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def load_semigroup(arg: str, base=None) -> FiniteSemigroup:
    p = Path(arg)
    if p.suffix == ".json" or p.is_file():
        return load_table(p)
    return construct(arg, base).semigroup


def _json_arg(text: str):
    """Inline JSON, or the contents of a JSON file."""
    p = Path(text)
    try:
        if p.is_file():
            return json.loads(p.read_text())
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON argument {text!r}: {exc}") from None


def _index_list(text: str) -> list:
    t = text.strip()
    if t.startswith("["):
        return [int(x) for x in _json_arg(t)]
    return [int(x) for x in t.replace(" ", "").split(",") if x]


# ---------------------------------------------------------------------------
# transfer context bundles


def _sgp_value(obj, base):
    if isinstance(obj, str):
        return load_semigroup(obj, base)
    return from_json(obj)


def load_context(bundle: dict, kind: str, base=None) -> dict:
    """Flatten a context bundle into the keyword context of ``build_transfer``.

    Sections: ``semigroups`` (table objects or expressions), ``subsets``,
    ``pairs``, ``maps``, ``params``, ``actions`` ({"table": ...}), ``acts``,
    ``diagrams`` and ``congruences`` ({"on": name or "target", "within":
    subset, "classes" or "pairs"}).  Congruences are resolved last.
    """
    if not isinstance(bundle, dict):
        raise InputError("context bundle must be a JSON object")
    ctx = {}
    for name, obj in bundle.get("semigroups", {}).items():
        ctx[name] = _sgp_value(obj, base)
    for section in ("subsets", "maps", "params"):
        ctx.update(bundle.get(section, {}))
    for name, obj in bundle.get("pairs", {}).items():
        ctx[name] = [tuple(int(v) for v in p) for p in obj]
    for section in ("actions", "acts"):
        for name, obj in bundle.get(section, {}).items():
            ctx[name] = obj["table"] if isinstance(obj, dict) else obj
    for name, obj in bundle.get("diagrams", {}).items():
        d, adj = load_diagram(obj, base)
        ctx[name] = d
        ctx.setdefault("adjoin_identities", adj)
    for name, obj in bundle.get("congruences", {}).items():
        on = obj.get("on", "target")
        owner = target_semigroup(kind, ctx) if on == "target" else ctx[on]
        within = obj.get("within")
        if within is not None:
            elems = ctx[within] if isinstance(within, str) else within
            owner = induced(owner, elems).semigroup
        if "classes" in obj:
            ctx[name] = RightCongruence.from_classes(owner, obj["classes"])
        elif "pairs" in obj:
            ctx[name] = rc_closure(owner, obj["pairs"])
        else:
            raise InputError(f"congruence {name!r} needs 'classes' or 'pairs'")
    return ctx


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, payload, text rendering or None)


def cmd_validate(a):
    S = load_semigroup(a.sgp)
    info = {"order": S.order, "identity": S.identity, "zero": S.zero, "commutative": S.is_commutative,
            "band": S.is_band, "group": S.is_group, "valid": True}
    return EXIT_OK, info, "\n".join(f"{k}: {v}" for k, v in info.items())


def cmd_construct(a):
    con = construct(a.expr)
    out = con.semigroup.to_json()
    return EXIT_OK, out, json.dumps(out)


def cmd_closure(a):
    S = load_semigroup(a.sgp)
    X = [tuple(int(v) for v in p) for p in _json_arg(a.pairs)]
    rho = rc_closure(S, X)
    out = rho.to_json()
    if a.certificates:
        out["certificates"] = [{"pair": list(p), **consequence(S, X, p).certificate.to_json()}
                               for p in rho.spanning_pairs()]
    text = "\n".join(" ".join(map(str, c)) for c in rho.classes())
    return EXIT_OK, out, text


def cmd_lattice(a):
    S = load_semigroup(a.sgp)
    lat = enumerate_right_congruences(S)
    if a.dot or a.format == "dot":
        return EXIT_OK, None, lat.to_dot()
    out = lat.to_json()
    text = f"{len(lat)} right congruences\n" + "\n".join(
        " | ".join(" ".join(map(str, c)) for c in r.classes()) for r in lat)
    return EXIT_OK, out, text


def cmd_green(a):
    S = load_semigroup(a.sgp)
    gp = green_partitions(S)
    out = {k: [list(c) for c in gp.classes(k)] for k in ("R", "L", "H")}
    out["group_h_classes"] = [list(h) for h in gp.group_h_classes()]
    text = "\n".join(f"{k}: " + "  ".join("{" + ",".join(map(str, c)) + "}" for c in v)
                     for k, v in out.items())
    return EXIT_OK, out, text


def cmd_schutz(a):
    S = load_semigroup(a.sgp)
    H = _index_list(a.hclass)
    g = schutzenberger_group(S, H, side=a.side)
    out = {"H": list(g.H), "side": g.side, "order": g.order, "stabiliser": list(g.stabiliser.members),
           "table": g.group.table, "regular": g.acts_regularly_on_H()}
    text = f"order {g.order}, regular action on H: {out['regular']}"
    return EXIT_OK, out, text


def cmd_transfer(a):
    if a.kind not in KINDS:
        raise InputError(f"unknown kind {a.kind!r}; choose from {', '.join(KINDS)}")
    path = Path(a.context)
    bundle = _json_arg(a.context)
    base = path.parent if path.is_file() else None
    ctx = load_context(bundle, a.kind, base)
    recipe = build_transfer(a.kind, ctx, raise_on_failure=False)
    out = recipe.to_json()
    text = f"{a.kind}: verified={recipe.verified} result={out['result']}"
    return (EXIT_OK if recipe.verified else EXIT_FAIL), out, text


FP_OPS = ("ball", "mul", "classify", "closure", "indecomposables", "incomparable-ideals")


def cmd_fp(a):
    bound = a.bound
    if a.op == "indecomposables":
        rep = witness_indecomposables(bound or 6)
        return EXIT_OK, rep.to_json(), ", ".join(rep.elements)
    if a.op == "incomparable-ideals":
        fam = a.family if a.family in ("sfp", "mfp") else None
        F = None if fam else build_family(a.family)
        fam = fam or ("mfp" if F.is_monoid else "sfp")
        rep = witness_incomparable_ideals(F, fam, a.m, bound or 16)
        return (EXIT_OK if rep.refuted else EXIT_FAIL), rep.to_json(), f"refuted={rep.refuted}"
    F = build_family(a.family)
    if a.op == "ball":
        words = [F.format(w) for w in F.ball(bound if bound is not None else 4)]
        return EXIT_OK, {"family": F.name, "words": words}, "\n".join(words)
    if a.op == "mul":
        if not a.word or len(a.word) < 2:
            raise InputError("mul needs at least two --word arguments")
        w = F.prod(*(F.parse(x) for x in a.word))
        return EXIT_OK, {"product": F.format(w)}, F.format(w)
    if a.op == "classify":
        if not a.word:
            raise InputError("classify needs --word")
        cls = [str(classify_alternating(F, F.parse(x))) for x in a.word]
        return EXIT_OK, {"classification": cls}, "\n".join(cls)
    if a.op == "closure":
        raw = _json_arg(a.pairs) if a.pairs else []
        X = [(F.parse(x), F.parse(y)) for x, y in raw]
        pc = bounded_rc_closure(F, X, bound if bound is not None else 6)
        out = pc.to_json()
        if a.query:
            x, y = (F.parse(v) for v in a.query)
            st = pc.status(x, y)
            out["query"] = {"pair": a.query, "status": "Proven" if st else "Unknown"}
            if st:
                out["query"]["certificate"] = [
                    {"pair": e.pair, "dir": e.dir, "mul": None if e.mul is None else F.format(e.mul)}
                    for e in st.certificate.steps]
        return EXIT_OK, out, json.dumps(out)
    raise InputError(f"unknown fp operation {a.op!r}")


def cmd_verify(a):
    from .suite import run_suite

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        results = run_suite(a.filter)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    lines = [f"{'PASS' if r.passed and r.in_time else 'FAIL'} {r.name} ({r.seconds:.2f}s / {r.time_bound:.0f}s) "
             f"{r.detail}" for r in results]
    ok = all(r.passed and r.in_time for r in results)
    out = {"pass": ok, "checks": [r.to_json() for r in results]}
    return (EXIT_OK if ok else EXIT_FAIL), out, "\n".join(lines) if lines else "no checks selected"


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sgwb", description="Right congruences on finite semigroups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the output to this file")
    common.add_argument("--format", choices=("json", "dot", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a table file or expression")
    s.add_argument("sgp")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("construct", parents=[common], help="build a semigroup from an expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("closure", parents=[common], help="right congruence generated by pairs")
    s.add_argument("sgp")
    s.add_argument("pairs", help='JSON list of pairs, e.g. "[[0,2]]", or a file')
    s.add_argument("--certificates", action="store_true", help="attach an X-sequence per spanning pair")
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("lattice", parents=[common], help="all right congruences (order <= bound)")
    s.add_argument("sgp")
    s.add_argument("--dot", action="store_true", help="emit the Hasse diagram as DOT")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("green", parents=[common], help="R, L and H classes")
    s.add_argument("sgp")
    s.set_defaults(func=cmd_green)

    s = sub.add_parser("schutz", parents=[common], help="Schutzenberger group of an H-class")
    s.add_argument("sgp")
    s.add_argument("hclass", help='comma-separated indices or a JSON list')
    s.add_argument("--side", choices=("right", "left"), default="right")
    s.set_defaults(func=cmd_schutz)

    s = sub.add_parser("transfer", parents=[common], help="run a generating-set transfer recipe")
    s.add_argument("kind", help=f"one of: {', '.join(KINDS)}")
    s.add_argument("context", help="context bundle JSON file (or inline JSON)")
    s.set_defaults(func=cmd_transfer)

    s = sub.add_parser("fp", parents=[common], help="bounded computations in infinite families")
    s.add_argument("family", help='e.g. FlipIdem, IdempotentPair, "FreeCommutative(2)", sfp, mfp')
    s.add_argument("op", choices=FP_OPS)
    s.add_argument("--bound", type=int, default=None, help="ball radius")
    s.add_argument("--word", action="append", help="a word (repeatable)")
    s.add_argument("--pairs", help="JSON list of word pairs for closure")
    s.add_argument("--query", nargs=2, metavar=("U", "V"), help="pair to decide after closure")
    s.add_argument("--m", type=int, default=3, help="number of ideal generators")
    s.set_defaults(func=cmd_fp)

    s = sub.add_parser("verify-paper", aliases=["verify"], parents=[common], help="run the registered checks")
    s.add_argument("--filter", default=None, help="substring of check names to run")
    s.set_defaults(func=cmd_verify)
    return p


def _emit(payload, text, fmt, out):
    if fmt == "text" or (fmt == "dot" and payload is None) or payload is None:
        body = text if text is not None else json.dumps(payload, indent=2)
    else:
        body = json.dumps(payload, indent=2)
    if out:
        Path(out).write_text(body + "\n")
    else:
        print(body)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload, text = args.func(args)
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SgwbError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(payload, text, args.format, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
