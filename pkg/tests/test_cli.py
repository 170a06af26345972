from __future__ import annotations

import json
from pathlib import Path

import pytest

from sgwb.cli import main
from sgwb.semigroup import cyclic_group, dump_table

CONTEXTS = Path(__file__).resolve().parent.parent / "contexts"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_file_and_expression(capsys, tmp_path):
    dump_table(cyclic_group(3), tmp_path / "z3.json")
    code, out, _ = run(capsys, "validate", str(tmp_path / "z3.json"))
    assert code == 0 and json.loads(out)["group"] is True
    code, out, _ = run(capsys, "validate", "RZ3", "--format", "text")
    assert code == 0 and "band: True" in out


def test_invalid_table_exit_code(capsys, tmp_path):
    (tmp_path / "bad.json").write_text(json.dumps({"order": 2, "mul": [[0, 0], [1, 0]]}))
    code, _, err = run(capsys, "validate", str(tmp_path / "bad.json"))
    assert code == 2 and "associative" in err.lower()
    code, _, _ = run(capsys, "validate", str(tmp_path / "missing.json"))
    assert code == 2


def test_construct_and_syntax_error(capsys):
    code, out, _ = run(capsys, "construct", "B(Z2,2)")
    assert code == 0 and json.loads(out)["order"] == 9
    code, _, err = run(capsys, "construct", "DP(Z3,")
    assert code == 2 and "col 7" in err


def test_closure_with_certificates(capsys):
    code, out, _ = run(capsys, "closure", "DP(Z3,RZ2)", "[[0,1],[2,3],[4,5]]", "--certificates")
    data = json.loads(out)
    assert code == 0 and len(data["classes"]) == 3 and len(data["certificates"]) == 3


def test_lattice_green_schutz(capsys, tmp_path):
    code, out, _ = run(capsys, "lattice", "Z6")
    assert code == 0 and len(json.loads(out)["congruences"]) == 4
    code, out, _ = run(capsys, "lattice", "RZ3", "--dot")
    assert code == 0 and out.startswith("digraph")
    code, out, _ = run(capsys, "green", "B(Z2,2)")
    assert code == 0 and len(json.loads(out)["H"]) == 5
    code, out, _ = run(capsys, "schutz", "B(Z2,2)", "1,3")
    assert code == 0 and json.loads(out)["order"] == 2
    out_file = tmp_path / "g.json"
    code, out, _ = run(capsys, "green", "Z2", "--out", str(out_file))
    assert code == 0 and out == "" and json.loads(out_file.read_text())["R"] == [[0, 1]]


@pytest.mark.parametrize("name, kind", [
    ("quotient.json", "quotient"), ("dp_finite_monoid.json", "dp-finite-monoid"),
    ("restriction_left_ideal.json", "restriction/left-ideal"), ("semilattice.json", "semilattice"),
    ("act_extension.json", "act-extension"),
])
def test_transfer_bundles(capsys, name, kind):
    code, out, _ = run(capsys, "transfer", kind, str(CONTEXTS / name))
    assert code == 0 and json.loads(out)["verified"] is True


def test_transfer_errors(capsys):
    code, _, _ = run(capsys, "transfer", "nonsense", "{}")
    assert code == 2
    bundle = json.dumps({"semigroups": {"S": "Z4", "T": "Z2"}, "maps": {"theta": [0, 1, 1, 0]},
                         "congruences": {"rho": {"on": "T", "classes": [[0], [1]]}}})
    code, _, err = run(capsys, "transfer", "quotient", bundle)
    assert code == 2 and "homomorphism" in err
    bundle = json.dumps({"semigroups": {"S": "N2"}, "acts": {"act": {"table": [[1, 1], [1, 1]]}},
                         "params": {"X": [0]},
                         "congruences": {"rho": {"on": "target", "pairs": [[0, 1], [1, 2], [2, 3]]}}})
    # N2 is not a known leaf, so this is an input error rather than a failure
    code, _, _ = run(capsys, "transfer", "act-extension", bundle)
    assert code == 2


def test_transfer_verification_failure_exit_code(capsys, tmp_path):
    null2 = {"order": 2, "mul": [[0, 0], [0, 0]]}
    bundle = {"semigroups": {"S": null2}, "acts": {"act": {"table": [[1, 1], [1, 1]]}},
              "params": {"X": [0]},
              "congruences": {"rho": {"on": "target", "classes": [[0, 1, 2, 3]]}}}
    p = tmp_path / "ctx.json"
    p.write_text(json.dumps(bundle))
    code, out, _ = run(capsys, "transfer", "act-extension", str(p))
    assert code == 1 and json.loads(out)["verified"] is False


def test_fp_operations(capsys):
    code, out, _ = run(capsys, "fp", "FlipIdem", "ball", "--bound", "2", "--format", "text")
    assert code == 0 and out.split() == ["1", "a", "b", "ab", "ba"]
    code, out, _ = run(capsys, "fp", "IdempotentPair", "mul", "--word", "efe", "--word", "ef")
    assert json.loads(out)["product"] == "efef"
    code, out, _ = run(capsys, "fp", "IdempotentPair", "classify", "--word", "efef", "--word", "e")
    assert json.loads(out)["classification"] == ["(1, 2)", "Atom(e)"]
    code, out, _ = run(capsys, "fp", "FlipIdem", "closure", "--bound", "8", "--pairs", '[["abab","aba"]]',
                       "--query", "ababab", "ab")
    assert json.loads(out)["query"]["status"] == "Proven"
    code, out, _ = run(capsys, "fp", "x", "indecomposables", "--bound", "4")
    assert json.loads(out)["count"] == 4
    code, out, _ = run(capsys, "fp", "sfp", "incomparable-ideals", "--m", "3", "--bound", "16")
    assert code == 0 and json.loads(out)["refuted"] is True
    code, _, _ = run(capsys, "fp", "mfp", "incomparable-ideals", "--bound", "2")
    assert code == 1
    code, _, _ = run(capsys, "fp", "Nope", "ball")
    assert code == 2
    code, _, _ = run(capsys, "fp", "FlipIdem", "mul", "--word", "a")
    assert code == 2


def test_verify_filters(capsys):
    code, out, _ = run(capsys, "verify-paper", "--filter", "dpex", "--format", "text")
    assert code == 0 and out.startswith("PASS dpex") and len(out.strip().splitlines()) == 1
    code, out, err = run(capsys, "verify", "--filter", "no-such-check")
    assert code == 0 and json.loads(out)["checks"] == [] and "warning" in err


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["closure"])
    assert info.value.code == 2
