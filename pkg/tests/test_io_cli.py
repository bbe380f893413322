"""File formats and the command line front end.

CLI tests call main() in-process so exit codes and output are asserted
directly; one subprocess test makes sure the installed console script wires
up to the same entry point. The --json payloads are validated against a
schema to keep the machine interface stable.
"""

import json
import subprocess
import sys

import jsonschema
import numpy as np
import pytest

from qstruct import (
    BooleanSemiring,
    DomainError,
    FinitePoset,
    OrthoLogic,
    ParseError,
    Quasilogic,
    Semilogic,
    StructuralError,
    chain_quasilogic,
    load_algebra,
    load_povm,
    load_structure,
    mo2_logic,
    mo2_semilogic,
    parse_structure,
    powerset_logic,
    powerset_semiring,
    serialize_algebra,
    serialize_povm,
    serialize_structure,
    structures_equal,
    verify_povm,
    Tolerance,
)
from qstruct.cli import main

REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "ok", "reports"],
    "properties": {
        "command": {"type": "string"},
        "ok": {"type": "boolean"},
        "reports": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["subject", "ok", "checks", "facts"],
                "properties": {
                    "subject": {"type": "string"},
                    "ok": {"type": "boolean"},
                    "checks": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["name", "passed", "violation_count", "witnesses"],
                            "properties": {
                                "name": {"type": "string"},
                                "passed": {"type": "boolean"},
                                "violation_count": {"type": "integer"},
                                "witnesses": {"type": "array"},
                            },
                        },
                    },
                    "facts": {"type": "object"},
                },
            },
        },
    },
}

ERROR_SCHEMA = {
    "type": "object",
    "required": ["command", "ok", "error"],
    "properties": {
        "ok": {"const": False},
        "error": {
            "type": "object",
            "required": ["type", "message", "details"],
        },
    },
}


# -- formats --------------------------------------------------------------------


def test_valid_fixtures_parse_to_the_expected_types(valid_dir):
    expected = {
        "poset_n.json": FinitePoset,
        "chain3.json": Quasilogic,
        "chain4.json": Quasilogic,
        "mo2_quasilogic.json": Quasilogic,
        "mo2_semilogic.json": Semilogic,
        "mo2_logic.json": OrthoLogic,
        "o6_logic.json": OrthoLogic,
        "powerset2_semiring.json": BooleanSemiring,
        "powerset3_semiring.json": BooleanSemiring,
        "diamond_semiring.json": BooleanSemiring,
    }
    for name, cls in expected.items():
        obj = load_structure(valid_dir / name)
        assert type(obj) is cls, name


def test_fixtures_match_the_builtin_constructors(valid_dir):
    pairs = [
        ("chain3.json", chain_quasilogic(3)),
        ("chain4.json", chain_quasilogic(4)),
        ("mo2_semilogic.json", mo2_semilogic()),
        ("mo2_logic.json", mo2_logic()),
        ("powerset2_logic.json", powerset_logic(2)),
        ("powerset2_semiring.json", powerset_semiring(2)),
    ]
    for name, built in pairs:
        assert structures_equal(load_structure(valid_dir / name), built), name


def test_structure_roundtrip_is_stable(valid_dir):
    for path in sorted(valid_dir.glob("*.json")):
        data = json.loads(path.read_text())
        if data.get("kind") not in (
            "poset",
            "quasilogic",
            "semilogic",
            "ortho_logic",
            "boolean_semiring",
        ):
            continue
        obj = load_structure(path)
        once = serialize_structure(obj)
        again = serialize_structure(parse_structure(once))
        assert once == again, path.name
        assert structures_equal(obj, parse_structure(once)), path.name


def test_serialized_order_lists_covers_only():
    data = serialize_structure(chain_quasilogic(4))
    assert sorted(data["le"]) == [["0", "a"], ["a", "b"], ["b", "1"]]


def test_parse_rejects_malformed_files(mutants_dir):
    bad = {
        "bad_json.json": ParseError,
        "dangling_label.json": ParseError,
        "le_cycle.json": ParseError,
        "mo2_prod_conflict.json": ParseError,
        "unit_not_greatest.json": ParseError,
        "chain3_diff_off_domain.json": (ParseError, StructuralError),
        "mo2_neg_not_involutive.json": (ParseError, StructuralError),
    }
    for name, exc in bad.items():
        with pytest.raises(exc):
            load_structure(mutants_dir / name)


def test_mutants_that_parse_fail_verification(mutants_dir):
    from qstruct import verify_logic, verify_quasilogic, verify_semilogic

    cases = {
        "chain3_bad_cancellation.json": verify_quasilogic,
        "chain3_diff_missing.json": verify_quasilogic,
        "chain2_two_zeros.json": verify_quasilogic,
        "mo2_prod_not_idempotent.json": verify_semilogic,
        "mo2_prod_order_incoherent.json": verify_semilogic,
        "mo2_neg_fixed_points.json": verify_logic,
        "mo2_neg_wrong_pairing.json": verify_logic,
    }
    for name, verify in cases.items():
        obj = load_structure(mutants_dir / name)
        assert not verify(obj).ok, name


def test_povm_files_roundtrip(valid_dir):
    povm = load_povm(valid_dir / "trine_povm.json")
    assert povm.dim == 2
    assert povm.semiring.n == 8
    assert verify_povm(povm, Tolerance()).ok
    data = serialize_povm(povm)
    assert data["kind"] == "povm"

    inline = load_povm(valid_dir / "pvm2.json")
    by_ref = load_povm(valid_dir / "pvm2_by_reference.json")
    assert inline.semiring.n == by_ref.semiring.n
    for a, b in zip(inline.effects, by_ref.effects):
        assert np.allclose(a, b)


def test_algebra_files_roundtrip(valid_dir):
    alg, state = load_algebra(valid_dir / "m2_algebra.json")
    assert state is not None
    assert alg.space_size == 2
    data = serialize_algebra(alg, state)
    assert data["kind"] == "star_algebra"
    assert "state" in data


# -- command line ----------------------------------------------------------------


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_passes_on_good_structures(capsys, valid_dir):
    code, out, _ = run_cli(capsys, "check", str(valid_dir / "mo2_logic.json"))
    assert code == 0
    assert "ok" in out.splitlines()[-1]
    assert "[pass]" in out and "[FAIL]" not in out
    assert "classification: logic" in out


def test_check_fails_on_the_hexagon(capsys, valid_dir):
    code, out, _ = run_cli(capsys, "check", str(valid_dir / "o6_logic.json"))
    assert code == 1
    assert "[FAIL]" in out
    assert out.splitlines()[-1] == "FAILED"


def test_check_exit_codes_cover_the_error_taxonomy(capsys, valid_dir, mutants_dir):
    matrix = {
        (valid_dir, "powerset1_logic.json"): 0,
        (valid_dir, "powerset2_semiring.json"): 0,
        (valid_dir, "chain4.json"): 0,
        (valid_dir, "poset_n.json"): 0,
        (mutants_dir, "chain3_bad_cancellation.json"): 1,
        (mutants_dir, "chain3_diff_missing.json"): 1,
        (mutants_dir, "chain2_two_zeros.json"): 1,
        (mutants_dir, "mo2_prod_not_idempotent.json"): 1,
        (mutants_dir, "mo2_prod_order_incoherent.json"): 1,
        (mutants_dir, "mo2_neg_fixed_points.json"): 1,
        (mutants_dir, "mo2_neg_wrong_pairing.json"): 1,
        (mutants_dir, "mo2_as_semiring.json"): 1,
        (mutants_dir, "bad_json.json"): 2,
        (mutants_dir, "dangling_label.json"): 2,
        (mutants_dir, "le_cycle.json"): 2,
        (mutants_dir, "mo2_prod_conflict.json"): 2,
        (mutants_dir, "mo2_neg_not_involutive.json"): 2,
        (mutants_dir, "unit_not_greatest.json"): 2,
        (mutants_dir, "chain3_diff_off_domain.json"): 2,
    }
    for (base, name), want in matrix.items():
        code, _, _ = run_cli(capsys, "check", str(base / name))
        assert code == want, name


def test_check_json_payload_validates(capsys, valid_dir):
    code, out, _ = run_cli(capsys, "check", "--json", str(valid_dir / "mo2_logic.json"))
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, REPORT_SCHEMA)
    assert payload["classification"] == "logic"
    top = payload["reports"][0]
    assert top["facts"]["boolean"] is False


def test_error_payload_is_machine_readable(capsys, mutants_dir):
    code, out, _ = run_cli(capsys, "check", "--json", str(mutants_dir / "dangling_label.json"))
    assert code == 2
    payload = json.loads(out)
    jsonschema.validate(payload, ERROR_SCHEMA)
    assert payload["error"]["type"] == "ParseError"


def test_stone_reports_points_and_measure(capsys, valid_dir):
    code, out, _ = run_cli(
        capsys,
        "stone",
        "--json",
        str(valid_dir / "powerset2_semiring.json"),
        "--distribution",
        str(valid_dir / "powerset2_distribution.json"),
    )
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, REPORT_SCHEMA)
    assert len(payload["points"]) == 2
    measure = payload["reports"][-1]["facts"]["measure"]
    assert measure["{}"] == 0.0
    assert sorted(measure.values()) == [0.0, 0.25, 0.75, 1.0]


def test_stone_rejects_non_semirings(capsys, valid_dir):
    code, _, err = run_cli(capsys, "stone", str(valid_dir / "mo2_logic.json"))
    assert code == 1
    assert "boolean semiring" in err


def test_stone_flags_the_disguised_semilogic(capsys, mutants_dir):
    code, _, _ = run_cli(capsys, "stone", str(mutants_dir / "mo2_as_semiring.json"))
    assert code == 1


def test_dilate_reports_dimensions(capsys, valid_dir, tmp_path):
    out_file = tmp_path / "dilation.json"
    code, out, _ = run_cli(
        capsys,
        "dilate",
        "--json",
        str(valid_dir / "trine_povm.json"),
        "--out",
        str(out_file),
    )
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, REPORT_SCHEMA)
    assert payload["reports"][-1]["facts"]["dim_e"] == 3
    written = json.loads(out_file.read_text())
    assert written["dim_e"] == 3


def test_dilate_exit_codes(capsys, mutants_dir):
    code, _, err = run_cli(capsys, "dilate", str(mutants_dir / "subnormalized_povm.json"))
    assert code == 1
    assert "sub-normalized" in err
    code, _, _ = run_cli(capsys, "dilate", str(mutants_dir / "povm_bad_matrix.json"))
    assert code == 2


def test_gns_reports_dimensions(capsys, valid_dir):
    code, out, _ = run_cli(capsys, "gns", "--json", str(valid_dir / "m2_algebra.json"))
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, REPORT_SCHEMA)
    facts = payload["reports"][2]["facts"]
    assert facts["space_dim"] == 2 and facts["kernel_dim"] == 2

    code, out, _ = run_cli(
        capsys, "gns", "--json", str(valid_dir / "m2_algebra_full_rank.json")
    )
    facts = json.loads(out)["reports"][2]["facts"]
    assert facts["space_dim"] == 4 and facts["kernel_dim"] == 0


def test_gns_needs_a_state(capsys, mutants_dir):
    code, _, err = run_cli(capsys, "gns", str(mutants_dir / "algebra_no_state.json"))
    assert code == 1
    assert "no state" in err


def test_property_suite_runs_clean(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run_cli(capsys, "property", "--suite", "order", "--seed", "0")
    assert code == 0
    assert "[pass] order" in out
    assert not (tmp_path / "qstruct-witness.json").exists()


def test_property_json_lists_all_suites(capsys):
    code, out, _ = run_cli(capsys, "property", "--json", "--seed", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    names = [s["suite"] for s in payload["suites"]]
    assert len(names) == 9


def test_tolerance_env_and_flag(capsys, valid_dir, monkeypatch):
    monkeypatch.setenv("QSTRUCT_TOL", "1e-6")
    code, _, _ = run_cli(capsys, "dilate", str(valid_dir / "trine_povm.json"))
    assert code == 0
    monkeypatch.delenv("QSTRUCT_TOL")
    code, _, _ = run_cli(
        capsys, "dilate", "--tol", "1e-10", str(valid_dir / "trine_povm.json")
    )
    assert code == 0


def test_console_script_matches_the_module_entry(valid_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "qstruct.cli", "check", str(valid_dir / "chain3.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "ok"

    script = subprocess.run(
        ["qstruct", "check", str(valid_dir / "chain3.json")],
        capture_output=True,
        text=True,
    )
    assert script.returncode == 0
    assert script.stdout.splitlines()[-1] == "ok"
