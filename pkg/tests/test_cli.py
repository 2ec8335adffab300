"""Command-line behavior: outputs, exit codes, determinism.

Exit-code contract: 0 success, 1 domain failure (no fill, failed check,
budget), 2 usage or syntax problems.
"""

import json
import random

import pytest
from click.testing import CliRunner

from stablecurves.cli import main
from stablecurves.moduli import StableCurve, forget, sample_curve
from stablecurves.trees import MarkedTree, face, star

runner = CliRunner()


def invoke(*args, **kwargs):
    return runner.invoke(main, list(args), **kwargs)


# === trees ===


def test_trees_enumerate_lists_canonical_newick():
    result = invoke("trees", "enumerate", "--n", "3")
    assert result.exit_code == 0
    assert result.output.splitlines() == [
        "((1,2),3)0;",
        "((1,3),2)0;",
        "((2,3),1)0;",
        "(1,2,3)0;",
    ]


def test_trees_enumerate_count_only():
    result = invoke("trees", "enumerate", "--n", "4", "--count-only")
    assert result.exit_code == 0
    assert result.output.strip() == "26"


def test_trees_enumerate_json():
    result = invoke("trees", "enumerate", "--n", "2", "--format", "json")
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["format"] == "tree_list"
    assert len(doc["trees"]) == 1
    assert MarkedTree.from_json_dict(doc["trees"][0]) == star(range(3))


def test_trees_enumerate_respects_budget():
    result = invoke("--budget", "10", "trees", "enumerate", "--n", "8")
    assert result.exit_code == 1
    assert "budget" in result.stderr


def test_trees_face_from_stdin():
    result = invoke("trees", "face", "--i", "1", input="(1,2,3)0;\n")
    assert result.exit_code == 0
    assert result.output.strip() == "(1,2)0;"


def test_trees_face_bad_input_is_usage_error():
    result = invoke("trees", "face", "--i", "0", input="garbage")
    assert result.exit_code == 2
    assert "error:" in result.stderr


def test_trees_fill_roundtrip(tmp_path):
    y = star(range(6))
    doc = {
        "format": "tree_tuple",
        "version": 1,
        "entries": [face(y, i).to_newick() for i in range(6)],
    }
    path = tmp_path / "tuple.json"
    path.write_text(json.dumps(doc))
    result = invoke("trees", "fill", "--input", str(path))
    assert result.exit_code == 0
    assert result.output.strip() == y.to_newick()


def test_trees_fill_accepts_mixed_entry_forms(tmp_path):
    y = star(range(6))
    entries = [face(y, i).to_newick() for i in range(6)]
    entries[2] = face(y, 2).to_json_dict()
    path = tmp_path / "tuple.json"
    path.write_text(json.dumps({"entries": entries}))
    result = invoke("trees", "fill", "--input", str(path))
    assert result.exit_code == 0
    assert result.output.strip() == y.to_newick()


def test_trees_fill_inconsistent_is_domain_error(tmp_path):
    y = star(range(6))
    entries = [face(y, i).to_newick() for i in range(6)]
    entries[0] = "((1,2),3,4)0;"  # wrong shape for the remaining faces
    path = tmp_path / "tuple.json"
    path.write_text(json.dumps({"entries": entries}))
    result = invoke("trees", "fill", "--input", str(path))
    assert result.exit_code == 1
    assert "error:" in result.stderr


def test_trees_fill_malformed_document(tmp_path):
    path = tmp_path / "tuple.json"
    path.write_text("[1, 2, 3]")
    result = invoke("trees", "fill", "--input", str(path))
    assert result.exit_code == 2


def test_missing_input_file_is_usage_error(tmp_path):
    result = invoke("trees", "fill", "--input", str(tmp_path / "absent.json"))
    assert result.exit_code == 2
    assert "error:" in result.stderr


def test_trees_check_reports_totals():
    result = invoke("trees", "check", "--n", "3")
    assert result.exit_code == 0
    assert result.output.strip() == "OK: 4 trees, 24 identity pairs checked"


def test_trees_render_dot_stdout():
    result = invoke("trees", "render", input="(1,2,3)0;")
    assert result.exit_code == 0
    assert result.output.startswith("graph tree {")


def test_trees_render_png(tmp_path):
    out = tmp_path / "tree.png"
    result = invoke("trees", "render", "--output", str(out), input="((2,3),1,4)0;")
    assert result.exit_code == 0
    assert result.output.strip() == str(out)
    assert out.stat().st_size > 500


def test_trees_render_png_needs_output():
    result = invoke("trees", "render", "--format", "png", input="(1,2,3)0;")
    assert result.exit_code == 2


# === moduli ===


def test_moduli_coords_five_marks():
    result = invoke("moduli", "coords", "--points", "0,1,inf,2,3")
    assert result.exit_code == 0
    assert result.output.strip() == "2, 3, -3, 3, 2"


def test_moduli_coords_six_marks_lists_quads():
    result = invoke("moduli", "coords", "--points", "0,1,inf,2,3,1/2")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert len(lines) == 15
    assert lines[0].startswith("0123: ")


def test_moduli_coords_needs_exactly_one_source():
    assert invoke("moduli", "coords").exit_code == 2
    result = invoke(
        "moduli", "coords", "--points", "0,1,inf,2,3", "--input", "x.json"
    )
    assert result.exit_code == 2


def test_moduli_coords_degenerate_points_is_domain_error():
    result = invoke("moduli", "coords", "--points", "0,1,inf,2,2")
    assert result.exit_code == 1


def test_moduli_verify_ok_and_fail():
    assert invoke("moduli", "verify", "--coords", "2,3,-3,3,2").exit_code == 0
    result = invoke("moduli", "verify", "--coords", "7,3,-3,3,2")
    assert result.exit_code == 1
    assert "FAIL" in result.output


def test_moduli_verify_other_mark_counts_unsupported():
    result = invoke("moduli", "verify", "--coords", "2,3,-3,3,2", "--n", "6")
    assert result.exit_code == 1
    assert "system" in result.stderr


def test_moduli_reconstruct_roundtrips_through_coords(tmp_path):
    result = invoke("moduli", "reconstruct", "--coords", "2,3,-3,3,2")
    assert result.exit_code == 0
    curve_doc = tmp_path / "curve.json"
    curve_doc.write_text(result.output)
    back = invoke("moduli", "coords", "--input", str(curve_doc))
    assert back.exit_code == 0
    assert back.output.strip() == "2, 3, -3, 3, 2"


def test_moduli_reconstruct_rejects_bad_vector():
    assert invoke("moduli", "reconstruct", "--coords", "7,3,-3,3,2").exit_code == 1
    assert invoke("moduli", "reconstruct", "--coords", "2,3").exit_code == 2


def test_moduli_fill_roundtrip(tmp_path):
    y = sample_curve(random.Random(12), 6)
    doc = {
        "format": "curve_tuple",
        "version": 1,
        "entries": [forget(y, mu).to_json_dict() for mu in range(6)],
    }
    path = tmp_path / "tuple.json"
    path.write_text(json.dumps(doc))
    result = invoke("moduli", "fill", "--input", str(path))
    assert result.exit_code == 0
    assert StableCurve.from_json_dict(json.loads(result.output)) == y


def test_moduli_sample_is_deterministic():
    one = invoke("--seed", "9", "moduli", "sample", "--n", "6", "--count", "3")
    two = invoke("--seed", "9", "moduli", "sample", "--n", "6", "--count", "3")
    other = invoke("--seed", "10", "moduli", "sample", "--n", "6", "--count", "3")
    assert one.exit_code == 0
    assert one.output == two.output
    assert one.output != other.output
    doc = json.loads(one.output)
    assert doc["format"] == "curve_list"
    assert len(doc["curves"]) == 3


def test_moduli_sample_smooth():
    result = invoke("moduli", "sample", "--n", "7", "--smooth")
    assert result.exit_code == 0
    c = StableCurve.from_json_dict(json.loads(result.output)["curves"][0])
    assert c.is_smooth


# === equations ===


def test_eqs_generate_plain_base():
    result = invoke("eqs", "generate", "--n", "5")
    assert result.exit_code == 0
    assert result.output.splitlines()[0] == (
        "a1*(a4*b5 - a5*b4) - b1*b5*(a4 - b4)"
    )


def test_eqs_generate_reduced_json():
    result = invoke("eqs", "generate", "--n", "6", "--form", "reduced",
                    "--format", "json")
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["form"] == "reduced"
    assert len(doc["equations"]) == 18


def test_eqs_generate_small_n_is_usage_error():
    assert invoke("eqs", "generate", "--n", "4").exit_code == 2


def test_eqs_evaluate_on_curve(tmp_path):
    system_path = tmp_path / "m05.json"
    system_text = invoke("eqs", "generate", "--n", "5", "--format", "json").output
    system_path.write_text(system_text)
    result = invoke(
        "eqs", "evaluate", "--system", str(system_path), "--point", "0,1,inf,2,3"
    )
    assert result.exit_code == 0
    assert result.output.strip() == "all residuals zero"


def test_eqs_evaluate_flags_wrong_system(tmp_path):
    # A hand-edited system with a misassigned operand must show nonzero
    # residuals on genuine curve data.
    doc = json.loads(invoke("eqs", "generate", "--n", "5", "--format", "json").output)
    doc["equations"][0]["operands"][0] = 1
    system_path = tmp_path / "broken.json"
    system_path.write_text(json.dumps(doc))
    result = invoke(
        "eqs", "evaluate", "--system", str(system_path), "--point", "0,1,inf,2,3"
    )
    assert result.exit_code == 1
    assert "residuals nonzero" in result.output


def test_eqs_evaluate_mark_count_mismatch(tmp_path):
    system_path = tmp_path / "m05.json"
    system_path.write_text(
        invoke("eqs", "generate", "--n", "5", "--format", "json").output
    )
    result = invoke(
        "eqs", "evaluate", "--system", str(system_path), "--point", "0,1,inf,2,3,4"
    )
    assert result.exit_code == 2


# === report ===


def test_report_writes_all_files(tmp_path):
    out = tmp_path / "report"
    result = invoke("report", "--n", "4", "--samples", "2", "--output", str(out))
    assert result.exit_code == 0
    listed = [line.strip() for line in result.output.splitlines()]
    assert len(listed) == 5
    for path in listed:
        assert path.startswith(str(out))
    names = sorted(p.name for p in out.iterdir())
    assert names == [
        "counts.png",
        "gallery.png",
        "sampled.png",
        "tree_counts.csv",
        "tree_shapes.csv",
    ]
    counts = (out / "tree_counts.csv").read_text().splitlines()
    assert counts[0] == "n,count"
    assert counts[1:] == ["0,1", "1,1", "2,1", "3,4", "4,26"]
