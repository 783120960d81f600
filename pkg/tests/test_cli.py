import json

import pytest

from conftest import space_of
from symindex import spacefile
from symindex.cli import main
from symindex.errors import NotALieAlgebra, ParseError
from symindex.report import analyze


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, doc, name="space.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc, indent=1))
    return str(p)


def so3_doc():
    return {
        "name": "round-s2",
        "algebra": {"dim": 3, "labels": ["L12", "L13", "L23"],
                    "structure": [[0, 1, 2, -1.0], [0, 2, 1, 1.0], [1, 2, 0, -1.0]]},
        "isotropy": ["L23"],
        "metric": {"mode": "normal", "form": "identity"},
        "assumptions": {"irreducible": True, "non_sphere": False},
    }


def test_analyze_stiefel(capsys):
    code, out, _ = run(capsys, "analyze", "catalog:stiefel-4-2", "--format", "json")
    rep = json.loads(out)
    assert code == 0
    assert rep["index"] == {"value": 1, "status": "EXACT", "heuristic": False}


def test_analyze_unit_tangent_lower_bound(capsys):
    code, out, _ = run(capsys, "analyze", "catalog:t1s3", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["index"]["value"] == 2 and rep["index"]["status"] == "LOWER_BOUND"
    assert rep["expected"]["index"] == {"value": 2, "provenance": "PAPER"}


def test_analyze_strict_lower_bound_exit_4(capsys):
    code, _, _ = run(capsys, "analyze", "catalog:t1s3", "--strict")
    assert code == 4


def test_analyze_strict_exact_ok(capsys):
    code, _, _ = run(capsys, "catalog", "analyze", "stiefel-5-2", "--strict")
    assert code == 0


def test_missing_isotropy(capsys, tmp_path):
    doc = so3_doc()
    del doc["isotropy"]
    code, _, err = run(capsys, "analyze", write(tmp_path, doc))
    assert code == 2 and "ParseError" in err and "isotropy" in err


def test_invalid_json_line(tmp_path):
    text = '{\n "name": "x",\n "algebra": {\n}}}'
    with pytest.raises(ParseError) as info:
        spacefile.loads(text)
    assert info.value.line == 4


def test_conflicting_triple_located():
    doc = so3_doc()
    doc["algebra"]["structure"].append([1, 0, 2, -1.0])   # should be +1 to agree with [0, 1, 2, -1]
    text = json.dumps(doc, indent=1)
    with pytest.raises(ParseError) as info:
        spacefile.loads(text)
    assert info.value.field == "algebra.structure[3]"
    assert info.value.line is not None


def test_index_out_of_range():
    doc = so3_doc()
    doc["algebra"]["structure"][0] = [0, 5, 2, 1.0]
    with pytest.raises(ParseError):
        spacefile.loads(json.dumps(doc))


def test_unknown_label():
    doc = so3_doc()
    doc["isotropy"] = ["L99"]
    with pytest.raises(ParseError, match="L99"):
        spacefile.loads(json.dumps(doc))


def test_label_isotropy_parses():
    s = spacefile.loads(json.dumps(so3_doc()))
    assert s.dim_m == 2 and s.flags.normal
    assert analyze(s).index == 2


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list", "--format", "json")
    entries = json.loads(out)
    assert code == 0 and len(entries) >= 8
    assert all("provenance" in v for e in entries for v in e["expected"].values())


def test_catalog_analyze_aloff_wallach_diff_empty(capsys):
    code, out, _ = run(capsys, "catalog", "analyze", "aloff-wallach", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["diff"] == [] and rep["index"]["value"] == 2


def test_catalog_unknown(capsys):
    code, _, err = run(capsys, "catalog", "analyze", "nonexistent")
    assert code == 2 and "UnknownEntry" in err


def test_catalog_missing_name(capsys):
    code, _, _ = run(capsys, "catalog", "analyze")
    assert code == 2


def test_check_sphere(capsys):
    code, out, _ = run(capsys, "check", "catalog:sphere-3", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["valid"]
    assert rep["flags"] == {"normal": True, "naturally_reductive": True}


def test_check_unit_tangent_file(capsys, tmp_path):
    path = write(tmp_path, spacefile.dumps(space_of("t1s3")))
    code, out, _ = run(capsys, "check", path, "--format", "json")
    assert code == 0 and json.loads(out)["flags"]["naturally_reductive"] is False


def test_check_perturbed_constants(capsys, tmp_path):
    doc = so3_doc()
    doc["algebra"]["structure"].append([0, 1, 0, 0.1])
    code, out, _ = run(capsys, "check", write(tmp_path, doc), "--format", "json")
    rep = json.loads(out)
    assert code == 2 and not rep["valid"] and rep["error"] == "NotALieAlgebra"
    assert len(rep["triple"]) == 3


def test_perturbed_constants_raise():
    doc = so3_doc()
    doc["algebra"]["structure"].append([0, 1, 0, 0.1])
    with pytest.raises(NotALieAlgebra) as info:
        spacefile.loads(json.dumps(doc))
    assert info.value.triple is not None


def test_validation_error_exit_2(capsys, tmp_path):
    doc = so3_doc()
    doc["metric"] = {"mode": "normal", "form": [[1, 0, 0], [0, 2, 0], [0, 0, 3]]}
    code, _, err = run(capsys, "analyze", write(tmp_path, doc))
    assert code == 2 and "NotInvariant" in err


@pytest.mark.parametrize("name", ["sphere-3", "stiefel-5-2", "group-so3", "t1s3", "t1s4", "aloff-wallach"])
def test_round_trip_bitwise(name, tmp_path):
    space = space_of(name)
    text = spacefile.dumps(space)
    again = spacefile.loads(text)
    assert analyze(again).to_json() == analyze(space).to_json()
    assert spacefile.dumps(again) == text


def test_cli_round_trip(capsys, tmp_path):
    code, text, _ = run(capsys, "catalog", "export", "stiefel-5-3")
    assert code == 0
    path = write(tmp_path, text)
    _, from_file, _ = run(capsys, "analyze", path, "--format", "json")
    a = json.loads(from_file)
    b = analyze(space_of("stiefel-5-3")).to_dict()
    assert a == b


def test_reports_deterministic(capsys):
    _, one, _ = run(capsys, "analyze", "catalog:stiefel-5-2", "--format", "json")
    _, two, _ = run(capsys, "analyze", "catalog:stiefel-5-2", "--format", "json")
    assert one == two
    keys = list(json.loads(one))
    assert keys[:4] == ["schema", "name", "dim_m", "dim_g"]


def test_text_report(capsys):
    code, out, _ = run(capsys, "analyze", "catalog:stiefel-5-2")
    assert code == 0 and "index            3 (EXACT)" in out and "group_type=True" in out


def test_heuristic_invariant_fields_unit_tangent(capsys):
    # invariant fields are not Killing here; their brackets leave Fix and the run stops as numerical
    code, _, err = run(capsys, "analyze", "catalog:t1s3", "--invariant-fields", "on")
    assert code == 3 and "ClosureFailure" in err


def test_tolerance_flag(capsys):
    code, out, _ = run(capsys, "analyze", "catalog:sphere-3", "--tolerance", "1e-7", "--format", "json")
    assert code == 0 and json.loads(out)["settings"]["tolerance"] == 1e-7
