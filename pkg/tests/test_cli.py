import json

import pytest

from loctool import catalog as cat
from loctool.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and len(out.strip().splitlines()) == 21
    code, out, _ = run(capsys, "catalog", "--kind", "fusion", "--json")
    rows = json.loads(out)
    assert code == 0 and {r["kind"] for r in rows} == {"fusion"}
    assert run(capsys, "catalog", "--kind", "bogus")[0] == 3


@pytest.mark.parametrize("inst,check,code", [
    ("S4/D8", "saturation", 0),
    ("S4/D8", "classify-cr", 0),
    ("V4-unsaturated", "classify-cr", 0),
    ("S4|V4", "validate-locality", 0),
    ("S4:A4", "theorem-b", 0),
    ("C3xS4:A4", "theorem-c", 0),
    ("C3xS4:C3xA4", "theta-quotient", 0),
    ("S4:A4", "quotient-iso", 0),
    ("S4:A4", "frattini", 0),
    ("S4:A4", "theorem-a", 0),
    ("S4:A4*<(13)>", "product-nh", 0),
    ("S4:A4*<(13)>", "theorem-a", 0),
])
def test_checks(capsys, inst, check, code):
    got, out, _ = run(capsys, "check", "--instance", inst, "--run", check, "--no-timing")
    rep = json.loads(out)
    assert got == code
    assert rep["verdict"] == "pass" and "timing_ms" not in rep


def test_check_output_is_stable(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(capsys, "check", "--instance", "S4/D8", "--run", "classify-cr",
                   "--no-timing", "--out", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_failing_locality_exits_1(capsys, tmp_path):
    from loctool.acceptance import mutate_break_closure
    from loctool.catalog import save_object
    L = cat.get("S4|all").materialize()
    M, _ = mutate_break_closure(L)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"kind": "locality", "payload": save_object("locality", M)}))
    code, out, _ = run(capsys, "check", "--instance", str(path), "--run", "validate-locality")
    assert code == 1 and json.loads(out)["verdict"] == "fail"


def test_not_applicable_exits_2(capsys, tmp_path):
    pc = cat.get("S4:A4*<(13)>")
    data = json.loads(json.dumps(pc.to_json()))
    # the trivial subgroup as T* is not an object, so the product check does not apply
    data["payload"]["Tstar"] = [data["payload"]["locality"]["from_group"]["S"][0]]
    path = tmp_path / "na.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "check", "--instance", str(path), "--run", "product-nh")
    assert code == 2 and json.loads(out)["verdict"] == "na"


@pytest.mark.parametrize("argv", [
    ["check", "--instance", "S4/D8", "--run", "product-nh"],
    ["check", "--instance", "nope", "--run", "saturation"],
    ["check", "--instance", "S4/D8", "--run", "saturation", "--p", "4"],
    ["check", "--instance", "S4|V4", "--run", "saturation", "--p", "3"],
    ["check", "--instance", "S4/D8"],
    ["suite", "--filter", "no-such-criterion"],
    ["frobnicate"],
])
def test_usage_errors_exit_3(capsys, argv):
    assert run(capsys, *argv)[0] == 3


def test_prime_switch(capsys):
    code, out, _ = run(capsys, "check", "--instance", "S4/D8", "--run", "classify-cr", "--p", "3", "--no-timing")
    assert code == 0
    assert json.loads(out)["clauses"][0]["witness"] == [[0, 1, 2]]


def test_bad_file_exits_3(capsys, tmp_path):
    path = tmp_path / "x.json"
    path.write_text("{not json")
    assert run(capsys, "check", "--instance", str(path), "--run", "saturation")[0] == 3


def test_caps_from_environment(capsys, monkeypatch, tmp_path):
    # a file instance is built fresh, unlike the cached catalog objects
    path = tmp_path / "gl23.json"
    path.write_text(json.dumps(cat.get("GL23/SD16").to_json()))
    monkeypatch.setenv("LOCTOOL_CAPS", "morphisms=5")
    code, _, err = run(capsys, "check", "--instance", str(path), "--run", "saturation")
    assert code == 3 and "CapExceeded" in err
    monkeypatch.setenv("LOCTOOL_CAPS", "bogus=1")
    assert run(capsys, "catalog")[0] == 3


def test_save(capsys, tmp_path):
    path = tmp_path / "s.json"
    assert run(capsys, "save", "--instance", "S3/C3", "--out", str(path))[0] == 0
    assert cat.load_file(str(path)).kind == "fusion"


def test_suite_subset(capsys, tmp_path):
    path = tmp_path / "agg.json"
    code, out, _ = run(capsys, "suite", "--filter", "1,cr sets", "--out", str(path))
    assert code == 0
    assert "aggregate: pass" in out
    agg = json.loads(path.read_text())
    assert [c["criterion"] for c in agg["criteria"]] == [1, 2]
