import json
from importlib import resources

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from hopflab import cli

SCHEMAS = {p.name: json.loads(p.read_text())
           for p in resources.files("hopflab").joinpath("schemas").iterdir()
           if p.name.endswith(".json")}
REGISTRY = Registry().with_resources(
    (name, Resource.from_contents(s)) for name, s in SCHEMAS.items())


def validate(report, schema):
    Draft202012Validator(SCHEMAS[schema], registry=REGISTRY).validate(report)


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def exact(*pairs):
    return {"mode": "exact", "eigenvalues": [
        {"modulus": {"num": m, "den": 1}, "arg_over_pi": {"num": a, "den": d}} for m, a, d in pairs]}


@pytest.fixture
def spec_2_2i(tmp_path):
    return write(tmp_path, "s.json", exact((2, 0, 1), (2, 1, 2)))


@pytest.fixture
def spec_classical(tmp_path):
    return write(tmp_path, "c.json", exact((2, 0, 1), (2, 0, 1)))


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_schemas_are_valid():
    for schema in SCHEMAS.values():
        Draft202012Validator.check_schema(schema)


def test_analyze(capsys, spec_2_2i):
    code, rep, _ = run(capsys, "analyze", "--spec", spec_2_2i, "--invariants", "1,1")
    assert code == 0
    validate(rep, "analysis_report.schema.json")
    validate(rep["spec"], "spec.schema.json")
    assert rep["lattice"]["rank"] == 1 and rep["closure"]["dim_connected"] == 1
    assert rep["closure"]["contains_A1"] and rep["kodaira"]["kodaira"] == "-inf"
    assert rep["certified"] and "timestamp" in rep
    assert all(v["verdict"] == "invariant" for v in rep["lee_invariance"])
    assert all(c["ok"] for c in rep["potential"]["checks"].values())


def test_analyze_invariant_count(capsys, tmp_path):
    spec = write(tmp_path, "s.json", exact((2, 0, 1), (3, 0, 1)))
    code, rep, _ = run(capsys, "analyze", "--spec", spec, "--invariants", "1,1")
    assert code == 0 and rep["invariants"][0]["ordered"] == 2


def test_float_spec_is_uncertified(capsys, tmp_path):
    spec = write(tmp_path, "f.json", {"mode": "float", "eigenvalues": [{"re": 2.0, "im": 0.0},
                                                                         {"re": 2.0, "im": 0.0}]})
    code, rep, _ = run(capsys, "analyze", "--spec", spec, "--no-timestamp")
    assert code == 0 and not rep["certified"]
    validate(rep, "analysis_report.schema.json")


def test_invalid_modulus_exit_2(capsys, tmp_path):
    spec = write(tmp_path, "b.json", {"mode": "float", "eigenvalues": [{"re": 1.0, "im": 0.0},
                                                                         {"re": 2.0, "im": 0.0}]})
    code, _, err = run(capsys, "analyze", "--spec", spec)
    assert code == 2
    validate(json.loads(err), "error.schema.json")


@pytest.mark.parametrize("content", ["{", "[]", '{"eigenvalues": "x"}'])
def test_parse_errors_exit_2(capsys, tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    assert run(capsys, "kodaira", "--spec", str(path))[0] == 2


def test_missing_file_exit_2(capsys, tmp_path):
    assert run(capsys, "kodaira", "--spec", str(tmp_path / "nope.json"))[0] == 2


def test_precision_failure_exit_3(capsys, tmp_path):
    spec = write(tmp_path, "t.json", {"mode": "float", "eigenvalues": [
        {"re": 2.0, "im": 0.0}, {"re": 1.8019377358048383, "im": 0.8677674782351162}]})
    assert run(capsys, "invariants", "--spec", spec, "--k", "1", "--l", "1")[0] == 3


def test_injected_fault_exit_4(capsys, monkeypatch, spec_2_2i):
    monkeypatch.setattr(cli, "verify_real_part", lambda spec, lattice=None: False)
    code, _, err = run(capsys, "analyze", "--spec", spec_2_2i)
    assert code == 4 and json.loads(err)["error"] == "TheoremViolation"


def test_invariants_command(capsys, spec_classical):
    code, rep, _ = run(capsys, "invariants", "--spec", spec_classical, "--k", "1", "--l", "1",
                       "--list")
    assert code == 0 and rep["ordered"] == 4 and len(rep["indices"]) == 4
    validate(rep, "invariants_report.schema.json")


def test_potential_command(capsys, spec_classical):
    code, rep, _ = run(capsys, "potential", "--spec", spec_classical, "--lambda", "1.3863",
                       "--at", "1,1", "--check", "psh,flow,kernel")
    assert code == 0
    validate(rep, "potential_report.schema.json")
    assert rep["phi"] == pytest.approx(2.0, rel=1e-4)
    assert rep["shell_time"] == pytest.approx(0.5)
    assert all(c["ok"] for c in rep["checks"].values())


def test_potential_unknown_check(capsys, spec_classical):
    assert run(capsys, "potential", "--spec", spec_classical, "--check", "bogus")[0] == 2


def test_verify_lee_euler(capsys, tmp_path, spec_classical):
    field = write(tmp_path, "e.json", {"m": [1, 0], "vector_slots": [1], "form_slots": []})
    validate(json.loads(open(field).read()), "field.schema.json")
    code, rep, _ = run(capsys, "verify-lee", "--spec", spec_classical, "--field", field)
    assert code == 0 and rep["verdict"] == "invariant" and rep["mu_lee"] == 0
    validate(rep, "verify_lee_report.schema.json")


def test_verify_lee_non_descending_exit_2(capsys, tmp_path, spec_classical):
    field = write(tmp_path, "e.json", {"m": [1, 0], "vector_slots": [], "form_slots": []})
    assert run(capsys, "verify-lee", "--spec", spec_classical, "--field", field)[0] == 2


def test_kodaira_command(capsys, tmp_path):
    spec = write(tmp_path, "q.json", exact((2, 0, 1), (4, 0, 1), (8, 0, 1)))
    code, rep, _ = run(capsys, "kodaira", "--spec", spec)
    assert code == 0 and rep["kodaira"] == "-inf"
    assert rep["leaf_space"]["leaf_space"] == "P(1,2,3)"
    validate(rep, "kodaira_report.schema.json")


def test_out_and_compact_json(capsys, tmp_path, spec_2_2i):
    out = tmp_path / "r.json"
    code = cli.main(["kodaira", "--spec", spec_2_2i, "--out", str(out), "--json"])
    assert code == 0 and capsys.readouterr().out == ""
    text = out.read_text()
    assert "\n" not in text.strip() and json.loads(text)["kodaira"] == "-inf"


def test_determinism_and_threads(capsys, monkeypatch, spec_2_2i):
    argv = ["analyze", "--spec", spec_2_2i, "--no-timestamp", "--seed", "7", "--invariants", "1,1"]
    cli.main(argv)
    first = capsys.readouterr().out
    monkeypatch.setenv("HOPFLAB_THREADS", "4")
    cli.main(argv)
    second = capsys.readouterr().out
    assert first == second and '"seed": 7' in first
