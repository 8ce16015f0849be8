import json
import subprocess
import sys

import pytest

from crtool.cli import SpecError, main, parse_model, parse_spec, parse_spec_data, run
from crtool.hypersurface import HSModel
from crtool.jet import FamilyTag, family_jet

TYPE_V = {"n": 5, "blocks": [{"size": 4, "jet": {"family": "TypeV", "order": 12}}]}


def write(tmp_path, data, name="spec.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(p)


def run_cli(tmp_path, command, data, *extra, capsys=None):
    path = write(tmp_path, data)
    out = tmp_path / "out.txt"
    code = main([command, "--spec", path, "--out", str(out), *extra])
    return code, out.read_text() if out.exists() else ""


# parsing ----------------------------------------------------------------------

def test_valid_classify_spec(tmp_path):
    (task,) = parse_spec(write(tmp_path, {"model": TYPE_V}), "classify")
    assert task.command == "classify"
    assert task.model == HSModel.single(5, family_jet(FamilyTag("TypeV"), 12))


def test_block_sum_error(tmp_path):
    bad = {"model": {"n": 5, "blocks": [{"size": 5}]}}
    with pytest.raises(SpecError) as exc:
        parse_spec(write(tmp_path, bad), "classify")
    assert exc.value.path == "model.blocks"


def test_noncanonical_rational_rejected(tmp_path):
    bad = {"model": {"n": 5, "blocks": [{"size": 4, "jet": {"coeffs": ["0", "2/4"], "order": 6}}]}}
    with pytest.raises(SpecError) as exc:
        parse_spec(write(tmp_path, bad), "classify")
    assert "coeffs[1]" in exc.value.path


def test_json_syntax_error_has_position(tmp_path):
    with pytest.raises(SpecError) as exc:
        parse_spec(write(tmp_path, '{"model": \n  {"n": 5,,}}'), "levi")
    assert exc.value.path.startswith("line 2")


def test_missing_field_and_unknown_command():
    with pytest.raises(SpecError):
        parse_spec_data({}, "levi")
    with pytest.raises(SpecError):
        parse_spec_data({"command": "frobnicate"})
    with pytest.raises(SpecError):
        parse_spec_data({"command": "levi", "model": TYPE_V}, "kernel")


def test_unknown_field_parameter():
    with pytest.raises(SpecError):
        parse_spec_data({"model": TYPE_V, "fields": [{"name": "U0", "q": 1}]}, "tangency")


def test_model_roundtrip():
    M = parse_model({"n": 6, "blocks": [{"size": 3, "jet": {"family": {"name": "TypeI", "a": "5/2"}, "order": 9}},
                                         {"size": 2, "sign": -1}]})
    (task,) = parse_spec_data({"model": M.to_json()}, "levi")
    report = run(task)
    assert parse_model(report.data["model"]) == M


# running ----------------------------------------------------------------------

def test_symbol_report(tmp_path):
    spec = {"model": {"n": 5, "blocks": [{"size": 2}, {"size": 2, "sign": -1}]}}
    code, text = run_cli(tmp_path, "symbol", spec)
    assert code == 0 and json.loads(text)["jordan_type"] == [2, 2]


def test_enumerate_report(tmp_path):
    code, text = run_cli(tmp_path, "enumerate", {"n": 5})
    data = json.loads(text)
    assert code == 0 and data["count"] == 3
    assert sorted(map(tuple, data["structures"])) == sorted([(4,), (2, 2), (1, 2, 1)])


def test_homogeneous_report(tmp_path):
    code, text = run_cli(tmp_path, "homogeneous", {"model": TYPE_V})
    data = json.loads(text)
    assert code == 0 and data["homogeneous"] is True and data["c"] == "3/2"


def test_homogeneous_fail_verdict(tmp_path):
    spec = {"jet": {"coeffs": ["0", "0", "0", "0", "1/1", "0", "1/1"], "order": 8}}
    code, text = run_cli(tmp_path, "homogeneous", spec)
    assert code == 1 and json.loads(text)["homogeneous"] is False


def test_symmetries_report(tmp_path):
    code, text = run_cli(tmp_path, "symmetries", {"model": TYPE_V})
    data = json.loads(text)
    assert code == 0 and data["dimension"] == 12 and data["case"] == "homogeneous family"


def test_tangency_failure_exit(tmp_path):
    spec = {"model": {"n": 5, "blocks": [{"size": 4}]}, "fields": [{"name": "Vf", "family": "TypeII"}]}
    code, text = run_cli(tmp_path, "tangency", spec)
    assert code == 1 and json.loads(text)["results"][0]["tangency"]["status"] == "fails"


def test_equivalent_report(tmp_path):
    spec = {"f": {"coeffs": ["0", "0", "0", "0", "1/1"], "exact": True},
            "fstar": {"coeffs": ["1/1", "-4/1", "6/1", "-4/1", "1/1"], "exact": True}, "points": ["1/1", "2/1"]}
    code, text = run_cli(tmp_path, "equivalent", spec)
    assert code == 0 and json.loads(text)["equivalent"] is True


def test_table_latex(tmp_path):
    code, text = run_cli(tmp_path, "table", {"n": 5, "basis": "m"}, "--format", "latex")
    assert code == 0 and "\\begin{tabular}" in text and "e_{10}" in text


def test_text_format(tmp_path):
    code, text = run_cli(tmp_path, "kernel", {"model": {"n": 4, "blocks": [{"size": 3}]}}, "--format", "text")
    assert code == 0 and "kernel_field" in text and "x1*s + x2" in text


def test_module_error_is_usage_exit(tmp_path):
    code, _ = run_cli(tmp_path, "symmetries", {"model": {"n": 4, "blocks": [{"size": 3}]}})
    assert code == 2


def test_spec_error_exit(tmp_path, capsys):
    path = write(tmp_path, {"model": {"n": 5, "blocks": [{"size": 4, "jet": {"coeffs": ["2/4"]}}]}})
    assert main(["classify", "--spec", path]) == 2
    assert "2/4" in capsys.readouterr().err


def test_argparse_usage_exit(capsys):
    assert main(["frobnicate", "--spec", "x"]) == 2
    assert main(["levi"]) == 2


def test_check2nd_fail_exit(tmp_path):
    code, text = run_cli(tmp_path, "check2nd", {"model": {"n": 3, "blocks": [{"size": 1}, {"size": 1, "sign": -1}]}})
    assert code == 1 and json.loads(text)["failure"]["condition"] == "adjoint_nonvanishing"


# determinism and batches ------------------------------------------------------

BATCH = {"tasks": [
    {"command": "classify", "model": TYPE_V},
    {"command": "enumerate", "n": 7},
    {"command": "symbol", "model": {"n": 5, "blocks": [{"size": 1}, {"size": 2}, {"size": 1, "sign": -1}]}},
    {"command": "check2nd", "model": {"n": 6, "blocks": [{"size": 5}]}},
    {"command": "table", "n": 5, "basis": "f"},
]}


def test_byte_determinism(tmp_path):
    path = write(tmp_path, BATCH)
    outs = []
    for i, jobs in enumerate(["1", "4", "4"]):
        out = tmp_path / f"o{i}.json"
        assert main(["classify", "--spec", path, "--out", str(out), "--jobs", jobs]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_batch_order(tmp_path):
    code, text = run_cli(tmp_path, "classify", BATCH, "--jobs", "3")
    cmds = [t["command"] for t in json.loads(text)["tasks"]]
    assert cmds == [t["command"] for t in BATCH["tasks"]]


def test_stdout_and_module_entry(tmp_path):
    path = write(tmp_path, {"n": 6})
    r = subprocess.run([sys.executable, "-m", "crtool", "enumerate", "--spec", path], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["count"] == 3
    assert r.stdout.endswith("}\n")
