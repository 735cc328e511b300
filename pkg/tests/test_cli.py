from __future__ import annotations

import json
import subprocess
import sys

import numpy as np
import pytest

from hopfgalois import cli_report as cli


def run(*args, cwd=None):
    proc = subprocess.run([sys.executable, "-m", "hopfgalois", *args], capture_output=True, text=True, cwd=cwd)
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture
def fixture_file(tmp_path):
    def make(name, fmt="toml", **kw):
        spec = cli.fixture_spec(name, **kw)
        path = tmp_path / f"{name}.{fmt}"
        if fmt == "json":
            path.write_text(json.dumps(spec.as_dict()))
        else:
            path.write_text(cli.render_toml(spec))
        return path

    return make


def test_bundled_fixtures_match_the_generator():
    for name, kw in [("example1", {}), ("example2", {}), ("abelian", {}), ("zero", {})]:
        assert cli.bundled_fixture(name) == cli.render_toml(cli.fixture_spec(name, **kw))


def test_build_example1_json(fixture_file):
    code, out, err = run("build", str(fixture_file("example1", p=3)), "--format", "json")
    assert code == cli.EXIT_OK, err
    rep = json.loads(out)
    assert rep["failures"] == []
    assert rep["hopf"]["antipode_order"] == 6
    assert rep["grouplikes_E"] == 3
    assert rep["quantum_lie"]["bracket"]["[tau0,tau1]"] == "-tau1"


def test_build_is_byte_deterministic(fixture_file):
    path = str(fixture_file("example1", p=3))
    first = run("build", path, "--format", "json")
    second = run("build", path, "--format", "json")
    assert first == second


def test_json_and_toml_inputs_agree(fixture_file):
    a = run("build", str(fixture_file("example1", p=2)), "--format", "json")[1]
    b = run("build", str(fixture_file("example1", fmt="json", p=2)), "--format", "json")[1]
    assert a == b


@pytest.mark.parametrize("xi", ["0,0", "1,0"])
def test_non_galois_forms_exit_1(fixture_file, xi):
    code, out, _ = run("build", str(fixture_file("example1", p=3)), "--xi", xi, "--format", "json")
    assert code == cli.EXIT_NOT_GALOIS
    assert json.loads(out)["not_galois"]["beta_nondegenerate"] is False


def test_abelian_fixture_is_not_galois(fixture_file):
    assert run("build", str(fixture_file("abelian", p=2)))[0] == cli.EXIT_NOT_GALOIS


def test_zero_algebra_builds(fixture_file):
    code, out, _ = run("build", str(fixture_file("zero", p=5)), "--format", "json")
    assert code == cli.EXIT_OK
    assert json.loads(out)["hopf"]["antipode_order"] == 1


def test_scan_text_output(fixture_file):
    code, out, _ = run("scan", str(fixture_file("example1", p=3)), "--exhaustive", "--jobs", "2")
    assert code == cli.EXIT_OK
    assert "central_simple: 6" in out


def test_sampled_scan_is_seeded():
    spec = cli.fixture_spec("example1", p=5)
    a, _ = cli.scan_report(spec, exhaustive=False, samples=6, seed=3)
    b, _ = cli.scan_report(spec, exhaustive=False, samples=6, seed=3, jobs=3)
    assert a == b


@pytest.mark.parametrize(
    "doc,needle",
    [
        ({"dim": 1, "pmap": [[0]]}, "missing field 'p'"),
        ({"p": 4, "dim": 1, "pmap": [[0]]}, "field 'p'"),
        ({"p": 3, "dim": 2, "pmap": [[0, 0]]}, "field 'pmap'"),
        ({"p": 3, "dim": 2, "pmap": [[0, 0], [0, 0]], "bracket": [{"i": 1, "j": 0, "coeffs": [0, 1]}]}, "bracket[0]"),
        ({"p": 3, "dim": 2, "pmap": [[0, 0], [0, 0]], "xi": [1]}, "field 'xi'"),
        ({"p": 3, "dim": 2, "basis": ["x", "x"], "pmap": [[0, 0], [0, 0]]}, "distinct"),
    ],
)
def test_parse_errors_name_the_field(doc, needle):
    with pytest.raises(cli.InputError, match=needle.replace("[", r"\[").replace("]", r"\]")):
        cli.parse_spec(doc)


def test_bad_files_exit_3(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("p = 3\ndim = [\n")
    assert run("check", str(bad))[0] == cli.EXIT_INPUT
    assert run("check", str(tmp_path / "missing.toml"))[0] == cli.EXIT_INPUT
    # ad(e0)^p must equal ad(e0^[p]); a zero p-map on a nonnilpotent derivation is rejected
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"p": 3, "dim": 2, "bracket": [{"i": 0, "j": 1, "coeffs": [0, 1]}], "pmap": [[0, 0], [0, 0]]}))
    assert run("build", str(wrong))[0] == cli.EXIT_INPUT
    code, out, _ = run("check", str(wrong), "--format", "json")
    assert code == cli.EXIT_ASSERTION
    assert json.loads(out)["checks"]["restricted_lie"]["ad_of_pmap"] is False


def test_fixture_command_rejects_bad_parameters():
    assert run("fixture", "example2", "--p", "3", "--a", "1", "--b", "2")[0] == cli.EXIT_INPUT
    assert run("fixture", "example1", "--p", "4")[0] == cli.EXIT_INPUT
    code, out, _ = run("fixture", "example2", "--p", "2", "--a", "1", "--b", "0", "--format", "json")
    assert code == cli.EXIT_OK and json.loads(out)["parameters"] == {"family": "example2", "a": 1, "b": 0}


def test_linear_combination_formatting():
    assert cli.linear_combination([0, 2], ["x", "y"], 3) == "-y"
    assert cli.linear_combination([1, 1], ["x", "y"], 5) == "x + y"
    assert cli.linear_combination([0, 0], ["x", "y"], 5) == "0"
    assert cli.signed(4, 5) == -1


def test_scan_fingerprints_agree_across_galois_forms():
    report, code = cli.scan_report(cli.fixture_spec("example1", p=3), fingerprints=True)
    assert code == cli.EXIT_OK
    prints = [r["fingerprint"] for r in report["rows"] if r["galois"]]
    assert len(prints) == 6
    assert report["observed_distinct_fingerprints"] == 1
    assert prints[0] == {"dim_E": 9, "antipode_order": 6, "grouplikes": 3, "bracket_derived_dims": [2, 1, 0]}
    assert all("fingerprint" not in r for r in report["rows"] if not r["galois"])


def test_derived_dims_of_abelian_and_nonabelian_brackets():
    assert cli.derived_dims(np.zeros((3, 3, 3), dtype=np.int64), 5) == [3, 0]
    gamma = np.zeros((2, 2, 2), dtype=np.int64)
    gamma[0, 1, 1], gamma[1, 0, 1] = 1, 4
    assert cli.derived_dims(gamma, 5) == [2, 1, 0]
