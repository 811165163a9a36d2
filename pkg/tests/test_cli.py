import json
import os

import pytest
from click.testing import CliRunner

from ydext.cli import main
from ydext.specfile import BUNDLED

DATA = os.path.dirname(BUNDLED)


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(main, list(args), catch_exceptions=False)
    return invoke


def test_check_axioms_passes(run):
    r = run("check-axioms")
    assert r.exit_code == 0
    assert "result: PASS" in r.output


def test_ext_json(run):
    r = run("--json", "ext", "--max-degree", "3")
    assert r.exit_code == 0
    doc = json.loads(r.output)
    assert doc["passed"] and doc["results"][0]["dims"] == [2, 1, 1, 1]


def test_json_output_is_reproducible(run):
    a = run("--json", "--seed", "4", "verify-operad", "--trials", "3")
    b = run("--json", "--seed", "4", "verify-operad", "--trials", "3")
    assert a.exit_code == 0 and a.output == b.output


def test_timing_is_opt_in(run):
    assert "time:" not in run("ext", "--max-degree", "1").output
    assert "time:" in run("--timing", "ext", "--max-degree", "1").output


def test_bracket_and_cup(run):
    for cmd in ("cup", "bracket"):
        r = run("--json", cmd, "--max-degree", "1")
        assert r.exit_code == 0, r.output


def test_hochschild(run):
    r = run("--json", "hochschild", "--max-degree", "2")
    assert r.exit_code == 0
    assert json.loads(r.output)["results"][0]["dims"] == [2, 1, 1]


def test_run_tasks_ground(run):
    r = run("--spec", os.path.join(DATA, "ground.spec"), "run")
    assert r.exit_code == 0, r.output


def test_verify_extension_loop(run):
    r = run("verify-extension-loop", "--p", "1", "--q", "1")
    assert r.exit_code == 0, r.output


def test_verify_gerstenhaber(run):
    r = run("verify-gerstenhaber", "--cap", "1")
    assert r.exit_code == 0, r.output


def test_noncommuting_pair_exits_one(run):
    r = run("--json", "--spec", os.path.join(DATA, "noncommuting_c2.spec"), "check-axioms")
    assert r.exit_code == 1
    assert not json.loads(r.output)["passed"]


def test_shape_error_exits_two(run, tmp_path):
    text = open(BUNDLED).read().replace("    0 0\nend", "end", 1)
    path = tmp_path / "bad.spec"
    path.write_text(text)
    r = run("--spec", str(path), "check-axioms")
    assert r.exit_code == 2
    assert "block algebra A" in r.output


def test_missing_file_exits_two(run, tmp_path):
    r = run("--spec", str(tmp_path / "absent.spec"), "ext")
    assert r.exit_code == 2


def test_resource_cap_exits_two(run):
    r = run("--max-bar-degree", "2", "ext", "--max-degree", "4")
    assert r.exit_code == 2
    assert "resource cap" in r.output


def test_field_override(run, tmp_path):
    text = open(BUNDLED).read().replace("field QQ\n", "")
    path = tmp_path / "nofield.spec"
    path.write_text(text)
    r = run("--json", "--field", "F(7)", "--spec", str(path), "ext", "--max-degree", "2")
    assert r.exit_code == 0
    doc = json.loads(r.output)
    assert doc["field"] == "F(7)" and doc["results"][0]["dims"] == [2, 1, 1]
