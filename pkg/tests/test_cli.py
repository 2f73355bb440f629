import json
import shutil
import subprocess
import sys

import pytest
from conftest import fixture_path

from stautilt.cli import main
from stautilt.tautilt import TauPoset


def run(*argv):
    return main([str(a) for a in argv])


def test_algebra_info(tmp_path):
    out = tmp_path / "info.json"
    assert run("algebra-info", fixture_path("brauer_e2.json"), "--json", out) == 0
    info = json.loads(out.read_text())
    assert info["dim"] == 6 and info["cartan"] == [[2, 1], [1, 2]]
    assert info["symmetric"] is True and info["blocks"] == 1


def test_stautilt_json_and_dot(tmp_path):
    js, dot = tmp_path / "p.json", tmp_path / "p.dot"
    assert run("stautilt", fixture_path("brauer_e2.json"), "--json", js, "--dot", dot) == 0
    data = json.loads(js.read_text())
    assert len(data["nodes"]) == 6 and len(data["hasse"]) == 6
    text = dot.read_text()
    assert text.startswith("digraph")
    assert text.count("->") == 6
    assert sum(1 for line in text.splitlines() if "[label=" in line) == 6


def test_json_round_trip_matches_enumeration(tmp_path):
    from stautilt.inputs import load_json, parse_algebra
    from stautilt.tautilt import enumerate_pairs

    js = tmp_path / "p.json"
    run("stautilt", fixture_path("dihedral_d3.json"), "--json", js)
    back = TauPoset.from_json(json.loads(js.read_text()))
    direct = enumerate_pairs(parse_algebra(load_json(fixture_path("dihedral_d3.json"))))
    assert back.same_as(TauPoset.from_json(direct.to_json()))


def test_threads_do_not_change_output(tmp_path):
    outs = []
    for t in (1, 4):
        p = tmp_path / f"t{t}.json"
        assert run("stautilt", fixture_path("ks3_x_c3.json"), "--threads", t, "--json", p) == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_seed_does_not_change_output(tmp_path):
    outs = []
    for s in (1, 99):
        p = tmp_path / f"s{s}.json"
        assert run("stautilt", fixture_path("ks3.json"), "--seed", s, "--json", p) == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_budget_exceeded_exit_2(tmp_path):
    p = tmp_path / "partial.json"
    assert run("stautilt", fixture_path("kronecker.json"), "--budget", 10, "--json", p) == 2
    data = json.loads(p.read_text())
    assert data["complete"] is False and len(data["nodes"]) > 10


def test_not_split_exit_4_and_extension(tmp_path, capsys):
    assert run("stautilt", fixture_path("c2_f3_nonsplit.json"), "--json", tmp_path / "x.json") == 4
    assert "--field-extend 2" in capsys.readouterr().err
    assert run("stautilt", fixture_path("c2_f3_nonsplit.json"), "--field-extend", 2, "--json", tmp_path / "y.json") == 0


def test_invalid_inputs_exit_3(tmp_path):
    assert run("stautilt", tmp_path / "missing.json") == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("algebra-info", bad) == 3
    assert run("frobnicate") == 3
    assert run("verify", "no-such-check", fixture_path("s3_in_s3xc3.json")) == 3


def test_twosilt_square(tmp_path):
    rep = tmp_path / "r.json"
    assert run("twosilt", fixture_path("a2.json"), "--square", "--report", rep, "--json", tmp_path / "c.json") == 0
    data = json.loads(rep.read_text())
    assert data["ok"] and data["nodes"] == 5


@pytest.mark.parametrize("fixture", ["s3_in_s3xc3.json", "s3_in_s3sdc3.json"])
def test_verify_main_theorem(tmp_path, fixture):
    out = tmp_path / "v.json"
    assert run("verify", "main-theorem", fixture_path(fixture), "--json", out) == 0
    assert json.loads(out.read_text())["passed"] is True


def test_poset_compare(tmp_path):
    a, b, c = (tmp_path / f"{n}.json" for n in "abc")
    run("stautilt", fixture_path("ks3.json"), "--json", a)
    run("stautilt", fixture_path("ks3_x_c3.json"), "--json", b)
    run("stautilt", fixture_path("x2.json"), "--json", c)
    assert run("poset-compare", a, b, "--json", tmp_path / "ab.json") == 0
    assert run("poset-compare", a, c, "--json", tmp_path / "ac.json") == 1
    assert json.loads((tmp_path / "ab.json").read_text())["isomorphic"] is True


def test_canonical_json_text(tmp_path):
    p = tmp_path / "p.json"
    run("stautilt", fixture_path("x2.json"), "--json", p)
    text = p.read_text()
    assert text.endswith("\n")
    assert text == json.dumps(json.loads(text), indent=2, sort_keys=True) + "\n"


@pytest.mark.skipif(shutil.which("stautilt") is None, reason="console script not installed")
def test_console_script_exit_code():
    r = subprocess.run(["stautilt", "stautilt", fixture_path("kronecker.json"), "--budget", "5"], capture_output=True)
    assert r.returncode == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "stautilt.cli", "--help"], capture_output=True, text=True)
    assert r.returncode == 0 and "poset-compare" in r.stdout
