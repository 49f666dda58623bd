import json
import subprocess
import sys

import pytest

from epikit.affine import root, simple_affine_roots
from epikit.cli import main
from epikit.rootsys import root_system
from epikit.stability import SupportProfile
from oracles import b_pair, g2_quadruples


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def write_profiles(tmp_path, profiles):
    path = tmp_path / "profiles.json"
    path.write_text(json.dumps([p.to_json() for p in profiles]), encoding="utf-8")
    return str(path)


def test_delta_golden(capsys):
    code, out = run(capsys, "delta", "--type", "G2", "--kac", "1,0,1")
    assert code == 0
    assert out == (
        '{"delta": "1/4", "point": ["1/4", "0"], "roots": ['
        '{"gradient": [-3, -2], "label": "1-a0", "level": 1}, '
        '{"gradient": [-3, -1], "label": "1-a0+a2", "level": 1}, '
        '{"gradient": [1, 0], "label": "a1", "level": 0}, '
        '{"gradient": [1, 1], "label": "a1+a2", "level": 0}]}\n')


def test_kac_arrow_notation_matches_comma_list(capsys):
    _, a = run(capsys, "delta", "--type", "G2", "--kac", "10⇛1")
    _, b = run(capsys, "delta", "--type", "G2", "--kac", "1,0,1")
    _, c = run(capsys, "delta", "--type", "G2", "--kac", "1,1,0", "--kac-order", "bourbaki")
    assert a == b == c


def test_abelianize_g2(capsys):
    code, doc = run_json(capsys, "abelianize", "--type", "G2", "--p", "2", "--q", "2",
                         "--kac", "1,1,1")
    assert code == 0 and doc["dim"] == 4 and len(doc["entries"]) == 4
    assert sum("tuple" in e for e in doc["entries"]) == 1


def test_abelianize_b5(capsys):
    code, doc = run_json(capsys, "abelianize", "--type", "B5", "--p", "2", "--q", "2",
                         "--kac", "1,1,1,1,1,1")
    assert code == 0 and doc["dim"] == 7
    (tup,) = [e["tuple"] for e in doc["entries"] if "tuple" in e]
    assert [r["gradient"] for r in tup] == [list(r.gradient) for r in b_pair(5)]


def test_depth_b5_default_profile(capsys):
    code, doc = run_json(capsys, "depth", "--type", "B5", "--p", "2", "--q", "2",
                         "--kac", "1,1,1,1,1,1")
    assert code == 0
    assert doc["depth"] == "1/8"
    assert doc["witness"] == ["1/8", "1/8", "1/8", "1/8", "0"]
    assert doc["r_x"] == "1/10" and doc["profile"] == 0


def test_depth_with_profiles_file(capsys, tmp_path):
    b5 = root_system("B5")
    path = write_profiles(tmp_path, [SupportProfile(list(simple_affine_roots(b5)) + list(b_pair(5)))])
    code, doc = run_json(capsys, "depth", "--type", "B5", "--kac", "1,1,1,1,1,1",
                         "--profiles", path)
    assert code == 0 and doc["depth"] == "1/8"


def test_stable_with_profiles_file(capsys, tmp_path):
    path = write_profiles(tmp_path, [SupportProfile(q) for q in g2_quadruples()])
    code, doc = run_json(capsys, "stable", "--type", "G2", "--p", "3", "--kac", "1,0,1",
                         "--profiles", path)
    assert code == 0 and doc["stable"] is True
    assert len(doc["profiles"]) == 6
    assert all(p["cone_trivial"] for p in doc["profiles"])


def test_unstable_profile_reports_ray(capsys, tmp_path):
    path = write_profiles(tmp_path, [SupportProfile([root(1, 0), root(0, 1)])])
    code, doc = run_json(capsys, "stable", "--type", "G2", "--kac", "1,1,1", "--profiles", path)
    assert code == 0 and doc["stable"] is False
    assert doc["profiles"][0]["certificate"] == {"ray": ["-1", "-1"]}
    code, doc = run_json(capsys, "depth", "--type", "G2", "--kac", "1,1,1", "--profiles", path)
    assert code == 1 and doc["error"]["kind"] == "Unstable"


def test_intertwine_g2(capsys):
    code, doc = run_json(capsys, "intertwine", "--type", "G2", "--kac", "1,1,1")
    assert code == 0 and doc == [{"translation": [0, 0], "word": []}]


def test_roots_and_kac(capsys):
    code, doc = run_json(capsys, "roots", "--type", "G2")
    assert code == 0 and len(doc["positive_roots"]) == 6
    assert doc["highest_root"] == [3, 2] and doc["marks"] == [1, 3, 2]
    code, doc = run_json(capsys, "kac", "--type", "G2", "--kac", "1,1,1")
    assert doc["point"] == ["1/6", "1/6"] and doc["simple_affine_values"] == ["1/6"] * 3


@pytest.mark.parametrize("argv", [
    ["delta", "--type", "X9", "--kac", "1,1,1"],
    ["delta", "--type", "G2", "--kac", "1,1"],
    ["delta", "--type", "G2", "--kac", "1,2,1"],
    ["abelianize", "--type", "G2", "--p", "4", "--kac", "1,1,1"],
    ["abelianize", "--type", "G2", "--p", "2", "--q", "6", "--kac", "1,1,1"],
    ["stable", "--type", "G2", "--kac", "1,1,1", "--profiles", "/nonexistent/profiles.json"],
])
def test_input_errors_exit_1(capsys, argv):
    code, doc = run_json(capsys, *argv)
    assert code == 1 and doc["error"]["kind"] in ("InvalidInput", "NotABarycentre")


@pytest.mark.parametrize("argv", [["delta", "--kac", "1,1,1"], ["frobnicate", "--type", "G2"],
                                  ["intertwine", "--type", "B5", "--kac", "1,1,1,1,1,1",
                                   "--lattice", "spin"]])
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1
    assert json.loads(capsys.readouterr().out)["error"]["kind"] == "usage"


def test_usage_error_exit_status():
    proc = subprocess.run([sys.executable, "-m", "epikit.cli", "delta", "--kac", "1,1,1"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["error"]["kind"] == "usage"


def test_unsupported_exit_2(capsys):
    code, doc = run_json(capsys, "abelianize", "--type", "G2", "--p", "2", "--q", "4",
                         "--kac", "1,1,1")
    assert code == 2 and doc["error"]["kind"] == "Unsupported"


def test_zero_quotient_needs_profiles(capsys):
    code, doc = run_json(capsys, "depth", "--type", "B3", "--kac", "1,0,0,0")
    assert code == 1 and doc["error"]["kind"] == "InvalidInput"


def test_output_is_byte_identical_across_runs():
    argv = [sys.executable, "-m", "epikit.cli", "depth", "--type", "B5", "--p", "2", "--q", "2",
            "--kac", "1,1,1,1,1,1"]
    outs = {subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(3)}
    assert len(outs) == 1


def test_text_format(capsys):
    code, out = run(capsys, "delta", "--type", "G2", "--kac", "1,0,1", "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "delta  1/4" and lines[1] == 'point  ["1/4", "0"]'
    assert lines[2].startswith("roots  [")
