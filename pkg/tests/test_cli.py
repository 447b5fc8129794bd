import json
import subprocess
import sys

import pytest

from linkreconf.cli import run

CURVES = {
    "crossings": [
        [[2, 1], [1, -1], [2, -1], [1, 1], [2, -1], [1, -1], [2, 1]],
        [[1, 1], [2, -1], [1, -1], [2, 1], [1, -1], [2, -1], [1, 1]],
    ]
}


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def gen(capsys, tmp_path, name, *argv):
    code, out, _ = call(capsys, "gen", *argv)
    assert code == 0
    path = tmp_path / name
    path.write_text(out)
    return str(path), json.loads(out)


def test_decide_two_face_yes(capsys, tmp_path):
    path, _ = gen(capsys, tmp_path, "c.json", "--family", "cylinder", "--rows", "3", "--cols", "6")
    code, out, _ = call(capsys, "decide", "-i", path, "--mode", "two-face")
    assert code == 0
    res = json.loads(out)
    assert res["answer"] == "YES" and res["mu"] == 0


def test_decide_two_face_no(capsys, tmp_path):
    path, _ = gen(capsys, tmp_path, "c.json", "--family", "cylinder", "--rows", "4", "--cols", "6",
                  "--winding-q", "1")
    code, out, _ = call(capsys, "decide", "-i", path, "--mode", "two-face")
    assert code == 1
    assert json.loads(out)["mu"] == 1


def test_sequence_then_verify_and_tamper(capsys, tmp_path):
    path, data = gen(capsys, tmp_path, "c.json", "--family", "cylinder", "--rows", "3", "--cols", "6")
    assert data["P"] == [[0, 6, 12], [3, 9, 15]]
    data["Q"] = [[0, 1, 7, 13, 12], [3, 4, 10, 16, 15]]
    with open(path, "w") as fh:
        json.dump(data, fh)
    code, out, _ = call(capsys, "sequence", "-i", path)
    assert code == 0
    seq = json.loads(out)["sequence"]
    assert len(seq) >= 3 and seq[0] == data["P"] and seq[-1] == data["Q"]
    (tmp_path / "s.json").write_text(json.dumps(seq))
    code, out, _ = call(capsys, "verify", "-i", path, "-s", str(tmp_path / "s.json"))
    assert code == 0 and json.loads(out)["ok"]
    bad = seq + [seq[-1]]
    (tmp_path / "bad.json").write_text(json.dumps({"sequence": bad}))
    code, out, _ = call(capsys, "verify", "-i", path, "-s", str(tmp_path / "bad.json"))
    res = json.loads(out)
    assert code == 1 and not res["ok"] and res["index"] == len(seq) - 1


def test_word_on_curve_pair(capsys, tmp_path):
    path = tmp_path / "w.json"
    path.write_text(json.dumps(CURVES))
    code, out, _ = call(capsys, "word", "-i", str(path))
    res = json.loads(out)
    assert code == 1
    assert res["reconfigurable"] is False and res["witness"] == 1
    assert res["words"][0]["word"] == "x2 x1^-1 x2^-1 x1 x2^-1 x1^-1 x2"
    assert res["words"][1]["word"] == "x1 x2^-1 x1^-1 x2 x1^-1 x2^-1 x1"
    code, out, _ = call(capsys, "word", "-i", str(path), "--format", "text")
    assert "reconfigurable: false" in out


def test_mu_and_oracle(capsys, tmp_path):
    path, _ = gen(capsys, tmp_path, "c.json", "--family", "cylinder", "--rows", "4", "--cols", "6",
                  "--winding-q", "1")
    code, out, _ = call(capsys, "mu", "-i", path)
    assert code == 0
    assert json.loads(out) == {"matrix": {"1,2": 1, "2,1": 1}, "mu": 1}
    code, out, _ = call(capsys, "oracle", "-i", path)
    assert code == 1 and json.loads(out)["answer"] == "NO"


def test_oracle_shortest(capsys, tmp_path):
    path, _ = gen(capsys, tmp_path, "f.json", "--family", "st-cylinder", "--rows", "2", "--cols", "4", "--seed", "3")
    code, out, _ = call(capsys, "oracle", "-i", path, "--shortest")
    res = json.loads(out)
    assert code == 0 and res["answer"] == "YES" and res["length"] >= 1
    code, out, _ = call(capsys, "decide", "-i", path, "--mode", "st")
    assert code == 0


def test_figure1_decided_no(capsys, tmp_path):
    path, _ = gen(capsys, tmp_path, "f.json", "--family", "figure1")
    code, out, _ = call(capsys, "decide", "-i", path)
    res = json.loads(out)
    assert code == 1 and res["answer"] == "NO" and res["separator"] == ["x", "y"]


@pytest.mark.parametrize("family", ["damaged-cylinder", "ncl-st", "ncl-planar"])
def test_gen_is_deterministic(capsys, family):
    first = call(capsys, "gen", "--family", family, "--seed", "5")
    second = call(capsys, "gen", "--family", family, "--seed", "5")
    assert first[0] == 0 and first == second


def test_gen_dot(capsys):
    code, out, _ = call(capsys, "gen", "--family", "cylinder", "--rows", "2", "--cols", "4", "--format", "dot")
    assert code == 0 and out.startswith("graph")


def test_usage_errors(capsys, tmp_path):
    assert call(capsys, "decide", "-i", str(tmp_path / "missing.json"))[0] == 2
    path, _ = gen(capsys, tmp_path, "c.json", "--family", "cylinder", "--rows", "3", "--cols", "6")
    code, _, err = call(capsys, "decide", "-i", path, "--mode", "st")
    assert code == 2 and err.startswith("error:")
    assert call(capsys, "decide", "-i", path, "--mode", "sideways")[0] == 2
    assert call(capsys, "frobnicate")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "linkreconf", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "decide" in proc.stdout
