import io
import json
import subprocess
import sys

import jsonschema
import numpy as np
import pytest

from qframes import schemas
from qframes.cli import main, parse_list
from qframes.frames import Frame
from qframes.qmat import to_json_dict
from qframes.synthesis import random_frame_in_stratum


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_admissible_examples():
    code, text = run("admissible", "--lambda", "2,1", "--r", "1,1,1")
    assert code == 0 and text.startswith("admissible")
    code, text = run("admissible", "--lambda", "2,1", "--r", "2.5,0.4,0.1", "--json")
    assert code == 1
    obj = json.loads(text)
    jsonschema.validate(obj["certificate"], schemas.CERTIFICATE)
    assert obj["certificate"]["first_violated_k"] == 1


def test_unsorted_input_views():
    code, text = run("admissible", "--lambda", "1,2", "--r", "0.5,1.5,1", "--json")
    obj = json.loads(text)
    assert code == 0
    assert obj["lambda"] == {"input": [1.0, 2.0], "sorted": [2.0, 1.0]}
    assert obj["r"]["input"] == [0.5, 1.5, 1.0] and obj["r"]["sorted"] == [1.5, 1.0, 0.5]
    assert obj["r"]["perm"] == [1, 2, 0]


def test_synth_verify_round_trip(tmp_path):
    f = tmp_path / "frame.json"
    code, _ = run("synth", "--lambda", "1.5,1.5", "--r", "1,1,1", "--seed", "7", "--out", str(f))
    assert code == 0
    jsonschema.validate(json.loads(f.read_text()), schemas.FRAME)
    code, text = run("verify", "--frame", str(f), "--lambda", "1.5,1.5", "--r", "1,1,1")
    assert code == 0 and text.startswith("verified")
    code, text = run("verify", "--frame", str(f), "--lambda", "2,1", "--r", "1,1,1", "--json")
    assert code == 1 and json.loads(text)["passed"] is False
    code, text = run("verify", "--frame", str(f), "--lambda", "1,1,1", "--r", "1,1,1")
    assert code == 1 and "expected 3 x 3" in text


def test_synth_to_stdout_and_inadmissible():
    code, text = run("synth", "--lambda", "2,1", "--r", "1,1,1")
    assert code == 0
    assert Frame.from_json_dict(json.loads(text)).N == 3
    code, text = run("synth", "--lambda", "2,1", "--r", "2.5,0.4,0.1", "--json")
    assert code == 1 and json.loads(text)["certificate"]["first_violated_k"] == 1


def test_seeded_outputs_are_bitwise_identical(tmp_path):
    texts = []
    for k in range(2):
        f = tmp_path / f"r{k}.json"
        assert run("random", "--lambda", "2,2", "--r", "1,1,1,1", "--seed", "5", "--out", str(f))[0] == 0
        texts.append(f.read_bytes())
    assert texts[0] == texts[1]
    other = tmp_path / "other.json"
    run("random", "--lambda", "2,2", "--r", "1,1,1,1", "--seed", "6", "--out", str(other))
    assert other.read_bytes() != texts[0]


def test_path_command(tmp_path):
    lam, r = [2.0, 1.0], [1.0, 1.0, 1.0]
    for k in (0, 1):
        (tmp_path / f"f{k}.json").write_text(json.dumps(random_frame_in_stratum(lam, r, k).to_json_dict()))
    out = tmp_path / "path.json"
    argv = ["path", "--from", str(tmp_path / "f0.json"), "--to", str(tmp_path / "f1.json")]
    code, text = run(*argv, "--steps", "16", "--seed", "3", "--out", str(out), "--json")
    assert code == 0
    obj = json.loads(out.read_text())
    jsonschema.validate(obj, schemas.FRAME_PATH)
    assert obj["report"]["passed"] and json.loads(text)["report"]["passed"]
    (tmp_path / "g.json").write_text(json.dumps(random_frame_in_stratum([1.5, 1.5], r, 0).to_json_dict()))
    code, _ = run("path", "--from", str(tmp_path / "f0.json"), "--to", str(tmp_path / "g.json"))
    assert code == 1


def test_embed_command(tmp_path):
    H = np.zeros((2, 2, 4))
    H[0, 1, 2], H[1, 0, 2] = 1.0, -1.0
    f = tmp_path / "m.json"
    f.write_text(json.dumps(to_json_dict(H)))
    code, text = run("embed", "--matrix", str(f), "--json")
    obj = json.loads(text)
    assert code == 0 and obj["rows"] == 4
    assert obj["real"][0] == [0.0, 0.0, 0.0, 1.0]
    assert obj["eigenvalues"] == pytest.approx([1.0, -1.0])
    code, text = run("embed", "--matrix", str(f))
    assert code == 0 and "4 x 4" in text


@pytest.mark.parametrize(
    "argv",
    [
        ["admissible", "--lambda", "2,x", "--r", "1"],
        ["admissible", "--lambda", "2,-1", "--r", "1,1"],
        ["admissible", "--lambda", "2,,1", "--r", "1,1"],
        ["admissible", "--lambda", "1,1,1", "--r", "1,1"],
        ["admissible", "--r", "1,1"],
        ["verify", "--frame", "/nonexistent/f.json", "--lambda", "1", "--r", "1"],
        ["path", "--from", "/nonexistent/a.json", "--to", "/nonexistent/b.json"],
        ["embed", "--matrix", "/nonexistent/m.json"],
        ["path", "--from", "a", "--to", "b", "--steps", "1"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv, out=io.StringIO()) == 2


def test_bad_files_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("verify", "--frame", str(bad), "--lambda", "1", "--r", "1")[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"d": 2}))
    assert run("verify", "--frame", str(wrong), "--lambda", "1", "--r", "1")[0] == 2


def test_parse_list_is_locale_free():
    assert parse_list("1.5, 2,3e-1") == [1.5, 2.0, 0.3]


def test_console_entry_point(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "qframes", "admissible", "--lambda", "2,1", "--r", "1,1,1"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and res.stdout.startswith("admissible")
