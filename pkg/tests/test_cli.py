import json
import subprocess
import sys
from pathlib import Path

import pytest

from singchain.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_chain_info_golden(capsys):
    code, out, _ = run(capsys, "chain", "info", "[2,4,3,3]")
    assert code == 0
    assert out == (GOLDEN / "chain_info_2_4_3_3.json").read_text()


def test_chain_info_non_t(capsys):
    code, out, _ = run(capsys, "chain", "info", "[3,2]")
    data = json.loads(out)
    assert code == 0 and data["tchain"] is None and data["frac"] == [5, 2] and data["cores"] is None
    code, out, _ = run(capsys, "chain", "info", "[5,2]")
    assert json.loads(out)["tchain"] == {"d": 1, "n": 3, "a": 1, "milnor": 0}


def test_frac_both_ways(capsys):
    code, out, _ = run(capsys, "frac", "[3,2,3]")
    assert json.loads(out) == {"chain": [3, 2, 3], "n": 12, "a": 5, "a_inverse": 5}
    code, out, _ = run(capsys, "frac", "50/29")
    assert json.loads(out)["chain"] == [2, 4, 3, 3]
    code, _, err = run(capsys, "frac", "50/30")
    assert code == 1 and "error" in err


def test_train_admissible(capsys):
    code, out, _ = run(capsys, "train", "admissible", "[3,2,2,3,4,3,2]", "--all", "--budget", "4")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "Admissible"
    assert "[3,3]-1-[3,5,2]-1-[3,5,3,2]" in [t["train"] for t in data["trains"]]
    code, out, _ = run(capsys, "train", "admissible", "[2,6,2]")
    assert code == 2 and json.loads(out)["verdict"] == "NotWithinBudget"


def test_train_presol(capsys):
    code, out, _ = run(capsys, "train", "presol", "[2,3,2]")
    data = json.loads(out)
    assert code == 0 and data["lambda"] == 3 and len(data["resolutions"]) == 2


def test_train_check_and_search(capsys):
    code, out, _ = run(capsys, "train", "check", "[2,5]-1-[3,3]-1-[5,2]")
    data = json.loads(out)
    assert data["ample"] and data["blow_down"] == [2, 4, 2, 2, 4, 2]
    assert data["junction_alphas"] == [["1/3", "1/2"], ["1/2", "1/3"]]
    code, out, _ = run(capsys, "train", "search", "[3,2,2,2,3]")
    assert code == 0 and json.loads(out)["trains"][0]["train"] == "[3,2,2,2,3]"


def test_cusp_commands(capsys):
    code, out, _ = run(capsys, "cusp", "decide", "[5,2,2]o")
    data = json.loads(out)
    assert code == 0 and (data["verdict"], data["rule"]) == ("Smoothable", "B4")
    code, out, _ = run(capsys, "cusp", "decide", "[7,3,5]o")
    assert code == 2 and json.loads(out)["verdict"] == "Unknown"
    code, out, _ = run(capsys, "cusp", "dual", "[6,2,2,3]o")
    assert json.loads(out)["dual"] == "[5,3,2,2,2]o"
    code, out, _ = run(capsys, "cusp", "steenbrink", "[13]o!")
    assert json.loads(out)["steenbrink"] is False


def test_realize_then_replay(capsys):
    code, out, _ = run(capsys, "cusp", "realize", "[5,2,2]o", "--dual", "--max", "12")
    data = json.loads(out)
    assert code == 0 and data["found"]
    code, out, _ = run(capsys, "cusp", "replay", json.dumps(data["witness"]))
    replayed = json.loads(out)
    assert code == 0 and replayed["valid"] and replayed["k2"] == data["k2"]
    code, out, _ = run(capsys, "cusp", "realize", "[5,2,2]o", "--dual", "--max", "2")
    assert code == 2 and not json.loads(out)["found"]


@pytest.mark.parametrize(
    "argv",
    [
        ("chain", "info", "[1,2]"),
        ("chain", "info", "[3,2^-2,3]"),
        ("cusp", "decide", "[2,2,2]o"),
        ("cusp", "decide", "[5,2]"),
        ("cusp", "realize", "[5,2]o", "--seed", "nowhere"),
        ("cusp", "replay", "{not json"),
        ("train", "search", "[4]", "--budget", "-1"),
        ("verify", "C6", "--beta-max", "3"),
        ("verify", "C8", "--d", "5"),
        ("verify", "C99"),
        ("bogus",),
    ],
)
def test_input_errors_exit_1(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 1


def test_verify_command(capsys):
    code, out, err = run(capsys, "verify", "C6", "--chi-max", "6", "--pad-max", "3", "--budget", "20")
    assert code == 0 and json.loads(out)["status"] == "PASS" and "PASS" in err
    code, out, _ = run(capsys, "verify", "C11", "--d", "5", "--l-max", "2")
    data = json.loads(out)
    assert [c["verdict"] for c in data["cases"]] == ["inconclusive", "match", "inconclusive"]


def test_verify_output_is_deterministic_across_threads(capsys):
    args = ("verify", "C7", "--p-max", "1", "--n-max", "3", "--budget", "16")
    _, one, _ = run(capsys, *args, "--threads", "1")
    _, two, _ = run(capsys, *args, "--threads", "2")
    assert one == two


def test_budget_from_environment():
    env = {"SINGCHAIN_BUDGET": "3", "PATH": ""}
    out = subprocess.run(
        [sys.executable, "-m", "singchain.cli", "train", "search", "[2,6,2]"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert out.returncode == 2
    assert json.loads(out.stdout)["budget"] == 3


def test_replay_accepts_realize_output(capsys, monkeypatch):
    import io

    _, out, _ = run(capsys, "cusp", "realize", "[5,2,2]o", "--dual", "--max", "12")
    monkeypatch.setattr("sys.stdin", io.StringIO(out))
    code, replayed, _ = run(capsys, "cusp", "replay", "-")
    assert code == 0 and json.loads(replayed)["k2"] == json.loads(out)["k2"]
