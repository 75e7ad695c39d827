import json
import subprocess
import sys

from bairespace import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    assert out.endswith("\n") and out.count("\n") == 1
    doc = json.loads(out)
    assert json.loads(json.dumps(doc)) == doc
    return code, doc


def test_seq_commands(capsys):
    assert run(capsys, "seq", "encode", "[0]") == (0, 1)
    assert run(capsys, "seq", "decode", "3") == (0, [0, 0])
    assert run(capsys, "seq", "kb", "[0,0]", "[0]") == (0, "less")
    assert run(capsys, "seq", "le-star", "[0,1]", "[2,1]") == (0, True)
    assert run(capsys, "seq", "parts", "[5,7,9]") == (0, {"I": [5, 9], "II": [7]})


def test_stump_files(capsys, tmp_path):
    (tmp_path / "empty.json").write_text('{"empty": true}')
    one = {"prefix": [], "cycle": [{"empty": True}]}
    (tmp_path / "one.json").write_text(json.dumps(one))
    assert run(capsys, "stump", "leq", str(tmp_path / "empty.json"), str(tmp_path / "one.json")) == (0, True)
    assert run(capsys, "stump", "lt", "one", "one") == (0, False)
    code, succ = run(capsys, "stump", "succ", "one")
    assert succ == {"prefix": [], "cycle": [one]}
    code, doc = run(capsys, "stump", "critical", "one", "--depth", "2")
    assert code == 0 and len(doc["sequence"]) == 2
    code, doc = run(capsys, "stump", "embed", "one", json.dumps(succ))
    assert code == 0 and doc[0] == [[], []]
    assert run(capsys, "stump", "embed", json.dumps(succ), "one") == (0, None)


def test_tree_der_on_closures(capsys, tmp_path):
    (tmp_path / "one-star.json").write_text('"1*"')
    for family in ("cb", "cbstar"):
        code, doc = run(capsys, "tree", "cb", "--family", family, "1*")
        (tmp_path / f"{family}-one-star.json").write_text(json.dumps(doc["closure"]))
    code, doc = run(capsys, "tree", "der", "--stump", str(tmp_path / "one-star.json"),
                    str(tmp_path / "cb-one-star.json"))
    assert (code, doc) == (0, {"root": None, "states": []})
    # The closure of CB*_{1*} keeps its one limit point 0̲.
    code, doc = run(capsys, "tree", "der", "--stump", str(tmp_path / "one-star.json"),
                    str(tmp_path / "cbstar-one-star.json"))
    assert code == 0 and doc["root"] is not None
    _, member = run(capsys, "tree", "member", json.dumps(doc), '{"prefix": [], "cycle": [0]}')
    assert member is True


def test_tree_commands(capsys):
    assert run(capsys, "tree", "bar01", "2") == (0, [[0, 0], [0, 1], [1]])
    assert run(capsys, "tree", "is-fan", "cantor") == (0, True)
    assert run(capsys, "tree", "member", "cantor", "[0,1,1]") == (0, True)
    code, bar = run(capsys, "tree", "bar-extract", "cantor", "--min-length", "3")
    assert code == 0 and len(bar) == 8
    code, doc = run(capsys, "tree", "paths", "cantor")
    assert doc["path"] == {"prefix": [], "cycle": [0]}


def test_reduce_and_check(capsys):
    code, doc = run(capsys, "reduce", "build", "e11_to_share_inf")
    assert code == 0 and doc["directions"] == ["fwd", "bwd"]
    code, doc = run(capsys, "reduce", "apply", "sigma11_to_e11", '{"code": "baire"}',
                    "--point", "[3]", "--length", "5")
    assert (code, doc["image"]) == (0, [0] * 5)
    code, doc = run(capsys, "reduce", "witness", "e11_to_share_inf", "--data", '{"path": [2]}')
    assert doc["witness"]["point"] == {"ev": {"prefix": [0, 0, 1], "cycle": [1]}}
    code, doc = run(capsys, "check", "Fin", "--point", "[1, 1]", "--fuel", "20")
    assert (code, doc["status"]) == (0, "holds")


def test_exit_codes(capsys):
    assert run(capsys, "seq", "decode", "{bad")[0] == 3
    assert run(capsys, "frobnicate")[0] == 3
    code, doc = run(capsys, "reduce", "build", "no_such_entry")
    assert code == 1 and doc["error"] == "domain"
    code, doc = run(capsys, "reduce", "apply", "fan_surjection", '{"tree": "cantor"}',
                    "--point", "[1]", "--fuel", "1")
    assert code == 2 and doc["error"] == "fuel-exhausted"


def test_suite_exit_code(capsys):
    code, doc = run(capsys, "--seed", "1", "suite", "bar01")
    assert code == 0 and doc["passed"]
    code, doc = run(capsys, "suite", "cb")
    assert code == 1 and not doc["passed"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bairespace", "seq", "encode", "[0]"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "1\n"
