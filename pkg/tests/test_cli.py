import json
import subprocess
import sys

from quadtower.cli import main


def test_verify_groups(capsys, tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--suite", "groups", "--json", str(out)]) == 0
    text = capsys.readouterr().out
    assert "PASS  groups-structural" in text and "3/3 checks passed" in text
    data = json.loads(out.read_text())
    assert {c["check"] for c in data} == {"groups-structural", "groups-d4-series", "groups-frattini"}
    assert all(set(c) == {"check", "paper_ref", "pass", "witness", "samples"} for c in data)


def test_verify_fragment(capsys):
    assert main(["verify", "--suite", "lemmas", "--fragment", "Q{2,-1}"]) == 0
    assert "lemma1[Q{2,-1}]" in capsys.readouterr().out


def test_verify_bad_fragment(capsys):
    assert main(["verify", "--fragment", "R{2}"]) == 2
    assert "error" in capsys.readouterr().err


def test_series_named_and_cycles(capsys):
    assert main(["series", "--group", "D4"]) == 0
    named = capsys.readouterr().out
    assert "G(2) order    2" in named and "5 involutions" in named
    assert main(["series", "--group", "(1 2 3 4),(1 3)", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [lv["subgroup_order"] for lv in data["levels"]] == [8, 2, 1]
    assert all(data["structural"].values())


def test_symbol(capsys):
    assert main(["symbol", "-1", "-1", "--place", "real"]) == 0
    assert "= -1" in capsys.readouterr().out
    assert main(["symbol", "3", "5", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["a"] == "3" and {(p["place"], p["symbol"]) for p in data["places"]} >= {("3", -1), ("5", -1)}


def test_example1(capsys):
    assert main(["example1", "--no-stress", "--trace"]) == 0
    out = capsys.readouterr().out
    assert "claim1-parity-trace" in out and "irr:t+i" in out
    assert main(["example1", "--square-class", "(t-i)^2*(t+2*i)"]) == 0
    assert capsys.readouterr().out.strip() == "[irr:t+2*i]"
    assert main(["example1", "--r", "0", "1", "--bc", "0,1", "--no-d4", "--no-stress"]) == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "quadtower", "symbol", "2", "7", "--place", "7"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "(2, 7)_7 = +1"
