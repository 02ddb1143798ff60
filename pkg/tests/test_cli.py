from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from schubpuzzle import __version__, cli
from schubpuzzle.cli import BAD_INPUT, DISAGREE, FAILED, OK, main


def run(*argv: str) -> tuple[int, str]:
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_multiply_table():
    code, text = run("multiply", "--pi", "1362547", "--rho", "7321456", "--method", "both")
    assert code == OK
    assert text.splitlines()[0].split() == ["sigma", "coefficient", "puzzles"]
    assert len(text.splitlines()) == 5


def test_multiply_json_is_self_describing():
    code, text = run("multiply", "--pi", "2431", "--rho", "2134", "--theory", "KT", "--k", "1", "--json")
    doc = json.loads(text)
    assert code == OK and doc["version"] == __version__
    assert doc["request"]["pi"] == "2431" and doc["rule"] == "sepdesc"
    assert {r["sigma"]: r["coefficient"] for r in doc["constants"]}["4321"] == "-y1^-1*y2"


def test_multiply_picks_the_almost_rule():
    code, text = run("multiply", "--pi", "2543167", "--rho", "4132567", "--json")
    doc = json.loads(text)
    assert code == OK and doc["rule"] == "almostsep" and len(doc["constants"]) == 7


def test_multiply_padding_is_stable():
    code, text = run("multiply", "--pi", "132", "--rho", "213", "--pad", "5", "--json")
    doc = json.loads(text)
    assert code == OK and all(p["stable"] for p in doc["padding"])


def test_disagreement_exit_code(monkeypatch):
    from schubpuzzle.schubring import SchubertExpansion

    monkeypatch.setattr(cli, "oracle_constants", lambda *a, **k: SchubertExpansion({}, n=3))
    code, text = run("multiply", "--pi", "132", "--rho", "132", "--method", "both")
    assert code == DISAGREE and "DISAGREEMENT" in text


@pytest.mark.parametrize("argv", [
    ["multiply", "--pi", "1224", "--rho", "1"],
    ["multiply", "--pi", "4321", "--rho", "4321"],
    ["multiply", "--pi", "2543167", "--rho", "4132567", "--theory", "HT"],
    ["puzzles", "--lambda", "_2_2", "--mu", "10_"],
    ["puzzles", "--lambda", "xyz", "--mu", "10__"],
    ["verify", "--n", "3", "--samples", "many"],
])
def test_bad_input_exit_code(argv):
    assert run(*argv)[0] == BAD_INPUT


def test_puzzles_and_render(tmp_path):
    target = tmp_path / "p.svg"
    code, text = run("puzzles", "--lambda", "_3_43_4", "--mu", "_21___0", "--k", "2", "--d", "4",
                     "--render", str(target))
    assert code == OK and text.startswith("4 puzzles")
    assert len(list(tmp_path.glob("p-*.svg"))) == 4


def test_puzzles_json_for_the_almost_rule():
    code, text = run("puzzles", "--lambda", "1_20___", "--mu", "4_32_44", "--rule", "almostsep", "--json")
    doc = json.loads(text)
    assert code == OK and doc["count"] == 7 and len(doc["puzzles"]) == 7


def test_encode():
    code, text = run("encode", "--pi", "1362547", "--rho", "7321456", "--rule", "sepdesc", "--json")
    doc = json.loads(text)
    assert code == OK
    assert {"lambda": "_3_43_4", "mu": "_21___0"}.items() <= doc["encodings"][0].items()


def test_euler():
    code, text = run("euler", "--lambda", "_2_2", "--mu", "10__", "--nu", "2120", "--k", "1", "--d", "2")
    assert code == OK and text.strip() == "puzzles=3 dim=2 chi=3"


def test_verify_is_seeded():
    a = run("verify", "--n", "4", "--samples", "10", "--theory", "K", "--seed", "3", "--json")
    b = run("verify", "--n", "4", "--samples", "10", "--theory", "K", "--seed", "3", "--json")
    assert a == b and a[0] == OK
    doc = json.loads(a[1])
    assert doc["seed"] == 3 and doc["checked"] == 10 and doc["failed"] == 0


def test_verify_reports_a_reproducer(monkeypatch):
    from schubpuzzle.permcore import Permutation

    bad = Permutation("21")
    monkeypatch.setattr(cli, "_agrees", lambda pi, rho, rule, theory, n, rng: bad not in (pi, rho))
    code, text = run("verify", "--n", "3", "--samples", "all", "--json")
    doc = json.loads(text)
    assert code == FAILED and doc["failed"] > 0 and doc["reproducer"]["n"] == 2
    assert "21" in (doc["reproducer"]["pi"], doc["reproducer"]["rho"])


def test_console_script_runs():
    r = subprocess.run([sys.executable, "-m", "schubpuzzle.cli", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == __version__
