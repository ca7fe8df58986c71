"""Report serialization and the command-line interface: canonical JSON,
golden corpus reports, and exit codes."""

import json
import math
import pathlib
import subprocess
import sys

import pytest

from stagedpaths import cli, fixtures, report

FIXTURE_DIR = pathlib.Path(fixtures.__file__).parent
GOLDEN_DIR = pathlib.Path(report.__file__).parent / "golden"


def fixture_file(name):
    return str(FIXTURE_DIR / f"{name}.ggd")


def run_cli(*argv):
    return cli.main(list(argv))


def test_encode_number():
    assert report.encode_number(7) == 7
    assert report.encode_number(math.inf) == "infinity"
    big = 2 ** 80
    assert report.encode_number(big) == str(big)
    assert report.encode_number(2 ** 53 - 1) == 2 ** 53 - 1


def test_json_roundtrip_byte_identical():
    for name in fixtures.FIXTURE_NAMES:
        text = (GOLDEN_DIR / f"{name}.json").read_text(encoding="utf-8")
        assert report.to_json(report.from_json(text)) == text


def test_analysis_report_field_order():
    doc = json.loads((GOLDEN_DIR / "ladder2.json").read_text())
    assert list(doc)[:8] == ["graph", "family", "limit", "ladder_depth",
                             "window", "rows", "verdicts", "witnesses"]
    assert list(doc["verdicts"]) == ["k_lower", "k_upper", "ml", "mu"]


def test_golden_ladder_values():
    doc = json.loads((GOLDEN_DIR / "ladder2.json").read_text())
    assert doc["verdicts"] == {"k_lower": 2, "k_upper": 2,
                               "ml": [2, 2], "mu": [2, 2]}
    assert len(doc["witnesses"]) == 2
    assert doc["audit"]["agreement"] is True


def test_golden_alternating_values():
    doc = json.loads((GOLDEN_DIR / "alt23.json").read_text())
    assert doc["verdicts"] == {"k_lower": 2, "k_upper": 3,
                               "ml": [2, 2], "mu": [3, 3]}


def test_golden_divergent_values():
    doc = json.loads((GOLDEN_DIR / "exp2.json").read_text())
    assert doc["verdicts"]["k_lower"] == "infinity"
    assert doc["probe"] == "infinite"


def test_golden_fork_values():
    doc = json.loads((GOLDEN_DIR / "fork.json").read_text())
    assert doc["non_hausdorff"] is True
    assert [d["verdicts"]["k_lower"] for d in doc["per_limit"]] == [2, 2]


def test_cli_examples_matches_golden(capsys):
    assert run_cli("examples") == 0
    out = capsys.readouterr().out
    assert all(f"{name}: ok" in out for name in fixtures.FIXTURE_NAMES)


def test_cli_validate(capsys):
    assert run_cli("validate", fixture_file("ladder2")) == 0
    assert "ladder2" in capsys.readouterr().out


def test_cli_principal(capsys):
    assert run_cli("principal", fixture_file("loop1")) == 0
    assert "not principal" in capsys.readouterr().out
    assert run_cli("principal", fixture_file("ladder2"), "--json") == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"graph": "ladder2", "principal": True, "cycle": []}


def test_cli_strength_text(capsys):
    assert run_cli("strength", fixture_file("alt23"),
                   "--family", "xs", "--limit", "z") == 0
    out = capsys.readouterr().out
    assert "k_lower = 2" in out
    assert "k_upper = 3" in out
    assert "item (5)" in out
    assert "even n" in out


def test_cli_strength_json_stable(capsys):
    args = ("strength", fixture_file("ladder2"),
            "--family", "xs", "--limit", "z", "--json")
    assert run_cli(*args) == 0
    first = capsys.readouterr().out
    assert run_cli(*args) == 0
    assert capsys.readouterr().out == first
    doc = json.loads(first)
    assert doc["verdicts"]["k_lower"] == 2


def test_cli_hausdorff(capsys):
    assert run_cli("hausdorff", fixture_file("fork"),
                   "--family", "xs", "--limits", "x,y") == 0
    assert "non-Hausdorff" in capsys.readouterr().out


def test_cli_window_and_ladder_flags(capsys):
    assert run_cli("strength", fixture_file("ladder2"), "--family", "xs",
                   "--limit", "z", "--ladder", "3", "--window", "2..9",
                   "--json") == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["ladder_depth"] == 3
    assert doc["window"] == [2, 9]
    assert len(doc["rows"]) == 3


def test_cli_exit_code_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.ggd"
    bad.write_text("graph g { repeat }")
    assert run_cli("validate", str(bad)) == 2
    assert run_cli("strength", str(bad), "--family", "xs", "--limit", "z") == 2
    assert run_cli("strength", fixture_file("ladder2"),
                   "--family", "nope", "--limit", "z") == 2
    capsys.readouterr()


CYCLIC_DOC = """
graph cyc {
  repeat {
    block A {
      vertex v, w;
      edge f range v source w;
      edge loopback range w source w;
      ray t attach w;
    }
  }
  cross A -> A {
    edge spine range v source v;
  }
}
path z { prefix ; tail descent [spine] from stage 1 ; }
family xs { descend z to n ; pivot f ; tail ray t at stage n ; min 1 ; }
"""


def test_cli_exit_code_refusal(tmp_path, capsys):
    # a within-edge self-loop breaks principality: analysis refuses (exit 1)
    doc = tmp_path / "cyc.ggd"
    doc.write_text(CYCLIC_DOC)
    code = run_cli("strength", str(doc), "--family", "xs", "--limit", "z")
    assert code == 1
    assert "refused" in capsys.readouterr().err


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "stagedpaths.cli", "principal",
         fixture_file("fork")],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "principal" in proc.stdout
