from __future__ import annotations

import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from hypersing.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_analyze_odp():
    code, text = run("analyze", "--poly", "x^2+y^2+z^2+w^2")
    doc = json.loads(text)
    assert code == 0
    assert doc["schema_version"] == "1"
    assert doc["classification"] == "1-liminal"
    assert doc["mu"] == 1
    assert doc["alpha_tilde"] == "2/1"
    assert list(doc)[:3] == ["schema_version", "input", "n"]


def test_analyze_fermat_cubic():
    code, text = run("analyze", "--poly", "x1^3+x2^3+x3^3+x4^3+x5^3")
    doc = json.loads(text)
    assert doc["classification"] == "strongly-1-irrational"
    assert doc["dim_K"] == 6
    assert doc["spectrum"][0] == {"value": "2/3", "multiplicity": 1}


def test_analyze_not_isolated(capsys):
    code, text = run("analyze", "--poly", "x^2", "--vars", "x,y")
    assert code == 2
    assert text == ""
    assert "NotIsolated" in capsys.readouterr().err


def test_analyze_parse_error(capsys):
    code, _ = run("analyze", "--poly", "x^2+*y")
    assert code == 3
    assert "position" in capsys.readouterr().err


def test_analyze_not_on_hypersurface():
    assert run("analyze", "--poly", "1+x^2+y^2")[0] == 2


def test_analyze_from_file(tmp_path):
    p = tmp_path / "f.txt"
    p.write_text("x^3+y^4+z^2+w^2\n")
    code, text = run("analyze", "--file", str(p), "--format", "text")
    assert code == 0 and "mu                6" in text
    assert run("analyze", "--file", str(tmp_path / "missing.txt"))[0] == 3
    assert run("analyze")[0] == 3


def test_analyze_csv():
    code, text = run("analyze", "--poly", "x^5+y^5+x^3*y^3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0
    assert rows[0]["mu"] == "16" and rows[0]["tau"] == "15"
    assert rows[0]["classification"] == "undetermined"


def test_bad_arguments_are_input_errors():
    assert run("analyze", "--format", "xml", "--poly", "x^2")[0] == 3
    assert run("frobnicate")[0] == 3


def test_table_fermat():
    code, text = run("table", "fermat_cone", "--n", "3..6", "--d", "2..6")
    assert code == 0
    assert "\r" not in text
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 20
    for r in rows:
        n, d = int(r["n"]), int(r["d"])
        assert (r["rational"] == "true") == (d <= n)
        assert (r["one_irrational"] == "true") == (2 * d >= n + 1)
        assert (r["one_liminal"] == "true") == (2 * d == n + 1)


def test_table_example_family():
    code, text = run("table", "example_2_10", "--k", "2..4")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["classification"] for r in rows] == ["1-liminal"] * 3
    assert {r["link_invariant"] for r in rows} == {"1"}


def test_table_brieskorn_sweep():
    code, text = run("table", "brieskorn", "--exponents", "2,2,2,2n", "--n", "1..6")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [int(r["mu"]) for r in rows] == [2 * n - 1 for n in range(1, 7)]


def test_table_formats_and_errors():
    code, text = run("table", "example_2_10", "--k", "2", "--format", "json")
    assert json.loads(text)["rows"][0]["mu"] == "9"
    code, text = run("table", "example_2_10", "--k", "2", "--format", "text")
    assert text.splitlines()[0].startswith("family")
    assert run("table", "brieskorn")[0] == 3
    assert run("table", "fermat_cone", "--n", "3..1")[0] == 3
    assert run("table", "brieskorn", "--exponents", "2,1")[0] == 3


def test_table_guard():
    code, _ = run("table", "fermat_cone", "--n", "3", "--d", "3", "--guard-basis", "1")
    assert code == 2


@pytest.mark.parametrize(
    "name, code, decision",
    [
        ("cy_two_odp.json", 0, "smoothable"),
        ("fano_rational_3fold.json", 0, "smoothable"),
        ("cy_one_rational_point.json", 1, "criterion_fails"),
        ("cy_no_relation.json", 1, "criterion_fails"),
    ],
)
def test_smooth_check(name, code, decision):
    rc, text = run("smooth-check", str(CONFIGS / name))
    doc = json.loads(text)
    assert rc == code
    assert doc["decision"] == decision


def test_smooth_check_witness_and_reason():
    doc = json.loads(run("smooth-check", str(CONFIGS / "cy_two_odp.json"))[1])
    assert doc["witness"] == ["1/1", "1/1"]
    doc = json.loads(run("smooth-check", str(CONFIGS / "cy_one_rational_point.json"))[1])
    assert doc["reason"].startswith("good configuration violated")


def test_smooth_check_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    flags = {"h1_O_vanishes": True, "deformations_unobstructed": True}
    bad.write_text(json.dumps({"kind": "calabi_yau", "n": 3, "points": [], "phi": [["x"]], "flags": flags}))
    assert run("smooth-check", str(bad))[0] == 3
    assert "/phi/0/0" in capsys.readouterr().err
    unclassified = tmp_path / "u.json"
    unclassified.write_text(
        json.dumps(
            {
                "kind": "calabi_yau",
                "n": 3,
                "points": [{"id": "p", "poly": "x^5+y^5+x^3*y^3+z^2+w^2"}],
                "phi": [],
                "flags": flags,
            }
        )
    )
    assert run("smooth-check", str(unclassified))[0] == 2
    assert run("smooth-check", str(tmp_path / "none.json"))[0] == 3


def test_oracle_verify_fault_injection(tmp_path, capsys):
    corpus = tmp_path / "corpus.json"
    corpus.write_text(
        json.dumps(
            [
                {"name": "odp", "poly": "x^2+y^2+z^2+w^2", "mu": 1},
                {"name": "wrong-cubic", "poly": "x^3+y^3+z^3+w^3", "mu": 17},
            ]
        )
    )
    code, text = run("oracle-verify", "--corpus", str(corpus), "--trials", "5")
    assert code == 1
    assert "FAIL corpus:wrong-cubic" in text
    assert "wrong-cubic" in capsys.readouterr().err


def test_oracle_verify_default():
    code, text = run("oracle-verify")
    assert code == 0, text
    assert "kernel-sweep" in text


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hypersing", "analyze", "--poly", "x^2+y^2+z^2+w^2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["mu"] == 1
