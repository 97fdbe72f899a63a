import csv
import io
import json
import subprocess
import sys

import pytest

from xlag import __version__
from xlag.cli import main, parse_config, run
from xlag.errors import ConfigError


def doc(argv):
    return json.loads(run([*argv, "--reproducible"]))


def test_poly_json_schema():
    d = doc(["poly", "--k", "1", "--n-max", "2"])
    assert set(d) == {"command", "params", "results", "diagnostics", "version"}
    assert d["command"] == "poly" and d["version"] == __version__
    assert [r["degree"] for r in d["results"]] == [1, 2, 3]
    assert d["results"][0]["coefficients"] == [2.0, 1.0]
    assert "generated_at" not in d["diagnostics"]


def test_timestamp_only_without_reproducible():
    d = json.loads(run(["poly", "--k", "1", "--n-max", "0"]))
    assert "generated_at" in d["diagnostics"]


def test_csv_has_header_and_quotes():
    text = run(["poly", "--k", "1", "--n-max", "1", "--format", "csv", "--reproducible"])
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0][:3] == ["index", "eigenvalue", "degree"]
    assert rows[1][3] == "[2.0, 1.0]"
    assert len(rows) == 3


def test_spectrum_command():
    d = doc(["spectrum", "--k", "2", "--lambda-min", "-0.5", "--lambda-max", "5.5"])
    lams = [r["lambda"] for r in d["results"]]
    assert lams == pytest.approx([0, 1, 2, 3, 4, 5], abs=1e-5)
    empty = doc(["spectrum", "--k", "0.5", "--lambda-min", "0.2", "--lambda-max", "0.8"])
    assert empty["results"] == []


def test_classify_command():
    d = doc(["classify", "--variant", "note", "--k-grid", "2:4:0.5"])
    verdicts = [r["verdict"] for r in d["results"]]
    assert verdicts[0] == "LimitCircleNonOscillatory" and verdicts[-1] == "LimitPoint"


def test_gram_bracket_equiv_commands():
    g = doc(["gram", "--k", "1", "--size", "3"])
    assert len(g["results"]) == 9
    b = doc(["bracket", "--k", "1", "--n", "2"])
    assert len(b["results"]) == 8
    e = doc(["equiv", "--k", "2"])
    assert sorted(r["passed"] for r in e["results"]) == [False, True]


@pytest.mark.parametrize(
    "argv",
    [
        ["spectrum", "--k", "1", "--lambda-min", "3", "--lambda-max", "1"],
        ["poly", "--k", "-1"],
        ["poly", "--k", "1", "--n-max", "99"],
        ["gram", "--k", "1", "--engine", "simpson"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "xlag" in capsys.readouterr().err


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# settings\nformat = csv\nengine = adaptive\n")
    assert main(["gram", "--k", "1", "--size", "2", "--config", str(cfg), "--reproducible"]) == 0
    assert capsys.readouterr().out.startswith("i,j,value")
    cfg.write_text("colour = blue\n")
    assert main(["gram", "--k", "1", "--config", str(cfg)]) == 2
    assert main(["gram", "--k", "1", "--config", str(tmp_path / "missing.cfg")]) == 2


def test_parse_config():
    assert parse_config("quad-tol = 1e-10\njobs = 2") == {"quad_tol": 1e-10, "jobs": 2}
    with pytest.raises(ConfigError):
        parse_config("no equals sign")
    with pytest.raises(ConfigError):
        parse_config("unknown = 1")


def test_svg_output(tmp_path):
    pytest.importorskip("matplotlib")
    texts = []
    for argv in (["spectrum", "--k", "1", "--lambda-max", "2.5"], ["classify", "--k-grid", "2:4:1"],
                 ["poly", "--k", "1", "--n-max", "3"], ["bracket", "--k", "1"]):
        path = tmp_path / f"{argv[0]}.svg"
        out = run([*argv, "--svg", str(path), "--reproducible"])
        assert "<svg" not in out
        texts.append(path.read_text())
        assert texts[-1].lstrip().startswith("<?xml") and "<svg" in texts[-1]
    again = tmp_path / "again.svg"
    run(["bracket", "--k", "1", "--svg", str(again), "--reproducible"])
    assert again.read_text() == texts[-1]
    assert main(["gram", "--k", "1", "--svg", str(tmp_path / "g.svg")]) == 2


def test_report_is_deterministic_in_process():
    argv = ["report", "--k", "0.5,2", "--reproducible"]
    a, b = run(argv), run([*argv, "--jobs", "3"])
    assert a == b
    statuses = {r["status"] for r in json.loads(a)["results"]}
    assert "fail" not in statuses


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "xlag.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and __version__ in out.stdout
