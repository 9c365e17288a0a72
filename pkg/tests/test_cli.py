import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from corp import ForecastDataset, ValidationError, build_diagram
from corp.cli import main
from corp.fileio import emit_report, format_csv, ingest_csv, parse_csv, read_columns
from corp.svg import render_svg

THREE = "forecast,outcome\n0.2,1\n0.4,0\n0.6,1\n"


@pytest.fixture
def three_csv(tmp_path):
    p = tmp_path / "three.csv"
    p.write_text(THREE)
    return p


def test_ingest_basic():
    d = parse_csv("forecast,outcome\n0.2,1\n0.4,0\n")
    assert d.n == 2
    assert d.forecasts.tolist() == [0.2, 0.4] and d.outcomes.tolist() == [1, 0]


def test_crlf_matches_lf():
    a = parse_csv(THREE)
    b = parse_csv(THREE.replace("\n", "\r\n"))
    assert a.forecasts.tobytes() == b.forecasts.tobytes()
    assert a.outcomes.tobytes() == b.outcomes.tobytes()


@pytest.mark.parametrize(
    "text, msg",
    [
        ("", "empty input"),
        ("forecast,outcome\n", "empty input"),
        ("0.2,1\n", "missing header"),
        ("forecast,outcome\n1.2,0\n", "row 1: forecast out of range"),
        ("forecast,outcome\n0.2,1\nabc,0\n", "row 2: non-numeric"),
        ("forecast,outcome\n0.2,2\n", "row 1: outcome"),
        ("forecast,outcome\n0.2\n", "row 1: expected 2 fields"),
        ("forecast,outcome\nnan,1\n", "row 1: forecast out of range"),
    ],
)
def test_ingest_errors(text, msg):
    with pytest.raises(ValidationError, match=msg):
        parse_csv(text)


@given(st.lists(st.tuples(st.floats(0, 1), st.integers(0, 1)), min_size=1, max_size=50))
@settings(max_examples=200, deadline=None)
def test_csv_round_trip(rows):
    d = ForecastDataset.from_arrays([r[0] for r in rows], [r[1] for r in rows])
    back = parse_csv(format_csv(d))
    assert back.forecasts.tobytes() == d.forecasts.tobytes()
    assert back.outcomes.tobytes() == d.outcomes.tobytes()


def test_read_columns(tmp_path):
    p = tmp_path / "cols.csv"
    p.write_text('"date","ENS","obs"\n2016-07-01,0.5,1\n2016-07-02,NA,0\n')
    cols = read_columns(p)
    assert list(cols) == ["date", "ENS", "obs"]
    assert np.isnan(cols["ENS"][1]) and cols["obs"].tolist() == [1.0, 0.0]


def test_report_schema():
    dia = build_diagram(parse_csv(THREE))
    doc = json.loads(emit_report(dia))
    assert list(doc) == ["schema", "n", "k", "mode", "points", "bins", "histogram", "decomposition"]
    assert doc["schema"] == "corp/1"
    dec = doc["decomposition"]
    assert dec["mean_score"] == pytest.approx(0.32)
    assert dec["mcb"] == pytest.approx(0.32 - 1 / 6)
    assert dec["dsc"] == pytest.approx(1 / 18)
    assert dec["unc"] == pytest.approx(2 / 9)
    assert "0.20000000000000001" in emit_report(dia)


def test_svg_contents():
    data = parse_csv(THREE)
    svg = render_svg(build_diagram(data))
    assert svg.startswith("<svg") and 'height="720"' in svg
    assert 'class="band"' not in svg
    assert svg.count('class="point"') == 3
    assert "MCB 0.153" in svg
    assert render_svg(build_diagram(data)) == svg
    rng = np.random.default_rng(0)
    x = rng.random(300)
    cont = build_diagram(ForecastDataset(x, (rng.random(300) < x).astype(int)), band_spec=None)
    assert 'class="point"' not in render_svg(cont)


def test_cli_decompose(three_csv, capsys):
    assert main(["decompose", str(three_csv), "--rule", "brier"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["mean_score"] == pytest.approx(0.32)
    assert doc["rule"] == "brier"


def test_cli_diagram_outputs(three_csv, tmp_path):
    out_json, out_svg = tmp_path / "r.json", tmp_path / "r.svg"
    argv = ["diagram", str(three_csv), "--band", "consistency", "--replicates", "50",
            "--seed", "3", "--out-json", str(out_json), "--out-svg", str(out_svg)]
    assert main(argv) == 0
    doc = json.loads(out_json.read_text())
    assert doc["band"]["method"] == "resampling" and list(doc)[-2:] == ["band", "decomposition"]
    assert 'class="band"' in out_svg.read_text()


def test_cli_seed_from_environment(three_csv, tmp_path, monkeypatch):
    outs = []
    for seed in ("5", "5", "6"):
        monkeypatch.setenv("CORP_SEED", seed)
        p = tmp_path / f"{len(outs)}.json"
        assert main(["diagram", str(three_csv), "--band", "confidence", "--replicates", "30", "--out-json", str(p)]) == 0
        outs.append(p.read_text())
    assert outs[0] == outs[1]
    monkeypatch.setenv("CORP_SEED", "x")
    assert main(["diagram", str(three_csv), "--band", "confidence"]) == 1


def test_cli_murphy(three_csv, capsys):
    assert main(["murphy", str(three_csv), "--thresholds", "9"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "threshold,mean_score,mcb,dsc,unc" and len(lines) == 10
    assert float(lines[5].split(",")[0]) == 0.5


def test_cli_simulate_mse(capsys):
    argv = ["simulate", "mse", "--scenario", "uniform-continuous", "--n", "128", "--replicates", "3", "--seed", "7"]
    assert main(argv) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 8
    assert lines[1].startswith("uniform-continuous,corp,128,")


def test_cli_simulate_coverage(capsys):
    argv = ["simulate", "coverage", "--scenario", "uniform-discrete10", "--n", "100", "--replicates", "3",
            "--band-replicates", "50", "--level", "0.9", "--level", "0.5"]
    assert main(argv) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [line.split(",")[1] for line in lines[1:]] == ["consistency-0.9-auto", "consistency-0.5-auto"]


@pytest.mark.parametrize(
    "argv, code",
    [
        (["diagram"], 1),
        (["diagram", "x.csv", "--bogus"], 1),
        (["nope"], 1),
        (["decompose", "missing.csv"], 2),
        (["diagram", "THREE", "--level", "1.5", "--band", "consistency"], 1),
        (["simulate", "mse", "--scenario", "bad", "--n", "10"], 1),
        (["murphy", "THREE", "--thresholds", "0"], 1),
    ],
)
def test_cli_exit_codes(argv, code, three_csv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    argv = [str(three_csv) if a == "THREE" else a for a in argv]
    assert main(argv) == code


def test_cli_validation_error_exit(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("forecast,outcome\n1.2,0\n")
    assert main(["decompose", str(p)]) == 1


def test_cli_output_write_failure(three_csv, tmp_path):
    assert main(["decompose", str(three_csv), "--out-json", str(tmp_path / "no" / "such" / "dir.json")]) == 2
