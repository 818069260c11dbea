import json

import pytest

from orbiflow import cli, render, report
from orbiflow.config import DEFAULT_SEARCH, DEFAULT_TOL


def test_verify_single_case_passes(tmp_path, capsys):
    out = tmp_path / "report.json"
    rc = cli.main(["verify", "--case", "237", "--json", str(out)])
    assert rc == 0
    text = capsys.readouterr().out
    assert "VERIFICATION PASSED" in text
    payload = json.loads(out.read_text())
    assert payload["schema_version"] == 1
    assert payload["pass"] is True
    assert payload["cases"][0]["case"] == 237


def test_verify_unknown_case_exit_2(capsys):
    assert cli.main(["verify", "--case", "999"]) == 2
    assert "unknown case" in capsys.readouterr().err


def test_verify_bad_depth_exit_2(capsys):
    assert cli.main(["verify", "--case", "237", "--depth", "0"]) == 2


def test_verify_depth_too_small_exit_2(capsys):
    assert cli.main(["verify", "--case", "237", "--depth", "1"]) == 2
    assert "trigroup" in capsys.readouterr().err


def test_json_roundtrip(tmp_path):
    out = tmp_path / "r.json"
    assert cli.main(["verify", "--case", "245", "--json", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert json.loads(json.dumps(payload)) == payload
    checks = {c["check_id"]: c for c in payload["cases"][0]["checks"]}
    assert checks["adjacency_total"]["expected"] == 5
    assert checks["adjacency_total"]["pass"] is True


def test_report_deterministic_bytes(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["verify", "--case", "246", "--json", str(p1)]) == 0
    assert cli.main(["verify", "--case", "246", "--json", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_tiling_svg_written(tmp_path, capsys):
    out = tmp_path / "t.svg"
    rc = cli.main(["tiling", "--case", "237", "--depth", "4", "--out", str(out)])
    assert rc == 0
    svg = out.read_text()
    assert svg.startswith("<svg")
    # The distinguished tile is highlighted.
    assert "#ffd92f" in svg and "#fc8d62" in svg
    assert svg.count("<path") > 10


def test_tiling_depth_zero_exit_2(capsys):
    assert cli.main(["tiling", "--case", "237", "--depth", "0",
                     "--out", "/tmp/unused.svg"]) == 2


def test_tiling_case_all_rejected(capsys):
    assert cli.main(["tiling", "--case", "all", "--out", "/tmp/u.svg"]) == 2


def test_tiling_deterministic(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert cli.main(["tiling", "--case", "334", "--depth", "4", "--out", str(a)]) == 0
    assert cli.main(["tiling", "--case", "334", "--depth", "4", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_tiling_334_has_three_families(tmp_path):
    out = tmp_path / "t334.svg"
    assert cli.main(["tiling", "--case", "334", "--depth", "5",
                     "--out", str(out)]) == 0
    svg = out.read_text()
    # Octagon family around the order-4 points plus two triangle families.
    assert "#fcbba1" in svg  # R-family fill
    assert "#c6dbef" in svg  # P-family fill
    assert "#c7e9c0" in svg  # Q-family fill


def test_catmap_period_one(capsys):
    assert cli.main(["catmap", "--period", "1"]) == 0
    out = capsys.readouterr().out
    assert "period dividing 1: 1" in out
    assert "(0/1, 0/1)" in out


def test_catmap_period_two(capsys):
    assert cli.main(["catmap", "--period", "2"]) == 0
    out = capsys.readouterr().out
    assert "period dividing 2: 5" in out
    assert "(3/5, 1/5)" in out and "(1/5, 2/5)" in out


def test_catmap_period_three_count(capsys):
    assert cli.main(["catmap", "--period", "3"]) == 0
    out = capsys.readouterr().out
    assert "period dividing 3: 16" in out


def test_catmap_out_of_range(capsys):
    assert cli.main(["catmap", "--period", "0"]) == 2
    assert cli.main(["catmap", "--period", "13"]) == 2


def test_exit_code_matches_pass_flag(tmp_path):
    out = tmp_path / "all.json"
    rc = cli.main(["verify", "--case", "334", "--json", str(out)])
    payload = json.loads(out.read_text())
    assert (rc == 0) == payload["pass"]


def test_geodesic_path_formats():
    from orbiflow.hyp2 import Geodesic
    path = render.geodesic_path(Geodesic(0.5, 2.0))
    assert path.startswith("M ")
    assert "A" in path
    # (-1, 1) passes through the disc center: rendered as a diameter.
    diameter = render.geodesic_path(Geodesic(-1.0, 1.0))
    assert "L" in diameter and "A" not in diameter


def test_run_verification_report_shape():
    rep = report.run_verification(237, DEFAULT_SEARCH, DEFAULT_TOL)
    d = rep.as_dict()
    assert set(d) == {"schema_version", "pass", "config", "cases", "global"}
    assert all({"check_id", "expected", "actual", "pass"} == set(c)
               for c in d["cases"][0]["checks"])
