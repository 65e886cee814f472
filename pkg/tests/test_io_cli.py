import json
from fractions import Fraction

import pytest

from sympolar.cli import run
from sympolar.io import (
    MalformedInputError,
    parse_rational,
    polytope_from_dict,
    polytope_to_dict,
    read_polytope,
    write_polytope,
)

F = Fraction


# --- rational parsing -------------------------------------------------------


def test_parse_rational_forms():
    assert parse_rational("7/2") == F(7, 2)
    assert parse_rational("-3") == F(-3)
    assert parse_rational(5) == F(5)


@pytest.mark.parametrize("bad", ["3.5", "1e3", "7/0", "1/2/3", True, 2.5, None, "1/-2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(MalformedInputError):
        parse_rational(bad)


# --- polytope round trip ----------------------------------------------------


def test_polytope_round_trip(tmp_path, hexa, p2):
    for name, poly in (("hexa", hexa), ("p2", p2)):
        path = tmp_path / f"{name}.json"
        write_polytope(path, poly)
        assert read_polytope(path) == poly


def test_polytope_dict_shape(hexa):
    data = polytope_to_dict(hexa)
    assert data["dim"] == 2
    assert data["vertices"][0] == ["-1", "-1"]
    assert polytope_from_dict(data) == hexa


def test_reader_rejects_floats(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dim": 2, "vertices": [[0.5, 1], [1, 0], [-1, 0], [0, -1], [-1, -1]]}')
    with pytest.raises(MalformedInputError):
        read_polytope(path)


def test_reader_rejects_wrong_arity(tmp_path):
    path = tmp_path / "bad2.json"
    path.write_text('{"dim": 3, "vertices": [["1", "0"], ["0", "1"]]}')
    with pytest.raises(MalformedInputError):
        read_polytope(path)


def test_reader_rejects_non_json(tmp_path):
    path = tmp_path / "bad3.json"
    path.write_text("nope")
    with pytest.raises(MalformedInputError):
        read_polytope(path)


# --- CLI --------------------------------------------------------------------


def _call(tmp_path, *argv):
    return run(["--out-dir", str(tmp_path), *argv])


def test_cli_power_suspend_volume(tmp_path, capsys):
    assert _call(tmp_path, "power-suspend", "2", "--out", "p2.json") == 0
    assert _call(tmp_path, "volume", str(tmp_path / "p2.json")) == 0
    out = capsys.readouterr().out
    assert "7/2 (3.5)" in out


def test_cli_ehz_with_certificate(tmp_path, capsys):
    _call(tmp_path, "power-suspend", "2", "--out", "p2.json")
    code = _call(tmp_path, "ehz", str(tmp_path / "p2.json"), "--mode", "vertices")
    assert code == 0
    out = capsys.readouterr().out
    assert "5/2 (2.5)" in out
    cert_path = tmp_path / "p2.cert.json"
    assert cert_path.exists()
    data = json.loads(cert_path.read_text())
    assert set(data) == {"kind", "indices", "coeffs", "objective"}
    assert data["objective"] == "2/5"
    code = _call(
        tmp_path, "certify", str(tmp_path / "p2.json"), str(cert_path)
    )
    assert code == 0
    assert "c_EHZ <= 5/2" in capsys.readouterr().out


def test_cli_selfpolar_and_sympolar_agree(tmp_path, capsys):
    _call(tmp_path, "power-suspend", "2", "--out", "p2.json")
    assert _call(tmp_path, "selfpolar-check", str(tmp_path / "p2.json")) == 0
    assert capsys.readouterr().out.strip().endswith("true")
    assert (
        _call(tmp_path, "sympolar", str(tmp_path / "p2.json"), "--out", "polar.json")
        == 0
    )
    capsys.readouterr()
    assert read_polytope(tmp_path / "polar.json") == read_polytope(tmp_path / "p2.json")


def test_cli_shadow_cj(tmp_path, capsys):
    _call(tmp_path, "power-suspend", "2", "--out", "p2.json")
    assert _call(tmp_path, "shadow", str(tmp_path / "p2.json")) == 0
    assert _call(tmp_path, "cj", str(tmp_path / "p2.json")) == 0
    out = capsys.readouterr().out
    assert "3 (3.0)" in out
    assert "1 (1.0)" in out


def test_cli_suspend_roundtrip(tmp_path, capsys, hexa):
    write_polytope(tmp_path / "hexa.json", hexa)
    assert (
        _call(tmp_path, "suspend", str(tmp_path / "hexa.json"), "--out", "s.json") == 0
    )
    from sympolar.suspension import power_suspend

    assert read_polytope(tmp_path / "s.json") == power_suspend(2, cache_dir=tmp_path)


def test_cli_generate(tmp_path, capsys):
    code = _call(
        tmp_path,
        "generate",
        "--dim",
        "2",
        "--k",
        "4",
        "--runs",
        "2",
        "--seed",
        "3",
        "--csv",
        "runs.csv",
        "--svg",
        "runs.svg",
    )
    assert code == 0
    assert (tmp_path / "runs.csv").exists()
    assert (tmp_path / "runs.svg").exists()


def test_cli_sequences(tmp_path, capsys):
    assert _call(tmp_path, "sequences", "--kind", "viterbo", "--n", "2") == 0
    assert "28/25" in capsys.readouterr().out
    assert _call(tmp_path, "sequences", "--kind", "compare", "--n", "1") == 0
    assert "1/3 * pi" in capsys.readouterr().out
    assert _call(tmp_path, "sequences", "--kind", "viterbo", "--check", "50") == 0


def test_cli_enumerate_pm1_dim2(tmp_path, capsys):
    code = _call(tmp_path, "enumerate-pm1", "--dim", "2", "--out", "report.json")
    assert code == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert len(report) == 1
    assert report[0]["vertices"] == 6
    assert report[0]["volume"] == "3"
    assert report[0]["count"] == 2


def test_cli_table1_budgeted(tmp_path, capsys):
    assert _call(tmp_path, "table1", "--budget", "30") == 0
    out = capsys.readouterr().out
    assert "|V(K)|" in out
    assert "partial" in out


def test_cli_exit_codes(tmp_path, capsys):
    # unknown subcommand -> usage
    assert run(["bogus"]) == 2
    # malformed file -> 3
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "vertices": [[0.25, "1"]]}')
    assert _call(tmp_path, "volume", str(bad)) == 3
    # missing file -> 3
    assert _call(tmp_path, "volume", str(tmp_path / "missing.json")) == 3
    # budget exhaustion -> 4
    _call(tmp_path, "power-suspend", "2", "--out", "p2.json")
    capsys.readouterr()
    assert (
        _call(
            tmp_path,
            "ehz",
            str(tmp_path / "p2.json"),
            "--mode",
            "vertices",
            "--budget",
            "10",
        )
        == 4
    )
    # domain error (asymmetric body for capacity) -> 5
    write_polytope(tmp_path / "tri.json", _triangle())
    assert _call(tmp_path, "ehz", str(tmp_path / "tri.json")) == 5
    # dim-6 enumeration without budget -> 5
    assert _call(tmp_path, "enumerate-pm1", "--dim", "6") == 5


def _triangle():
    from sympolar.geometry import convex_hull

    return convex_hull([(1, 0), (-1, 1), (-1, -2)])


def test_cli_config_echo(tmp_path, capsys):
    _call(tmp_path, "sequences", "--kind", "viterbo", "--n", "1")
    err = capsys.readouterr().err
    assert err.startswith("config: ")
    json.loads(err.split("config: ", 1)[1].splitlines()[0])
