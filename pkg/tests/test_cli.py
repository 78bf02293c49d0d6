import json

import pytest

from marginal_resolvent.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_OK, config_from_args, main
from marginal_resolvent.config import InvalidConfig, RunConfig, SCHEMA_VERSION, parse_rational


def test_parse_rational():
    assert parse_rational("1/2") == parse_rational("0.5")
    with pytest.raises(InvalidConfig):
        parse_rational("half")


def test_config_validation():
    with pytest.raises(InvalidConfig):
        RunConfig("density", c=parse_rational("-1")).validate()
    with pytest.raises(InvalidConfig):
        RunConfig("nope").validate()
    cfg = config_from_args(["moments", "--c", "3/2", "--m", "4"])
    assert cfg.y == parse_rational("1/4")
    assert cfg.to_dict()["c"] == "3/2"


def test_exit_codes(capsys):
    assert main(["moments", "--c", "0"]) == EXIT_CONFIG
    assert main(["bogus"]) == EXIT_CONFIG
    assert main(["moments", "--c", "1", "--m", "1", "--n", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "M_2 = 14" in out


def test_moments_json(tmp_path):
    out = tmp_path / "m.json"
    assert main(["moments", "--c", "1/2", "--m", "3", "--n", "2", "--out", str(out)]) == EXIT_OK
    data = json.loads(out.read_text())
    assert data["schema_version"] == SCHEMA_VERSION
    assert data["config"]["c"] == "1/2"
    # M1 = c^2 + c y^2 = 1/4 + 1/18
    assert data["moments"][1] == "11/36"


def test_moments_symbolic(capsys):
    assert main(["moments", "--n", "1", "--symbolic"]) == EXIT_OK
    from marginal_resolvent.exactalg import MultiPoly

    line = capsys.readouterr().out.splitlines()[1]
    assert MultiPoly.parse(line.split("=")[1]) == MultiPoly.parse("c^2 + c*y^2")


def test_enumerate(capsys, tmp_path):
    out = tmp_path / "maps.jsonl"
    assert main(["enumerate", "--k", "3", "--out", str(out)]) == EXIT_OK
    text = capsys.readouterr().out
    assert "EQUAL" in text
    assert len(out.read_text().splitlines()) == 132


def test_enumerate_too_large():
    assert main(["enumerate", "--k", "7"]) == EXIT_FAIL


def test_eliminate(capsys, tmp_path):
    out = tmp_path / "e.json"
    assert main(["eliminate", "--out", str(out)]) == EXIT_OK
    assert "MATCH published sextic" in capsys.readouterr().out
    assert json.loads(out.read_text())["diff"] == []


def test_balanced_symbolic(capsys):
    assert main(["balanced", "--n", "2", "--symbolic"]) == EXIT_OK
    assert "M_1 = c^2" in capsys.readouterr().out


@pytest.mark.slow
def test_density_csv(capsys, tmp_path):
    out = tmp_path / "d.csv"
    assert main(["density", "--c", "1", "--m", "1", "--grid-points", "60", "--out", str(out)]) == EXIT_OK
    text = capsys.readouterr().out
    assert "support   [0, 16]" in text
    assert out.read_text().splitlines()[0] == "lambda,rho"


def test_simulate(tmp_path, capsys):
    out = tmp_path / "s.json"
    code = main(["simulate", "--size", "20", "--m", "2", "--samples", "2", "--n", "2", "--out", str(out)])
    assert code == EXIT_OK
    data = json.loads(out.read_text())
    assert len(data["runs"]) == 2 and len(data["mean_moments"]) == 2
    assert main(["simulate", "--m", "3/2", "--size", "5"]) == EXIT_CONFIG


def test_crosscheck_subset(capsys, tmp_path):
    out = tmp_path / "x.json"
    assert main(["crosscheck", "--only", "C1", "C5", "--out", str(out)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert [l.split()[1] for l in lines] == ["C1:", "C5:"]
    assert all(l.startswith("[PASS]") for l in lines)
    assert [r["key"] for r in json.loads(out.read_text())["results"]] == ["C1", "C5"]
