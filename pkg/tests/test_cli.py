import json

import pytest

from lubintate.cli import SCHEMA, load_config, main, parse_character
from lubintate.errors import ConfigError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_group_summary(capsys):
    code, rep, _ = run(capsys, "group", "--preset", "gm_hat")
    assert code == 0 and rep["schema"] == SCHEMA
    assert rep["degrees"] == [2, 6] and rep["cyclotomic"]
    code, rep, _ = run(capsys, "group", "--preset", "basic", "--tower-depth", "1")
    assert rep["levels"][0]["division_polynomial"].replace(" ", "") in ("X^2+3", "3+X^2")


def test_bad_frobenius_in_config(tmp_path, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("prime = 3\nfrobenius = [0, 1]\n")
    code, _, err = run(capsys, "group", "--config", str(cfg))
    assert code == 2
    assert json.loads(err)["error"] == "NotAFrobeniusSeries"


def test_config_errors(tmp_path, capsys):
    code, _, err = run(capsys, "suite")
    assert code == 2 and "no suites" in json.loads(err)["message"]
    code, _, _ = run(capsys, "group", "--tower-depth", "4")
    assert code == 2
    cfg = tmp_path / "typo.toml"
    cfg.write_text("primes = 3\n")
    with pytest.raises(ConfigError):
        load_config(str(cfg))


def test_measure_command(tmp_path, capsys):
    f = tmp_path / "m.json"
    f.write_text(json.dumps({"level": 1, "values": {"1": "1"}}))
    code, rep, _ = run(capsys, "measure", str(f), "--j", "5")
    assert code == 0 and rep["value"] == "1"
    f.write_text(json.dumps({"level": 2, "values": {"2": "1"}}))
    code, rep, _ = run(capsys, "measure", str(f), "--j", "3")
    assert rep["value"] == "8"
    code, rep, _ = run(capsys, "measure", str(f), "--character", "1,0,0", "--j", "1")
    assert code == 0 and rep["value"]["value"].startswith("-2 ")


def test_parse_character():
    assert parse_character("triv", 3, 2).is_trivial
    with pytest.raises(ConfigError):
        parse_character("0,2,1", 3, 2)
    with pytest.raises(ConfigError):
        parse_character("x", 3, 1)


def test_tables(capsys):
    code, rep, _ = run(capsys, "table", "ell")
    assert code == 0 and all(r["agree"] for r in rep["rows"])
    row = next(r for r in rep["rows"] if r["k"] == 2 and r["j"] == 3)
    assert row["closed_form"] == "6"
    code, rep, _ = run(capsys, "table", "gauss", "--tower-depth", "1")
    assert code == 0 and len(rep["rows"]) == 1 and rep["rows"][0]["identity"]


def test_suite_run_is_deterministic(tmp_path, capsys):
    out = tmp_path / "r.json"
    args = ("suite", "--suite", "power_series", "--seed", "4", "--z-order", "40", "--jobs", "1")
    assert main([*args, "--out", str(out)]) == 0
    first = json.loads(out.read_text())
    assert first["failed"] == 0 and first["passed"] > 0
    assert main([*args, "--out", str(out)]) == 0
    assert json.loads(out.read_text()) == first


def test_suite_alias(capsys):
    code, rep, _ = run(capsys, "suite", "--suite", "appendixB", "--z-order", "40", "--jobs", "1")
    assert code == 0 and rep["suites"] == ["power_series"]
    assert all(c["suite"] == "power_series" for c in rep["checks"])
