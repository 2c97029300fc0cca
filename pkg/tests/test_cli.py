import json
import subprocess
import sys

import jsonschema
import pytest

from spectral_turan.cli import parse_range, run
from spectral_turan.constructions import FlowerSpec, flower, turan
from spectral_turan.graph import parse_graph6, to_graph6
from spectral_turan.schemas import SCHEMA_NAMES, load_schema


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _validate(obj, name):
    jsonschema.validate(obj, load_schema(name))


def test_construct_flower(capsys):
    code, out, _ = _run(capsys, "construct", "flower", "--s", "1", "--cycles", "5")
    assert code == 0
    assert parse_graph6(out.strip()) == flower(FlowerSpec(1, [5]))


def test_construct_json_and_missing_args(capsys):
    code, out, _ = _run(capsys, "construct", "family", "--n", "20", "--s", "1", "--k", "1", "--format", "json")
    obj = json.loads(out)
    _validate(obj, "graph")
    assert obj["edges"] == 101
    code, out, err = _run(capsys, "construct", "turan")
    assert code == 2 and out == "" and "--n" in err


def test_table_ch(capsys):
    code, out, _ = _run(capsys, "table", "ch", "--beta", "1..3", "--delta", "1..3")
    assert code == 0
    rows = [ln.split(",") for ln in out.strip().splitlines()]
    assert rows[0] == ["beta", "delta", "f"]
    assert ["2", "2", "6"] in rows


def test_table_family_json(capsys):
    code, out, _ = _run(capsys, "table", "family", "--n", "10..11", "--s", "0..1", "--k", "1", "--format", "json")
    obj = json.loads(out)
    _validate(obj, "table")
    assert [10, 1, 1, 26] in obj["rows"]


def test_detect_exit_codes(capsys):
    t = to_graph6(turan(10, 2))
    assert _run(capsys, "detect", "--s", "0", "--cycles", "5", t)[0] == 0
    code, out, _ = _run(capsys, "detect", "--cycles", "5", "--witness", "Dhc")
    assert code == 1
    obj = json.loads(out)
    _validate(obj, "detect")
    assert obj["contains"]
    code, out, err = _run(capsys, "detect", "--cycles", "4", "Dhc")
    assert code == 2 and out == "" and "odd" in err
    assert _run(capsys, "detect", "--cycles", "5", "not-graph6")[0] == 2
    assert _run(capsys, "detect", "--cycles", "5")[0] == 2


def test_spectral_json(capsys, tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("5\n0 1\n0 2\n0 3\n1 4\n2 4\n3 4\n")
    code, out, _ = _run(capsys, "spectral", "--input", str(f))
    obj = json.loads(out)
    _validate(obj, "spectral")
    assert obj["lambda"] == pytest.approx(6**0.5)
    code, out, _ = _run(capsys, "spectral", "--signless", "--input", str(f))
    assert json.loads(out)["lambda"] == pytest.approx(5.0)


def test_certify_and_climb(capsys):
    code, out, err = _run(capsys, "certify", "--n", "6", "--cycles", "5")
    obj = json.loads(out)
    _validate(obj, "search-report")
    assert obj["max_edges"] == 9 and "certified" in err
    code, out, _ = _run(capsys, "climb", "--n", "14", "--s", "1", "--cycles", "5", "--budget", "40", "--seed", "2")
    obj = json.loads(out)
    _validate(obj, "climb")
    code, out2, _ = _run(capsys, "climb", "--n", "14", "--s", "1", "--cycles", "5", "--budget", "40", "--seed", "2")
    assert out == out2


def test_analyze(capsys):
    g = to_graph6(turan(30, 2))
    code, out, _ = _run(capsys, "analyze", "--s", "1", "--cycles", "5", g)
    obj = json.loads(out)
    _validate(obj, "stability-report")
    assert obj["e_G1"] == 0


def test_threads_env_does_not_change_output(capsys, monkeypatch):
    _, a, _ = _run(capsys, "--threads", "1", "certify", "--n", "7", "--s", "2")
    monkeypatch.setenv("SPECTRAL_TURAN_THREADS", "2")
    _, b, _ = _run(capsys, "certify", "--n", "7", "--s", "2")
    assert a == b


def test_parse_range():
    assert parse_range("1..3") == [1, 2, 3]
    assert parse_range("4") == [4]
    for bad in ("3..1", "a..b", "x"):
        with pytest.raises(Exception):
            parse_range(bad)


def test_schemas_are_valid():
    for name in SCHEMA_NAMES:
        jsonschema.Draft202012Validator.check_schema(load_schema(name))


def test_console_entry_point_stdin():
    g6 = to_graph6(turan(8, 2))
    proc = subprocess.run(
        [sys.executable, "-m", "spectral_turan.cli", "detect", "--s", "1", "-i", "-"],
        input=g6 + "\n", capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == ""
