import json
from pathlib import Path

import pytest

from polyknots.cli import run

SAMPLES = Path(__file__).resolve().parents[1] / "samples"
TREFOIL = str(SAMPLES / "shastri_trefoil.json")
UNKNOT = str(SAMPLES / "unknot.json")
PROJ3 = str(SAMPLES / "shastri_projection.json")
PROJ5 = str(SAMPLES / "projection_5_2.json")


def run_json(capsys, *argv):
    code = run(["--json", *argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_verify(capsys):
    code, data = run_json(capsys, "verify", TREFOIL)
    assert code == 0
    assert data["embedding"] is True
    assert data["degree_sequence"] == [3, 4, 5]
    assert data["double_points"] == 3


def test_verify_rejects_singular_curve(tmp_path, capsys):
    path = tmp_path / "cusp.json"
    path.write_text(json.dumps({"f": "t^2", "g": "t^3", "h": "t^4"}))
    code, data = run_json(capsys, "verify", str(path))
    assert code == 1
    assert data["embedding"] is False and data["reason"]


def test_identify(capsys):
    code, data = run_json(capsys, "identify", TREFOIL)
    assert code == 0
    assert data["knot"] == "3_1"
    assert data["determinant"] == 3
    assert data["jones"] == {"1": 1, "3": 1, "4": -1}
    assert len(data["pd"]) == data["crossings"] == 3


def test_identify_human_output(capsys):
    assert run(["identify", UNKNOT]) == 0
    out = capsys.readouterr().out
    assert "0_1" in out and "(none)" in out


def test_identify_from_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(Path(TREFOIL).read_text()))
    code, data = run_json(capsys, "identify", "-")
    assert code == 0 and data["knot"] == "3_1"


@pytest.mark.parametrize("method", ["intervals", "linear"])
def test_construct(method, capsys):
    code, data = run_json(capsys, "construct", PROJ3, "--pattern", "+-+", "--method", method)
    assert code == 0
    assert data["realizes_pattern"] is True
    assert data["identified"] in ("3_1", "3_1*")
    assert data["degree"] <= 5


def test_construct_with_slacks_and_leading_minus(capsys):
    code, data = run_json(capsys, "construct", PROJ3, "--pattern=-+-", "--method", "linear", "--slacks", "1,2,1/2")
    assert code == 0 and data["realizes_pattern"]


def test_global_flags_after_subcommand(capsys):
    code = run(["identify", TREFOIL, "--json", "--precision", "90"])
    assert code == 0
    assert json.loads(capsys.readouterr().out)["knot"] == "3_1"


def test_obstruct(capsys):
    code, data = run_json(capsys, "obstruct", PROJ5, "--pattern", "+-+-+")
    assert code == 0
    assert data["obstructed"] is True
    assert data["rank"] == [4, 5]


def test_obstruct_wrong_shape_is_an_error(capsys):
    assert run(["obstruct", PROJ3, "--pattern", "+-+"]) == 2
    assert "WrongShape" in capsys.readouterr().err


def test_octant(capsys):
    code, data = run_json(capsys, "octant", TREFOIL)
    assert code == 0
    assert data == {"octant": [1, 1, 1], "d": 5}


def test_corpus_list_and_show(capsys):
    code, data = run_json(capsys, "corpus", "list")
    assert code == 0 and len(data) == 11
    code, data = run_json(capsys, "corpus", "show", "3_1")
    assert code == 0 and data["f"] == "t^3 - 3t"
    assert run(["corpus", "show", "9_42"]) == 2


def test_plot(tmp_path, capsys):
    out = tmp_path / "k.svg"
    code, data = run_json(capsys, "plot", TREFOIL, "-o", str(out))
    assert code == 0 and data["crossings"] == 3
    assert out.read_text().count("<polyline") == 4


@pytest.mark.parametrize(
    "argv",
    [["verify", "missing.json"], ["construct", PROJ3, "--pattern", "+-"], ["frobnicate"], ["construct", PROJ3]],
)
def test_errors_exit_2(argv, capsys):
    assert run(argv) == 2


def test_bad_json_reports_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(["--json", "verify", str(path)]) == 2
    captured = capsys.readouterr()
    assert "error" in json.loads(captured.out)
    assert captured.err.startswith("error:")
