import csv
import io
import json
import math

import numpy as np
import pytest

from mixedsimplex.commands.automata import UNARY
from mixedsimplex.main import build_parser, run


@pytest.fixture
def stdin(monkeypatch):
    def feed(obj):
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(obj)))

    return feed


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def output(capsys):
    return json.loads(capsys.readouterr().out)


def test_transform_sparsemax(stdin, capsys):
    stdin([0, 0])
    assert run(["transform", "--kind", "sparsemax"]) == 0
    assert output(capsys) == [0.5, 0.5]


def test_maxent_in_bits(capsys):
    assert run(["maxent", "--K", "2", "--N", "3", "--bits"]) == 0
    doc = output(capsys)
    assert doc["units"] == "bits"
    assert doc["value"] == pytest.approx(math.log2(10.0), rel=1e-12)
    assert doc["laguerre"] == pytest.approx(doc["value"], rel=1e-9)


def test_maxent_csv(capsys):
    assert run(["maxent", "--K", "4", "--N", "2", "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [float(r["K"]) for r in rows] == [2.0, 3.0, 4.0]
    assert "maxent_N2" in rows[0]


def test_entmax_figure_csv(capsys):
    assert run(["fig", "--name", "entmax-curve", "--alpha", "1.5", "--out", "csv"]) == 0
    rows = {float(r["t"]): float(r["y1"]) for r in csv.DictReader(io.StringIO(capsys.readouterr().out))}
    assert rows[0.0] == pytest.approx(0.5)
    assert rows[2.0] == 1.0


def test_unknown_subcommand_is_usage_error(capsys):
    assert run(["frobnicate"]) == 2
    assert "usage" in capsys.readouterr().err


def test_domain_error_exit_code(stdin, capsys):
    stdin([0.5, 0.6])
    assert run(["simplex", "face"]) == 1
    assert capsys.readouterr().err.startswith("error: InvalidSimplexPoint:")


def test_unknown_figure(capsys):
    assert run(["fig", "--name", "nope"]) == 1
    assert "UnknownFigure" in capsys.readouterr().err


def test_sampling_is_reproducible(tmp_path, capsys):
    spec = write(tmp_path, "spec.json", {"kind": "gaussian_sparsemax", "z": [0.2, 0.0, -0.1], "sigma": 0.5})
    assert run(["sample", "--spec", spec, "--n", "20", "--seed", "3"]) == 0
    first = capsys.readouterr().out
    assert run(["sample", "--spec", spec, "--n", "20", "--seed", "3"]) == 0
    assert capsys.readouterr().out == first
    assert len(first.splitlines()) == 20


def test_faces(tmp_path, capsys):
    spec = write(tmp_path, "spec.json", {"kind": "dirichlet", "alpha": [1.0, 1.0]})
    assert run(["faces", "--spec", spec, "--n", "100"]) == 0
    doc = output(capsys)
    assert doc["faces"] == [{"count": 100, "indices": [1, 2], "probability": 1.0, "standard_error": 0.0}]


def test_distribution_and_entropy(tmp_path, capsys):
    assert run(["dist", "gaussian-sparsemax", "--z", "0.5", "--sigma", "0.3"]) == 0
    dist = write(tmp_path, "d.json", output(capsys))
    assert run(["entropy", "--dist", dist]) == 0
    doc = output(capsys)
    assert doc["total"] == pytest.approx(doc["discrete_part"] + doc["continuous_part"])
    faces = write(tmp_path, "f.json", [[1], [2], [1, 2]])
    assert run(["dist", "probability", "--dist", dist, "--faces", faces]) == 0
    assert output(capsys)["probability"] == pytest.approx(1.0, abs=1e-12)


def test_kl_infinite(tmp_path, capsys):
    p = write(tmp_path, "p.json", {"K": 2, "faces": [{"indices": [1], "mass": 0.5}, {"indices": [2], "mass": 0.5}]})
    q = write(tmp_path, "q.json", {"K": 2, "faces": [{"indices": [1], "mass": 1.0}]})
    assert run(["kl", "--p", p, "--q", q]) == 0
    assert capsys.readouterr().out.strip() == '{"units": "nats", "value": Infinity}'


def test_invalid_distribution_document(tmp_path, capsys):
    bad = write(tmp_path, "bad.json", {"K": 2, "faces": [{"indices": [1], "mass": 0.4}]})
    assert run(["entropy", "--dist", bad]) == 1
    assert "InvalidArgument" in capsys.readouterr().err


AUTOMATON = {
    "K": 2,
    "states": 5,
    "initial": [{"state": 0}],
    "final": [{"state": 4}],
    "edges": [
        {"src": 0, "dst": 1, "faces": [[1]]},
        {"src": 1, "dst": 2, "faces": [[2]]},
        {"src": 2, "dst": 3, "faces": [[1, 2]]},
        {"src": 3, "dst": 4, "faces": [[1]]},
    ],
}


def test_fsa_accept_and_project(tmp_path, capsys):
    a = write(tmp_path, "a.json", AUTOMATON)
    x = write(tmp_path, "x.json", [[1, 0], [0, 1], [0.2, 0.8], [1, 0]])
    assert run(["fsa", "accept", "--in", a, "--string", x]) == 0
    assert output(capsys) == {"accepted": True}
    assert run(["fsa", "project", "--in", a, "--string", x]) == 0
    assert output(capsys) == [[1, 2, 1, 1], [1, 2, 2, 1]]
    assert run(["fsa", "skeleton", "--in", a, "--string", x]) == 0
    assert output(capsys) == [[1], [2], [1, 2], [1]]


def test_fsa_complement_round_trip(tmp_path, capsys):
    a = write(tmp_path, "a.json", AUTOMATON)
    out = tmp_path / "c.json"
    assert run(["fsa", "complement", "--in", a, "--out", str(out)]) == 0
    assert run(["fsa", "equivalent", "--in", a, "--in2", str(out)]) == 0
    assert output(capsys) == {"equivalent": False}
    assert run(["fsa", "union", "--in", a, "--in2", str(out), "--out", str(tmp_path / "u.json")]) == 0
    assert json.loads((tmp_path / "u.json").read_text())["states"] >= 1


def test_binary_verb_needs_second_input(tmp_path, capsys):
    a = write(tmp_path, "a.json", AUTOMATON)
    assert run(["fsa", "intersect", "--in", a]) == 1
    assert "--in2" in capsys.readouterr().err


def test_metrics_out(tmp_path, capsys):
    spec = write(tmp_path, "spec.json", {"kind": "dirichlet", "alpha": [2.0, 2.0]})
    metrics = tmp_path / "metrics" / "run.prom"
    assert run(["--metrics-out", str(metrics), "sample", "--spec", spec, "--n", "5"]) == 0
    assert "samples_drawn_total" in metrics.read_text()


def test_parser_lists_commands():
    text = build_parser().format_help()
    for command in ("transform", "sample", "faces", "entropy", "coding-entropy", "maxent", "kl", "mi", "fsa", "fig"):
        assert command in text


def test_linear_algebra_failure_is_reported(tmp_path, monkeypatch, capsys):
    def singular(a):
        raise np.linalg.LinAlgError("Singular matrix")

    monkeypatch.setitem(UNARY, "push", singular)
    a = write(tmp_path, "a.json", AUTOMATON)
    assert run(["fsa", "push", "--in", a]) == 1
    assert capsys.readouterr().err.startswith("error: NumericalFailure:")
