"""
Tests for the command-line surface, system files and the benchmark harness.
"""

import json
import logging
import os

import pytest

from src.errors import ChainError, ParseError, UsageError
from src.logging_setup import JsonFormatter, RunFieldsFilter, run_scope, start_run
from src.main import main
from src.oracle.verify import OracleConfig
from src.tools.bench import COLUMNS, render, run_bench, run_orderings, run_system
from src.tools.systemfile import load_decomposition, load_system, parse_system_text


CIRCLE = """\
# unit circle and a vertical line
name: circle
params: a
vars: x, y
reference x,y: 1
reference y,x: a
polys:
x^2 + y^2 - 1
x - a
"""

SMALL = ["--trials", "2", "--prime", "11", "--seed", "1"]


@pytest.fixture
def circle_file(tmp_path):
    path = tmp_path / "circle.txt"
    path.write_text(CIRCLE)
    return str(path)


@pytest.fixture
def example1_file(data_dir):
    return os.path.join(data_dir, "systems", "example1.txt")


def test_parse_system_text():
    system = parse_system_text(CIRCLE)
    assert system.name == "circle"
    assert system.params == ["a"]
    assert system.vars == ["x", "y"]
    assert system.reference_for(["x", "y"]) == "1"
    assert system.reference_for(["y", "x"]) == "a"
    context, polys = system.parse(["y", "x"])
    assert context.vars == ("y", "x")
    assert len(polys) == 2


def test_parse_error_reports_source_line():
    text = "params: a\nvars: x\npolys:\nx - a\n2x + 1\n"
    system = parse_system_text(text)
    with pytest.raises(ParseError) as exc:
        system.parse()
    assert exc.value.line == 5
    with pytest.raises(ParseError):
        parse_system_text("params: a\nbogus: 1\n")
    with pytest.raises(ParseError):
        parse_system_text("params: a\nvars: x\npolys:\n")


def test_decompose_text(example1_file, capsys):
    assert main(["decompose", "--input", example1_file, "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "B = u*v*w" in out
    assert "[{u*x + 1, v*y + 1, w*z - u}, u*v*w]" in out


def test_decompose_then_verify(circle_file, tmp_path, capsys):
    doc_path = str(tmp_path / "circle.json")
    assert main(["decompose", "--input", circle_file, "--out", doc_path]) == 0
    doc = load_decomposition(doc_path)
    assert doc.name == "circle"
    assert doc.b == "1"
    with open(doc_path, encoding="utf-8") as handle:
        assert json.load(handle)["vars"] == ["x", "y"]

    assert main(["verify", "--input", circle_file, "--decomposition", doc_path] + SMALL) == 0
    assert capsys.readouterr().out.strip().endswith("verdict: pass (2/2 passed)")


def test_verify_detects_wrong_decomposition(circle_file, tmp_path, capsys):
    wrong = {
        "params": ["a"],
        "vars": ["x", "y"],
        "systems": [{"chain": ["x - a", "y - 1"], "inequation": "1"}],
        "b": "1",
    }
    path = tmp_path / "wrong.json"
    path.write_text(json.dumps(wrong))
    assert main(["verify", "--input", circle_file, "--decomposition", str(path), "--format", "json"] + SMALL) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["trials"][0]["status"] == "fail"


def test_usage_errors(circle_file, example1_file, data_dir, tmp_path):
    assert main([]) == 2
    assert main(["decompose"]) == 2
    assert main(["verify", "--input", circle_file]) == 2
    assert main(["verify", "--input", circle_file, "--decomposition", "x.json", "--trials", "0"]) == 2
    assert main(["decompose", "--input", str(tmp_path / "missing.txt")]) == 2
    published = os.path.join(data_dir, "decompositions", "example1_published.json")
    assert main(["verify", "--input", circle_file, "--decomposition", published] + SMALL) == 2


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "broken.txt"
    path.write_text("params: u\nvars: x\npolys:\nu*x +\n")
    assert main(["decompose", "--input", str(path)]) == 2
    assert "line 4" in capsys.readouterr().err


def test_trials_from_environment(circle_file, tmp_path, monkeypatch, capsys):
    doc_path = str(tmp_path / "circle.json")
    assert main(["decompose", "--input", circle_file, "--out", doc_path]) == 0
    monkeypatch.setenv("REGULUS_TRIALS", "3")
    monkeypatch.setenv("REGULUS_PRIME", "13")
    assert main(["verify", "--input", circle_file, "--decomposition", doc_path]) == 0
    assert "(3/3 passed)" in capsys.readouterr().out
    monkeypatch.setenv("REGULUS_TRIALS", "many")
    assert main(["verify", "--input", circle_file, "--decomposition", doc_path]) == 2


def test_enumeration_budget_exit_code(circle_file, tmp_path, capsys):
    doc_path = str(tmp_path / "circle.json")
    assert main(["decompose", "--input", circle_file, "--out", doc_path]) == 0
    assert main(["verify", "--input", circle_file, "--decomposition", doc_path, "--prime", "10007", "--trials", "1"]) == 3
    assert "error:" in capsys.readouterr().err


def test_internal_error_exit_code(circle_file, monkeypatch, capsys):
    def broken(polys, variables=None):
        raise ChainError("initial vanishes on the lower chain")

    monkeypatch.setattr("src.main.rdu", broken)
    assert main(["decompose", "--input", circle_file]) == 4
    assert "initial vanishes" in capsys.readouterr().err


def test_non_triangular_decomposition_is_a_parse_error(circle_file, tmp_path):
    doc = {
        "params": ["a"],
        "vars": ["x", "y"],
        "systems": [{"chain": ["y - 1", "x - a"], "inequation": "1"}],
        "b": "1",
    }
    path = tmp_path / "unordered.json"
    path.write_text(json.dumps(doc))
    assert main(["verify", "--input", circle_file, "--decomposition", str(path)] + SMALL) == 2


def test_run_scope_stamps_log_records():
    run_id = start_run("decompose")
    record = logging.LogRecord("grd", logging.INFO, __file__, 1, "rdu_end", None, None)
    with run_scope(system="circle", ordering="x,y"):
        RunFieldsFilter().filter(record)
    assert (record.run_id, record.command, record.system, record.ordering) == (run_id, "decompose", "circle", "x,y")
    line = json.loads(JsonFormatter().format(record))
    assert line["event"] == "rdu_end"
    assert line["system"] == "circle"
    assert line["run_id"] == run_id

    outside = logging.LogRecord("grd", logging.INFO, __file__, 1, "rdu_start", None, None)
    RunFieldsFilter().filter(outside)
    assert not hasattr(outside, "system")
    assert outside.command == "decompose"


def test_char_set_command(example1_file, capsys):
    assert main(["char-set", "--input", example1_file]) == 0
    out = capsys.readouterr().out
    assert "C1:" in out
    assert "(contradictory)" in out


def test_orderings_command(circle_file, capsys):
    assert main(["orderings", "--input", circle_file, "--format", "csv"] + SMALL) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == ",".join(COLUMNS)
    assert len(lines) == 3
    assert lines[1].startswith('circle,"x,y"')


def test_run_orderings_reference_and_cap(circle_file):
    system = load_system(circle_file)
    config = OracleConfig(prime=11, trials=2, seed=1)
    records = run_orderings(system, "circle", config)
    assert [r.ordering for r in records] == ["x,y", "y,x"]
    assert records[0].reference == "match"
    assert all(r.verdict == "pass" for r in records)
    with pytest.raises(UsageError):
        run_orderings(system, "circle", config, cap=1)
    line = parse_system_text("params: u\nvars: x\npolys:\nx - u\n")
    assert len(run_orderings(line, "line", config)) == 1


def test_run_system_turns_failures_into_rows():
    system = parse_system_text("params: u\nvars: x\npolys:\nu*x + q\n")
    record = run_system(system, "bad", config=OracleConfig(prime=11, trials=1))
    assert record.verdict == "parse-error"
    assert "q" in record.error


def test_bench_over_directory(tmp_path, circle_file, capsys):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    (corpus / "circle.txt").write_text(CIRCLE)
    (corpus / "line.txt").write_text("params: u\nvars: x\npolys:\nx - u\n")
    (corpus / "broken.txt").write_text("nonsense\n")
    (corpus / "notes.md").write_text("ignored")
    records = run_bench(str(corpus), OracleConfig(prime=11, trials=2, seed=1))
    assert [r.system for r in records] == ["broken", "circle", "line"]
    assert records[0].verdict == "parse-error"
    assert records[1].verdict == "pass"
    assert records[2].b == "1"

    assert "|" in render(records, "md")
    assert render([], "text") == "(no systems)"
    assert main(["bench", "--input", str(corpus), "--format", "csv"] + SMALL) == 0
    assert "circle" in capsys.readouterr().out
    assert main(["bench", "--input", circle_file]) == 2


if __name__ == "__main__":
    pytest.main([__file__])
