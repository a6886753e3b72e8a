"""Tests for the command-line entry point."""

import json

import pytest

from main import EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_OK, build_parser, main
from src.workflows.runner import AnalysisRunner

FULL_GRID = {
    "ambient": ["0", "1"],
    "d": 0,
    "kind": "grid",
    "data": {"n": 2, "cells": [[0, 0], [0, 1], [1, 0], [1, 1]]},
}

STRETCH = {
    "source": ["0", "1"],
    "target": ["-1", "1"],
    "pieces": [{"dom": ["0", "1"], "slope": "2", "intercept": "-1"}],
}


@pytest.fixture
def write_json(tmp_path):
    def write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)
    return write


class TestParser:
    """Argument defaults."""

    def test_defaults(self):
        args = build_parser().parse_args(["entropy", "--relation", "gallery:H_ab"])
        assert args.grid == 256
        assert args.max_m == 10
        assert args.param == []
        assert args.format is None

    def test_unknown_command_exits(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["simulate"])


class TestCommands:
    """One invocation per command, output captured from stdout."""

    def test_gallery(self, capsys):
        assert main(["gallery"]) == EXIT_OK
        listings = json.loads(capsys.readouterr().out)
        assert [item["name"] for item in listings][:2] == ["F4", "H_ab"]
        assert len(listings) == 9

    def test_entropy_csv(self, capsys):
        code = main(["entropy", "--relation", "gallery:F4", "--grid", "2", "--max-m", "3",
                     "--format", "csv", "--semantics", "closed"])
        assert code == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "m,count,ratio"
        assert [line.split(",")[1] for line in lines[1:]] == ["4", "8", "16"]

    def test_orbits_json(self, capsys):
        assert main(["orbits", "--relation", "gallery:H_ab", "--max-period", "3"]) == EXIT_OK
        census = json.loads(capsys.readouterr().out)
        assert census["proof_level"] == "proven"
        assert census["orbits"] == []

    def test_orbits_csv(self, capsys):
        code = main(["orbits", "--relation", "gallery:tent", "--max-period", "2",
                     "--format", "csv"])
        assert code == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "period,points,branch,proof_level"
        assert len(lines) == 4

    def test_certify(self, capsys):
        assert main(["certify", "--relation", "gallery:H_ab", "--hint", "1/3"]) == EXIT_OK
        record = json.loads(capsys.readouterr().out)
        assert record["b"] == "1/3"
        assert record["psi"] == 2

    def test_certify_without_certificate(self, capsys):
        assert main(["certify", "--relation", "gallery:counterexample"]) == EXIT_OK
        assert capsys.readouterr().out == "none\n"

    def test_plot_to_file(self, tmp_path):
        target = tmp_path / "h_ab.svg"
        assert main(["plot", "--relation", "gallery:H_ab", "--out", str(target)]) == EXIT_OK
        assert target.read_text(encoding="utf-8").startswith("<svg ")

    def test_prefix_plot(self, capsys):
        code = main(["plot", "--relation", "gallery:counterexample", "--prefix-depth", "2"])
        assert code == EXIT_OK
        assert capsys.readouterr().out.count('r="2"') == 6

    def test_conjugate_with_target(self, capsys, write_json):
        homeo = write_json("stretch.json", STRETCH)
        code = main(["conjugate", "--relation", "gallery:joj5_A", "--homeo", homeo,
                     "--against", "gallery:joj5_B", "--grid", "8", "--max-m", "3"])
        assert code == EXIT_OK
        result = json.loads(capsys.readouterr().out)
        assert result["conjugate_to_target"] is True
        assert result["transfer"]["mode"] == "exact"
        assert result["image"]["ambient"] == ["-1", "1"]

    def test_report_inconclusive(self, capsys, write_json):
        relation = write_json("full.json", FULL_GRID)
        code = main(["report", "--relation", relation, "--grid", "2", "--max-period", "2"])
        assert code == EXIT_INCONCLUSIVE
        assert json.loads(capsys.readouterr().out)["verdict"] == "inconclusive"

    def test_report_i_embedded(self, capsys):
        code = main(["report", "--relation", "gallery:H_ab", "--grid", "64",
                     "--max-period", "3"])
        assert code == EXIT_OK
        assert json.loads(capsys.readouterr().out)["verdict"] == "i_embedded"


class TestErrors:
    """Failures are logged and mapped to exit code 1."""

    @pytest.mark.parametrize("argv", [
        ["entropy"],
        ["entropy", "--relation", "gallery:nope"],
        ["orbits", "--relation", "gallery:H_ab", "--param", "b=1/2"],
        ["orbits", "--relation", "gallery:H_ab", "--param", "b"],
        ["conjugate", "--relation", "gallery:joj5_A"],
        ["plot", "--relation", "gallery:H_ab", "--prefix-depth", "2"],
    ])
    def test_error_exit(self, argv):
        assert main(argv) == EXIT_ERROR

    def test_missing_file(self, tmp_path):
        assert main(["orbits", "--relation", str(tmp_path / "missing.json")]) == EXIT_ERROR

    def test_overrides_rejected_for_files(self, write_json):
        relation = write_json("full.json", FULL_GRID)
        assert main(["orbits", "--relation", relation, "--param", "a=2"]) == EXIT_ERROR


class TestArchive:
    """Runs land in the archive when a repository is attached."""

    def test_runner_records_runs(self, mocker):
        repository = mocker.Mock()
        runner = AnalysisRunner(repository=repository)
        loaded = runner.load("gallery:H_ab")
        runner.orbits(loaded, 2)
        kwargs = repository.record_run.call_args.kwargs
        assert kwargs["command"] == "orbits"
        assert kwargs["relation_name"] == "gallery:H_ab"
        assert kwargs["proof_level"] == "proven"
        assert kwargs["parameters"]["max_period"] == 2
        assert kwargs["parameters"]["b"] == "1/3"

    def test_archive_failure_is_not_fatal(self, mocker):
        repository = mocker.Mock()
        repository.record_run.side_effect = RuntimeError("disk full")
        runner = AnalysisRunner(repository=repository)
        census = runner.orbits(runner.load("gallery:tent"), 1)
        assert census.max_period == 1
