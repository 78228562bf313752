from __future__ import annotations

import json

import pytest
from click.testing import CliRunner
from rich.console import Console

from effpushout import cli as cli_module
from effpushout.cli import cli, format_homology, parse_range
from effpushout.config import ENV_LIMIT, ENV_SAMPLE, ENV_SEED
from effpushout.homology import AbelianGroup
from effpushout.simplicial import FaceViolation, SimplexWord, SimplicialReport


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def spaces(data_dir):
    return str(data_dir / "spaces.json")


def test_homology_of_join_of_circles(runner, data_dir):
    result = runner.invoke(cli, [str(data_dir / "join_circles.json"), "homology", "s3", "0..3"])
    assert result.exit_code == 0, result.output
    assert result.output == (data_dir / "join_circles.expected").read_text()


def test_homology_of_a_point_above_its_dimension(runner, spaces):
    result = runner.invoke(cli, [spaces, "homology", "pt", "1"])
    assert result.exit_code == 0
    assert result.output == "Homology in dimension 1:\n"


def test_homology_of_a_cofiber(runner, spaces):
    result = runner.invoke(cli, [spaces, "homology", "rp2", "1..1"])
    assert result.exit_code == 0
    assert result.output == "Homology in dimension 1:\nComponent Z/2Z\n"


def test_homology_of_a_product(runner, spaces):
    result = runner.invoke(cli, [spaces, "homology", "torus", "1"])
    assert result.exit_code == 0
    assert result.output == "Homology in dimension 1:\nComponent Z\nComponent Z\n"


def test_malformed_document_exits_2(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"spaces": {"c": {"kind": "circle", "k": }}}')
    result = runner.invoke(cli, [str(path), "homology", "c", "0..1"])
    assert result.exit_code == 2
    assert "line 1" in result.output


def test_unknown_space_exits_2(runner, spaces):
    result = runner.invoke(cli, [spaces, "homology", "klein", "0..1"])
    assert result.exit_code == 2
    assert "klein" in result.output


@pytest.mark.parametrize("degrees", ["3..1", "a..b", "1..", ""])
def test_bad_range_exits_2(runner, spaces, degrees):
    result = runner.invoke(cli, [spaces, "homology", "pt", degrees])
    assert result.exit_code == 2


def test_missing_file_exits_2(runner, tmp_path):
    result = runner.invoke(cli, [str(tmp_path / "nope.json"), "homology", "pt", "0"])
    assert result.exit_code == 2


def test_verify_passes(runner, spaces):
    result = runner.invoke(cli, [spaces, "verify", "rp2"])
    assert result.exit_code == 0, result.output
    assert "All checks passed" in result.output


def test_verify_of_a_plain_space(runner, spaces):
    result = runner.invoke(cli, [spaces, "verify", "torus"])
    assert result.exit_code == 0, result.output


def test_verify_reports_failures(runner, spaces, monkeypatch):
    def failing(space):
        vertex = space.vertices()[0]
        word = SimplexWord.of(vertex)
        return SimplicialReport(space.name, 1, [FaceViolation(vertex, "tampered", word, word)])

    monkeypatch.setattr(cli_module, "verify_simplicial", failing)
    result = runner.invoke(cli, [spaces, "verify", "c2"])
    assert result.exit_code == 1


def test_verify_checks_connecting_map_and_comparison(runner, spaces, monkeypatch):
    monkeypatch.setattr(cli_module, "console", Console(width=200))
    result = runner.invoke(cli, [spaces, "verify", "rp2"])
    assert result.exit_code == 0, result.output
    assert "chi is a chain map" in result.output
    assert "comparison round trip" in result.output

    monkeypatch.setattr(cli_module, "verify_chain_map", lambda morphism: ["witness"])
    result = runner.invoke(cli, [spaces, "verify", "rp2"])
    assert result.exit_code == 1
    assert "1 failing generators" in result.output


def test_inspect_shows_pipeline(runner, spaces):
    result = runner.invoke(cli, [spaces, "inspect", "bouquet"])
    assert result.exit_code == 0, result.output
    assert "Euler characteristic: -1" in result.output
    assert "cone2(chi)" in result.output


def test_schema_flag(runner):
    result = runner.invoke(cli, ["--schema"])
    assert result.exit_code == 0
    assert "spaces" in json.loads(result.output)["properties"]


def test_verify_limit_from_environment(runner, spaces, monkeypatch):
    monkeypatch.setenv(ENV_LIMIT, "4")
    result = runner.invoke(cli, ["-v", spaces, "homology", "rp2", "1"])
    assert result.exit_code == 0
    assert result.output.endswith("Component Z/2Z\n")


def test_bad_verify_limit_exits_2(runner, spaces):
    result = runner.invoke(cli, ["--verify-limit", "-1", spaces, "homology", "pt", "0"])
    assert result.exit_code == 2


@pytest.mark.parametrize(("variable", "value"), [(ENV_SAMPLE, "0"), (ENV_SEED, "abc")])
def test_bad_settings_in_environment_exit_2(runner, spaces, monkeypatch, variable, value):
    monkeypatch.setenv(variable, value)
    result = runner.invoke(cli, [spaces, "homology", "rp2", "1"])
    assert result.exit_code == 2
    assert "Error:" in result.output
    assert "verification settings" in result.output
    assert result.exception is None or isinstance(result.exception, SystemExit)


def test_parse_range():
    assert parse_range("0..3") == range(0, 4)
    assert parse_range(" 2 ") == range(2, 3)
    assert parse_range("-1..0") == range(-1, 1)


def test_format_homology():
    text = format_homology({0: AbelianGroup(1), 1: AbelianGroup(0, (2, 4)), 2: AbelianGroup()})
    assert text == (
        "Homology in dimension 0:\nComponent Z\n\n"
        "Homology in dimension 1:\nComponent Z/2Z\nComponent Z/4Z\n\n"
        "Homology in dimension 2:"
    )
