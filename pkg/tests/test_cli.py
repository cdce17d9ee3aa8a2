import json

from click.testing import CliRunner

from novelscope.cli import main
from novelscope.evalharness.groundtruth import make_ground_truth, write_ground_truth


def write_truth(path):
    records = [
        make_ground_truth("p1", [4, 5], venue="ICLR", year=2024),
        make_ground_truth("p2", [2, 3], venue="ICLR", year=2024),
        make_ground_truth("p3", [4, 4], venue="ICLR", year=2023),
    ]
    write_ground_truth(path, records)


def test_harness_metrics_command(tmp_path):
    truth = tmp_path / "truth.jsonl"
    write_truth(truth)
    predictions = tmp_path / "predictions.jsonl"
    rows = [
        {"id": "p1", "label": "novel"},
        {"id": "p2", "label": "novel"},
        {"id": "p3", "label": "not_novel"},
    ]
    predictions.write_text("\n".join(json.dumps(r) for r in rows), encoding="utf-8")
    runner = CliRunner()
    result = runner.invoke(
        main,
        ["harness", "metrics", "--predictions", str(predictions), "--truth", str(truth)],
    )
    assert result.exit_code == 0, result.output
    assert "Precision" in result.output
    assert "0.5000" in result.output  # precision: 1 of 2 predicted-novel correct


def test_harness_distribution_command(tmp_path):
    truth = tmp_path / "truth.jsonl"
    write_truth(truth)
    runner = CliRunner()
    result = runner.invoke(main, ["harness", "distribution", "--truth", str(truth)])
    assert result.exit_code == 0, result.output
    assert "2024" in result.output and "Total" in result.output


def test_cli_help_lists_commands():
    runner = CliRunner()
    result = runner.invoke(main, ["--help"])
    assert result.exit_code == 0
    for command in ("serve", "evaluate", "harness"):
        assert command in result.output
