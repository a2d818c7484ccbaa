import json

import pytest
from click.testing import CliRunner

from newslens.cli import main

from conftest import make_raw_posting, posting_log_lines


@pytest.fixture
def env(tmp_path):
    config = {
        "store_path": str(tmp_path / "hot.db"),
        "archive_dir": str(tmp_path / "archive"),
    }
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(config), encoding="utf-8")
    return CliRunner(), str(config_path), tmp_path


class TestCli:
    def test_ingest_counts(self, env):
        runner, config, tmp = env
        log = tmp / "postings.ndjson"
        log.write_text(posting_log_lines(5), encoding="utf-8")
        result = runner.invoke(main, ["--config", config, "ingest", str(log)])
        assert result.exit_code == 0, result.output
        summary = json.loads(result.output)
        assert summary["lines"] == 5
        assert summary["by_status"] == {"stored_new": 5}

    def test_ingest_reports_rejections(self, env):
        runner, config, tmp = env
        log = tmp / "postings.ndjson"
        bad = dict(make_raw_posting(), posted_at="not-a-date")
        log.write_text(json.dumps(bad) + "\n", encoding="utf-8")
        result = runner.invoke(main, ["--config", config, "ingest", str(log)])
        assert json.loads(result.output)["by_status"] == {"rejected": 1}

    def test_load_outlets(self, env):
        runner, config, tmp = env
        csv = tmp / "outlets.csv"
        csv.write_bytes(b"domain,name,quality_score\na.com,A,5\nb.com,B,1\n")
        result = runner.invoke(main, ["--config", config, "load-outlets", str(csv)])
        assert result.exit_code == 0, result.output
        assert json.loads(result.output) == {"outlets": 2}

    def test_migrate_empty_store(self, env):
        runner, config, _ = env
        result = runner.invoke(main, ["--config", config, "migrate", "--cutoff-days", "30"])
        assert result.exit_code == 0, result.output
        report = json.loads(result.output)
        assert report["moved"] == {"articles": 0, "postings": 0}

    def test_evaluate_unreachable_url_fails_cleanly(self, env):
        runner, config, _ = env
        result = runner.invoke(
            main, ["--config", config, "evaluate", "http://127.0.0.1:1/x"]
        )
        assert result.exit_code == 1
        assert json.loads(result.output)["error"]["code"] == "fetch_failed"

    def test_export_kde_without_data_is_error(self, env):
        runner, config, _ = env
        result = runner.invoke(
            main,
            ["--config", config, "export", "kde", "--topic", "covid-19",
             "--metric", "reactions"],
        )
        assert result.exit_code != 0

    def test_export_activity_to_file(self, env):
        runner, config, tmp = env
        out = tmp / "activity.csv"
        result = runner.invoke(
            main,
            ["--config", config, "export", "activity", "--topic", "covid-19",
             "--from", "2020-02-01", "--to", "2020-02-02", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        assert out.read_bytes().startswith(b"date,class,mean_pct\r\n")

    def test_unknown_config_key_rejected(self, env, tmp_path):
        runner, _, _ = env
        bad = tmp_path / "bad.json"
        bad.write_text('{"no_such_key": 1}', encoding="utf-8")
        result = runner.invoke(main, ["--config", str(bad), "migrate"])
        assert result.exit_code != 0
