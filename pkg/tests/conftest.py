import json

import pytest

import thomcalc.config.logger
from thomcalc.cli.main import main
from thomcalc.config.logger import setup_logging


@pytest.fixture(scope="session", autouse=True)
def setup_test_logging(tmp_path_factory):
    """Initialize logging into a temporary directory before any tests run."""
    thomcalc.config.logger.log_dir_override = str(tmp_path_factory.mktemp("logs"))
    setup_logging(test_tag="pytest")


@pytest.fixture(scope="function")
def workspace_path(tmp_path, monkeypatch):
    """An empty workspace file location, also exported as THOMCALC_WORKSPACE."""
    path = tmp_path / "thomcalc.workspace.json"
    monkeypatch.setenv("THOMCALC_WORKSPACE", str(path))
    monkeypatch.delenv("THOMCALC_PRIME", raising=False)
    return path


@pytest.fixture(scope="function")
def cli(workspace_path, capsys):
    """Run the command line in-process; returns (exit code, stdout, stderr)."""
    def run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return run


@pytest.fixture(scope="function")
def cli_json(cli):
    """Run a command with --format json and decode its output."""
    def run(*argv):
        code, out, err = cli(*argv, "--format", "json")
        assert out, f"no output (exit {code}): {err}"
        return code, json.loads(out)
    return run
