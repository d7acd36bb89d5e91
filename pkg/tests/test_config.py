from pathlib import Path

import pytest

from thomcalc.config import features
from thomcalc.config.settings import (
    DEFAULT_PRIME,
    get_default_prime,
    get_log_dir,
    get_series_order,
    get_workspace_path,
)
from thomcalc.core.errors import CoefficientError, UsageError


@pytest.fixture
def flags():
    yield features
    features.set_discrepancy_warnings(True)
    features.set_theta_flags(True)


def test_default_prime(monkeypatch):
    monkeypatch.delenv("THOMCALC_PRIME", raising=False)
    assert get_default_prime() == DEFAULT_PRIME
    monkeypatch.setenv("THOMCALC_PRIME", "7")
    assert get_default_prime() == 7
    assert get_default_prime(2) == 2


def test_prime_must_be_prime(monkeypatch):
    with pytest.raises(CoefficientError):
        get_default_prime(4)
    monkeypatch.setenv("THOMCALC_PRIME", "9")
    with pytest.raises(CoefficientError):
        get_default_prime()
    monkeypatch.setenv("THOMCALC_PRIME", "three")
    with pytest.raises(UsageError):
        get_default_prime()


def test_workspace_path(monkeypatch, tmp_path):
    monkeypatch.delenv("THOMCALC_WORKSPACE", raising=False)
    monkeypatch.chdir(tmp_path)
    assert get_workspace_path() == tmp_path / "thomcalc.workspace.json"
    monkeypatch.setenv("THOMCALC_WORKSPACE", str(tmp_path / "env.json"))
    assert get_workspace_path() == tmp_path / "env.json"
    assert get_workspace_path("arg.json") == Path("arg.json")


def test_series_order(monkeypatch):
    monkeypatch.delenv("THOMCALC_SERIES_ORDER", raising=False)
    assert get_series_order() == 16
    monkeypatch.setenv("THOMCALC_SERIES_ORDER", "8")
    assert get_series_order() == 8
    assert get_series_order(4) == 4
    monkeypatch.setenv("THOMCALC_SERIES_ORDER", "0")
    with pytest.raises(UsageError):
        get_series_order()


def test_log_dir(monkeypatch, tmp_path):
    monkeypatch.setenv("THOMCALC_LOG_DIR", str(tmp_path))
    assert get_log_dir() == tmp_path


def test_feature_flags(flags):
    assert flags.get_discrepancy_warnings()
    assert flags.get_theta_flags()
    flags.set_discrepancy_warnings(False)
    flags.set_theta_flags(False)
    assert not flags.get_discrepancy_warnings()
    assert not flags.get_theta_flags()
