"""
Tests for configuration loading
"""
import pytest

from pbeauville.config import DEFAULT_CONFIG_PATH, Settings, get_settings, load_settings, resolve_seed


def test_packaged_config_loads():
    """Test that the packaged config.yaml validates."""
    settings = load_settings(DEFAULT_CONFIG_PATH)

    assert isinstance(settings, Settings)
    assert settings.limits.table_order <= settings.limits.max_order
    assert settings.consistency.exhaustive_order == 4096
    assert settings.consistency.samples >= 1_000_000
    assert settings == Settings()


def test_suite_config_override():
    """Test that the test run reads tests/config.yaml and keeps the other defaults."""
    settings = get_settings()

    assert settings.consistency.exhaustive_order == 64
    assert settings.consistency.samples == 2000
    assert settings.limits == Settings().limits


def test_missing_config_falls_back(tmp_path, caplog):
    """Test that a missing file gives the defaults with a warning."""
    settings = load_settings(tmp_path / "absent.yaml")

    assert settings == Settings()
    assert "not found" in caplog.text


def test_partial_config(tmp_path, monkeypatch):
    """Test that a file overrides only the keys it names."""
    path = tmp_path / "config.yaml"
    path.write_text("limits:\n  table_order: 256\nsearch:\n  random_budget: 10\n")
    monkeypatch.setenv("BEAUVILLE_CONFIG", str(path))

    settings = load_settings()

    assert settings.limits.table_order == 256
    assert settings.search.random_budget == 10
    assert settings.limits.max_order == Settings().limits.max_order


def test_resolve_seed(monkeypatch):
    """Test the seed precedence: argument, environment, zero."""
    monkeypatch.delenv("BEAUVILLE_SEED", raising=False)
    assert resolve_seed() == 0
    monkeypatch.setenv("BEAUVILLE_SEED", "42")
    assert resolve_seed() == 42
    assert resolve_seed(7) == 7
    monkeypatch.setenv("BEAUVILLE_SEED", "forty")
    with pytest.raises(ValueError, match="BEAUVILLE_SEED"):
        resolve_seed()
