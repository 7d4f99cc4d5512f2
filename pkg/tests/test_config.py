"""Tests for src/config.py."""

import json

import pytest

from src.config import Config


@pytest.fixture
def fresh_config(tmp_path, monkeypatch):
    monkeypatch.setenv("SIEGELTHETA_CONFIG_DIR", str(tmp_path))
    return Config


def test_defaults(fresh_config):
    cfg = fresh_config()
    assert cfg.tol == 1e-9
    assert cfg.term_budget == 100_000_000
    assert cfg.inversion_threshold == 0.5
    assert cfg.log_level == "WARNING"
    assert not cfg.path.exists()


def test_setter_persists(fresh_config):
    cfg = fresh_config()
    cfg.tol = 1e-6
    cfg.seed = 42
    assert cfg.path.exists()
    reloaded = fresh_config()
    assert reloaded.tol == 1e-6
    assert reloaded.seed == 42


def test_unknown_keys_ignored(fresh_config, tmp_path):
    (tmp_path / "config.json").write_text(json.dumps({"count": 7, "model": "base"}), encoding="utf-8")
    cfg = fresh_config()
    assert cfg.count == 7
    assert "model" not in cfg._config


def test_corrupt_file_ignored(fresh_config, tmp_path):
    (tmp_path / "config.json").write_text("{broken", encoding="utf-8")
    assert fresh_config().word_len == 8


def test_reset(fresh_config):
    cfg = fresh_config()
    cfg.g = 3
    cfg.reset()
    assert cfg.g == 1
    assert fresh_config().g == 3


class TestSetFromText:
    @pytest.mark.parametrize("key, text, expected", [
        ("term_budget", "1e8", 100_000_000),
        ("seed", "-3", -3),
        ("tol", "1e-12", 1e-12),
        ("log_level", "debug", "DEBUG"),
        ("max_reduction_steps", "0", 0),
    ])
    def test_parses(self, fresh_config, key, text, expected):
        cfg = fresh_config()
        cfg.set_from_text(key, text)
        assert getattr(cfg, key) == expected
        assert getattr(fresh_config(), key) == expected

    @pytest.mark.parametrize("key, text", [
        ("tol", "0"), ("g", "2.5"), ("count", "-1"), ("inversion_threshold", "nan"), ("log_level", "LOUD"),
    ])
    def test_rejects(self, fresh_config, key, text):
        cfg = fresh_config()
        with pytest.raises(ValueError):
            cfg.set_from_text(key, text)
        assert not cfg.path.exists()

    def test_unknown_key(self, fresh_config):
        with pytest.raises(KeyError):
            fresh_config().set_from_text("model", "base")
