import logging

import pytest

from errors import ConfigurationError
from settings import LOGGER_NAME, configure_logging, get_logger, get_settings


def test_defaults():
    settings = get_settings()
    assert settings.default_fuel == 64
    assert settings.max_poset_size == 12
    assert settings.log_level == "WARNING"


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("APARTDOMAIN_DEFAULT_FUEL", "200")
    monkeypatch.setenv("APARTDOMAIN_LOG_LEVEL", "debug")
    settings = get_settings()
    assert settings.default_fuel == 200
    assert settings.log_level == "DEBUG"


@pytest.mark.parametrize("var, value", [
    ("APARTDOMAIN_DEFAULT_FUEL", "0"),
    ("APARTDOMAIN_DEFAULT_FUEL", "lots"),
    ("APARTDOMAIN_MAX_POSET_SIZE", "-2"),
    ("APARTDOMAIN_LOG_LEVEL", "chatty"),
])
def test_invalid_values(monkeypatch, var, value):
    monkeypatch.setenv(var, value)
    with pytest.raises(ConfigurationError):
        get_settings()


def test_logging_is_configured_once():
    logger = configure_logging("INFO")
    handlers = list(logger.handlers)
    configure_logging("DEBUG")
    assert logger.handlers == handlers
    assert logger.level == logging.DEBUG
    assert get_logger("ideal").name == f"{LOGGER_NAME}.ideal"
