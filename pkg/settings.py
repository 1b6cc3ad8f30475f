import logging
import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from errors import ConfigurationError

# Pick up APARTDOMAIN_* variables from a local .env, if any
load_dotenv()

LOGGER_NAME = "apartdomain"
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


class Settings(BaseModel):
    """Validated runtime configuration.

    Attributes:
        default_fuel: fuel used when a command gives no ``--fuel``
        max_poset_size: brute-force cap for the finite oracle
        log_level: name of the logging level for the ``apartdomain`` loggers
    """
    default_fuel: int = Field(default=64, ge=1)
    max_poset_size: int = Field(default=12, ge=1)
    log_level: str = "WARNING"

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"unknown log level {value!r}")
        return level


def get_settings() -> Settings:
    """Read and validate the APARTDOMAIN_* environment variables.

    Returns:
        Settings: a fresh snapshot of the configuration

    Raises:
        ConfigurationError: if a variable is set to an invalid value
    """
    raw = {
        "default_fuel": os.environ.get("APARTDOMAIN_DEFAULT_FUEL"),
        "max_poset_size": os.environ.get("APARTDOMAIN_MAX_POSET_SIZE"),
        "log_level": os.environ.get("APARTDOMAIN_LOG_LEVEL"),
    }
    try:
        return Settings(**{k: v for k, v in raw.items() if v not in (None, "")})
    except ValidationError as e:
        raise ConfigurationError(f"Invalid environment configuration: {e}") from e


def configure_logging(level: Optional[str] = None) -> logging.Logger:
    """Attach a stderr handler to the package logger (once) and set its level."""
    logger = logging.getLogger(LOGGER_NAME)
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
    logger.setLevel(level or get_settings().log_level)
    return logger


def get_logger(module: str) -> logging.Logger:
    """Logger for a module, parented under the package logger."""
    return logging.getLogger(f"{LOGGER_NAME}.{module}")
