import logging

import pytest

from oddeven.conf import monkay, settings
from oddeven.core.logging import RichLoggingConfig
from oddeven.logging import LoggingConfig, logger, setup_logging


class DummyConfig(LoggingConfig):
    def __init__(self):
        super().__init__()
        self.configured = False

    def configure(self):
        self.configured = True

    def get_logger(self):
        return logging.getLogger("dummy")


@pytest.fixture
def dummy_logging():
    original = monkay.settings.logging_config
    config = DummyConfig()
    monkay.settings.logging_config = config
    yield config
    monkay.settings.logging_config = original
    setup_logging(original)


def test_custom_logging_config(dummy_logging):
    assert isinstance(monkay.settings.logging_config, DummyConfig)

    setup_logging(monkay.settings.logging_config)
    logger.info("hi")

    assert dummy_logging.configured
    assert logger.name == "dummy"


def test_logger_proxy_enables_logging_on_first_use():
    logger.bind_logger(None)
    settings.is_logging_setup = False

    logger.debug("configured")

    assert settings.is_logging_setup
    assert logger.name == "oddeven"


def test_invalid_level():
    with pytest.raises(ValueError, match="not a valid logging level"):
        RichLoggingConfig(level="LOUD")


def test_setup_logging_rejects_other_objects():
    with pytest.raises(ValueError):
        setup_logging(object())


def test_rich_config_targets_the_package_logger():
    config = RichLoggingConfig(level="debug")

    assert config.level == "DEBUG"
    assert config.config["loggers"]["oddeven"]["level"] == "DEBUG"
    assert config.get_logger() is logging.getLogger("oddeven")


def test_default_logging_config_follows_the_settings():
    assert isinstance(settings.logging_config, LoggingConfig)
