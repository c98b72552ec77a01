"""
Tests for the application factory and logging setup
"""

import logging

import pytest

from app import LOG_HANDLER_NAME, configure_logging, create_app


def named_handlers():
    return [h for h in logging.getLogger().handlers if h.get_name() == LOG_HANDLER_NAME]


@pytest.mark.unit
class TestCreateApp:
    """Factory configuration"""

    def test_testing_config(self, app):
        """The testing config tightens the oracle state limit"""
        assert app.config['TESTING'] is True
        assert app.config['ORACLE_MAX_STATES'] == 10 ** 7

    def test_unknown_config(self):
        """Unknown configuration names are refused"""
        with pytest.raises(ValueError, match='staging'):
            create_app('staging')

    def test_commands_registered(self, app):
        """Every command is top level"""
        runner = app.test_cli_runner()
        result = runner.invoke(args=['--help'])
        for command in ('gen', 'solve1d', 'approx2d', 'oracle', 'verify', 'export-dot', 'batch'):
            assert command in result.output


@pytest.mark.unit
class TestConfigureLogging:
    """Stderr handler installed once"""

    def test_handler_added_once(self, app):
        """Repeated setup keeps a single named handler"""
        configure_logging('INFO')
        configure_logging('DEBUG')
        assert len(named_handlers()) == 1

    def test_level_applied(self, app):
        """The root logger follows the configured level"""
        configure_logging('ERROR')
        assert logging.getLogger().level == logging.ERROR
        configure_logging(app.config['LOG_LEVEL'])
        assert logging.getLogger().level == logging.WARNING
