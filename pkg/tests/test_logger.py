"""Tests for the SimulationLogger class."""

import logging
import shutil
import tempfile
from pathlib import Path
from unittest.mock import MagicMock, patch

from metacz.utils import SimulationLogger, get_simulation_logger


class TestSimulationLogger:
    """Test cases for the SimulationLogger singleton class."""

    def setup_method(self):
        """Set up test environment before each test."""
        SimulationLogger._instance = None
        SimulationLogger._logger = None

        self.temp_dir = tempfile.mkdtemp()
        self.logs_dir = Path(self.temp_dir) / "logs"
        self.logs_dir.mkdir(exist_ok=True)

    def teardown_method(self):
        """Clean up after each test."""
        SimulationLogger._instance = None
        SimulationLogger._logger = None
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def _mocked(self):
        logger = SimulationLogger()
        mock_logger = MagicMock()
        logger._logger = mock_logger
        return logger, mock_logger

    def test_singleton_pattern(self):
        """Test that SimulationLogger follows the singleton pattern."""
        logger1 = SimulationLogger()
        logger2 = SimulationLogger()

        assert logger1 is logger2

    def test_get_simulation_logger_function(self):
        """Test the convenience function returns the same instance."""
        logger1 = get_simulation_logger()
        logger2 = get_simulation_logger()

        assert logger1 is logger2
        assert isinstance(logger1, SimulationLogger)

    @patch("metacz.utils.logger.Path")
    def test_initialization_creates_logs_directory(self, mock_path):
        """Test that the logger creates its logs directory."""
        shutil.rmtree(self.logs_dir)
        mock_path.return_value = self.logs_dir

        SimulationLogger()

        assert self.logs_dir.exists()

    def test_logger_initialization(self):
        """Test the underlying logger name and level."""
        with patch("metacz.utils.logger.Path") as mock_path:
            mock_path.return_value = self.logs_dir

            underlying_logger = SimulationLogger().get_logger()

            assert isinstance(underlying_logger, logging.Logger)
            assert underlying_logger.name == "metacz"
            assert underlying_logger.level == logging.INFO

    def test_logger_has_file_handler(self):
        """Test that a file handler is configured."""
        with patch("metacz.utils.logger.Path") as mock_path:
            mock_path.return_value = self.logs_dir

            underlying_logger = SimulationLogger().get_logger()
            file_handlers = [
                h
                for h in underlying_logger.handlers
                if isinstance(h, logging.FileHandler)
            ]
            assert len(file_handlers) > 0

    def test_log_run_start(self):
        """Test logging the start of a command with its config."""
        with patch("metacz.utils.logger.Path") as mock_path:
            mock_path.return_value = self.logs_dir
            logger, mock_logger = self._mocked()

            logger.log_run_start("truth-table", {"order_min": -1})

            mock_logger.info.assert_called_once()
            call_args = mock_logger.info.call_args[0][0]
            assert "RUN_START: truth-table" in call_args
            assert "'order_min': -1" in call_args

    def test_log_run_start_without_config(self):
        """Test logging a command start with no config."""
        with patch("metacz.utils.logger.Path") as mock_path:
            mock_path.return_value = self.logs_dir
            logger, mock_logger = self._mocked()

            logger.log_run_start("ghz")

            call_args = mock_logger.info.call_args[0][0]
            assert call_args == "RUN_START: ghz"

    def test_log_run_end(self):
        """Test logging the end of a command with the output checksum."""
        with patch("metacz.utils.logger.Path") as mock_path:
            mock_path.return_value = self.logs_dir
            logger, mock_logger = self._mocked()

            logger.log_run_end("sweep", "abc123")

            call_args = mock_logger.info.call_args[0][0]
            assert "RUN_END: sweep" in call_args
            assert "sha256=abc123" in call_args

    def test_log_sweep_point(self):
        """Test logging one sweep grid point."""
        with patch("metacz.utils.logger.Path") as mock_path:
            mock_path.return_value = self.logs_dir
            logger, mock_logger = self._mocked()

            logger.log_sweep_point("ratio_delta", 0.05, 0.9959, 0.114375)

            call_args = mock_logger.info.call_args[0][0]
            assert "SWEEP: ratio_delta=0.05" in call_args
            assert "fidelity=0.9959" in call_args
            assert "success=0.114375" in call_args

    def test_log_error(self):
        """Test logging error messages."""
        with patch("metacz.utils.logger.Path") as mock_path:
            mock_path.return_value = self.logs_dir
            logger, mock_logger = self._mocked()

            logger.log_error("Malformed config", "run_7")

            mock_logger.error.assert_called_once()
            call_args = mock_logger.error.call_args[0][0]
            assert "ERROR: Malformed config" in call_args
            assert "[Run: run_7]" in call_args

    def test_log_info_without_run_id(self):
        """Test logging info messages without a run id."""
        with patch("metacz.utils.logger.Path") as mock_path:
            mock_path.return_value = self.logs_dir
            logger, mock_logger = self._mocked()

            logger.log_info("truth table ready")

            call_args = mock_logger.info.call_args[0][0]
            assert "INFO: truth table ready" in call_args
            assert "[Run:" not in call_args
