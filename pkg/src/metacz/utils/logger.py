import logging
from pathlib import Path
from typing import Any, Mapping, Optional


class SimulationLogger:
    """
    Singleton logger class for simulation runs, sweep points and errors.
    """

    _instance: Optional["SimulationLogger"] = None
    _logger: Optional[logging.Logger] = None

    def __new__(cls) -> "SimulationLogger":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialize_logger()
        return cls._instance

    def _initialize_logger(self) -> None:
        """Initialize the logger with proper configuration."""
        logs_dir = Path("logs")
        logs_dir.mkdir(exist_ok=True)

        self._logger = logging.getLogger("metacz")
        self._logger.setLevel(logging.INFO)

        if not self._logger.handlers:
            log_file = logs_dir / "metacz.log"
            file_handler = logging.FileHandler(log_file)
            file_handler.setLevel(logging.INFO)

            formatter = logging.Formatter(
                "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S",
            )
            file_handler.setFormatter(formatter)

            self._logger.addHandler(file_handler)

    def _require_logger(self) -> logging.Logger:
        if self._logger is None:
            self._initialize_logger()
            assert self._logger is not None
        return self._logger

    def log_run_start(
        self, command: str, config: Optional[Mapping[str, Any]] = None
    ) -> None:
        """
        Log the start of a command together with its resolved configuration.

        Args:
            command: Command name (e.g., 'truth-table', 'sweep')
            config: Resolved metasurface configuration as a mapping
        """
        config_info = f" config={dict(config)}" if config else ""
        self._require_logger().info(f"RUN_START: {command}{config_info}")

    def log_run_end(self, command: str, checksum: Optional[str] = None) -> None:
        """
        Log the successful end of a command.

        Args:
            command: Command name
            checksum: sha256 of the emitted output, when available
        """
        checksum_info = f" sha256={checksum}" if checksum else ""
        self._require_logger().info(f"RUN_END: {command}{checksum_info}")

    def log_sweep_point(
        self, parameter: str, value: float, fidelity: float, probability: float
    ) -> None:
        """Log one evaluated sweep grid point."""
        self._require_logger().info(
            f"SWEEP: {parameter}={value:.12g} fidelity={fidelity:.12g} "
            f"success={probability:.12g}"
        )

    def log_error(self, error_message: str, run_id: Optional[str] = None) -> None:
        """
        Log an error message.

        Args:
            error_message: The error message to log
            run_id: Optional run identifier
        """
        run_info = f" [Run: {run_id}]" if run_id else ""
        self._require_logger().error(f"ERROR: {error_message}{run_info}")

    def log_info(self, info_message: str, run_id: Optional[str] = None) -> None:
        """
        Log an informational message.

        Args:
            info_message: The informational message to log
            run_id: Optional run identifier
        """
        run_info = f" [Run: {run_id}]" if run_id else ""
        self._require_logger().info(f"INFO: {info_message}{run_info}")

    def get_logger(self) -> logging.Logger:
        """Get the underlying logger instance."""
        return self._require_logger()


def get_simulation_logger() -> SimulationLogger:
    """Get the singleton simulation logger instance."""
    return SimulationLogger()
