"""Utility helpers for logging and result serialization."""

from . import logger, serialization
from .logger import SimulationLogger, get_simulation_logger

__all__ = ["logger", "serialization", "SimulationLogger", "get_simulation_logger"]
