from .factory import ScenarioFactory, ScenarioType
from .scenario import GateScenario, ScenarioResult

__all__ = ["GateScenario", "ScenarioFactory", "ScenarioResult", "ScenarioType"]
