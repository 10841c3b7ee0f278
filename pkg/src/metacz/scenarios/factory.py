from enum import Enum

from ..encodings import EncodingType
from .gates import CascadedScenario, GHZScenario, PathCZScenario, SingleCZScenario
from .scenario import GateScenario


class ScenarioType(Enum):
    SINGLE_CZ = "single_cz"
    CASCADED = "cascaded"
    GHZ = "ghz"
    PATH_CZ = "path_cz"

    def __str__(self) -> str:
        return self.value


class ScenarioFactory:
    scenarios = {
        ScenarioType.SINGLE_CZ: SingleCZScenario(),
        ScenarioType.CASCADED: CascadedScenario(),
        ScenarioType.GHZ: GHZScenario(),
        ScenarioType.PATH_CZ: PathCZScenario(),
    }

    _by_encoding = {
        EncodingType.POLARIZATION: ScenarioType.SINGLE_CZ,
        EncodingType.CASCADED: ScenarioType.CASCADED,
        EncodingType.PATH: ScenarioType.PATH_CZ,
    }

    @staticmethod
    def get_scenario(scenario_type: ScenarioType) -> GateScenario:
        return ScenarioFactory.scenarios[scenario_type]

    @staticmethod
    def for_encoding(encoding_type: EncodingType) -> GateScenario:
        """Scenario whose register is the given encoding."""
        return ScenarioFactory.scenarios[ScenarioFactory._by_encoding[encoding_type]]

    @staticmethod
    def cascade(n_qubits: int) -> GateScenario:
        """Cascaded scenario over a chain of ``n_qubits`` qubits."""
        if n_qubits == 3:
            return ScenarioFactory.scenarios[ScenarioType.CASCADED]
        return CascadedScenario(n_qubits)
