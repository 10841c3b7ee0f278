from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Tuple

from ..encodings import QubitEncoding
from ..errors import BasisMismatchError, ConfigError
from ..linalg import ComplexMatrix
from ..metasurface import MetasurfaceConfig, ModeBasis, ModeUnitary, build_parallel_bs


@dataclass(frozen=True)
class ScenarioResult:
    process_fidelity: float
    mean_success_probability: float


class GateScenario(ABC):
    """
    A gate construction: default order range, encoding and ideal target.

    Scenarios are shared by the command line and the sweep harness.
    """

    name: str = ""

    @abstractmethod
    def default_config(self) -> MetasurfaceConfig:
        pass

    @abstractmethod
    def encoding(self, basis: Optional[ModeBasis] = None) -> QubitEncoding:
        pass

    @abstractmethod
    def ideal(self) -> ComplexMatrix:
        pass

    @abstractmethod
    def evaluate(self, config: Optional[MetasurfaceConfig] = None) -> ScenarioResult:
        pass

    def prepare(
        self, config: Optional[MetasurfaceConfig] = None
    ) -> Tuple[ModeUnitary, QubitEncoding]:
        """
        Build the metasurface unitary and the encoding placed on its basis.

        Raises:
            ConfigError: if the configured order range misses encoded modes
        """
        u = build_parallel_bs(config or self.default_config())
        try:
            enc = self.encoding(u.basis)
        except BasisMismatchError as exc:
            raise ConfigError(
                f"Scenario '{self.name}' does not fit orders {u.basis.orders}: {exc}"
            ) from exc
        return u, enc
