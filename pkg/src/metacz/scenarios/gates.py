"""Concrete CZ constructions on a single metasurface."""

from typing import Optional

from ..analysis import (
    cz_unitary,
    extract_operator,
    ghz_prepare,
    ideal_cascaded_unitary,
    process_fidelity,
)
from ..encodings import (
    QubitEncoding,
    cascaded_encoding,
    path_cz_encoding,
    polarization_cz_encoding,
)
from ..linalg import ComplexMatrix
from ..metasurface import MetasurfaceConfig, ModeBasis
from .scenario import GateScenario, ScenarioResult


class _OperatorScenario(GateScenario):
    """Scenario scored by the process fidelity of its post-selected operator."""

    def evaluate(self, config: Optional[MetasurfaceConfig] = None) -> ScenarioResult:
        u, enc = self.prepare(config)
        report = process_fidelity(extract_operator(u, enc), self.ideal())
        return ScenarioResult(
            report.process_fidelity, report.mean_success_probability
        )


class SingleCZScenario(_OperatorScenario):
    """Polarization-encoded CZ on paths 0 and +1."""

    name = "single_cz"

    def default_config(self) -> MetasurfaceConfig:
        return MetasurfaceConfig.ideal(-1, 2)

    def encoding(self, basis: Optional[ModeBasis] = None) -> QubitEncoding:
        return polarization_cz_encoding(basis=basis)

    def ideal(self) -> ComplexMatrix:
        return cz_unitary()


class PathCZScenario(_OperatorScenario):
    """Dual-rail CZ with each qubit spread over two paths."""

    name = "path_cz"

    def default_config(self) -> MetasurfaceConfig:
        return MetasurfaceConfig.ideal(-2, 3)

    def encoding(self, basis: Optional[ModeBasis] = None) -> QubitEncoding:
        return path_cz_encoding(basis=basis)

    def ideal(self) -> ComplexMatrix:
        return cz_unitary()


class CascadedScenario(_OperatorScenario):
    """
    CZ gates chained along neighbouring paths, scored against the cascaded circuit.

    Three qubits give the two gates sharing control C; each extra qubit adds
    one more gate at the end of the chain.
    """

    name = "cascaded"

    def __init__(self, n_qubits: int = 3):
        self.n_qubits = n_qubits

    def default_config(self) -> MetasurfaceConfig:
        return MetasurfaceConfig.ideal(-2, self.n_qubits - 1)

    def encoding(self, basis: Optional[ModeBasis] = None) -> QubitEncoding:
        return cascaded_encoding(basis, self.n_qubits)

    def ideal(self) -> ComplexMatrix:
        return ideal_cascaded_unitary(self.n_qubits)


class GHZScenario(CascadedScenario):
    """
    Cascaded gates fed with |+++>.

    ``ideal`` stays the cascaded gate unitary. ``evaluate`` scores the state
    overlap with the GHZ target instead of a process fidelity, and the
    success probability is that of the single |+++> input.
    """

    name = "ghz"

    def evaluate(self, config: Optional[MetasurfaceConfig] = None) -> ScenarioResult:
        u, enc = self.prepare(config)
        report = ghz_prepare(u, enc)
        return ScenarioResult(report.fidelity, report.success_probability)
