"""Imperfection sweeps: fidelity and success probability over a parameter grid."""

from concurrent.futures import Future, ThreadPoolExecutor, as_completed
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .errors import MetaczError, SweepError, UsageError
from .metasurface import MetasurfaceConfig, config_to_dict, perturb_ratio
from .scenarios import ScenarioFactory, ScenarioType
from .utils import get_simulation_logger
from .utils.serialization import render_csv

SWEEP_CSV_HEADER = ("parameter", "value", "process_fidelity", "mean_success_probability")


class SweepParameter(Enum):
    RATIO_DELTA = "ratio_delta"
    EFFICIENCY = "efficiency"
    CONVERSION_EFFICIENCY = "conversion_efficiency"

    def __str__(self) -> str:
        return self.value

    @property
    def domain(self) -> Tuple[float, float, bool, bool]:
        """(low, high, low_inclusive, high_inclusive)."""
        return _DOMAINS[self]

    def contains(self, value: float) -> bool:
        low, high, low_in, high_in = self.domain
        above = value >= low if low_in else value > low
        below = value <= high if high_in else value < high
        return above and below


# Ratio delta keeps the ideal power fraction (1/3)(1 + delta) inside (0, 1).
_DOMAINS = {
    SweepParameter.RATIO_DELTA: (-1.0, 2.0, False, False),
    SweepParameter.EFFICIENCY: (0.0, 1.0, False, True),
    SweepParameter.CONVERSION_EFFICIENCY: (0.0, 1.0, True, True),
}


@dataclass(frozen=True)
class SweepSpec:
    """
    Evenly spaced grid of one imperfection parameter for one scenario.

    Raises:
        UsageError: if ``steps < 2``, ``minimum >= maximum`` or the range
            leaves the parameter's physical domain
    """

    parameter: SweepParameter
    minimum: float
    maximum: float
    steps: int
    scenario: ScenarioType = ScenarioType.SINGLE_CZ

    def __post_init__(self) -> None:
        object.__setattr__(self, "parameter", SweepParameter(self.parameter))
        object.__setattr__(self, "scenario", ScenarioType(self.scenario))
        if self.steps < 2:
            raise UsageError(f"A sweep needs at least 2 steps, got {self.steps}")
        if not self.minimum < self.maximum:
            raise UsageError(
                f"Sweep minimum {self.minimum} must be below maximum {self.maximum}"
            )
        for bound in (self.minimum, self.maximum):
            if not self.parameter.contains(bound):
                low, high, low_in, high_in = self.parameter.domain
                interval = f"{'[' if low_in else '('}{low}, {high}{']' if high_in else ')'}"
                raise UsageError(
                    f"{self.parameter.value} value {bound} outside its domain {interval}"
                )

    def values(self) -> List[float]:
        return [float(v) for v in np.linspace(self.minimum, self.maximum, self.steps)]


@dataclass(frozen=True)
class SweepRow:
    value: float
    process_fidelity: float
    mean_success_probability: float


def apply_parameter(
    base: MetasurfaceConfig, parameter: SweepParameter, value: float
) -> MetasurfaceConfig:
    """Configuration with one imperfection parameter set to ``value``."""
    if parameter is SweepParameter.RATIO_DELTA:
        return perturb_ratio(base, value)
    if parameter is SweepParameter.EFFICIENCY:
        return replace(base, global_efficiency=value)
    return replace(base, conversion_efficiency=value)


def _evaluate_point(
    spec: SweepSpec, base: MetasurfaceConfig, value: float
) -> SweepRow:
    scenario = ScenarioFactory.get_scenario(spec.scenario)
    try:
        result = scenario.evaluate(apply_parameter(base, spec.parameter, value))
    except MetaczError as exc:
        raise SweepError(
            f"{spec.scenario.value} failed at {spec.parameter.value}={value!r}: {exc}"
        ) from exc
    get_simulation_logger().log_sweep_point(
        spec.parameter.value,
        value,
        result.process_fidelity,
        result.mean_success_probability,
    )
    return SweepRow(value, result.process_fidelity, result.mean_success_probability)


def run_sweep(
    spec: SweepSpec,
    base: Optional[MetasurfaceConfig] = None,
    workers: Optional[int] = None,
) -> List[SweepRow]:
    """
    Evaluate the scenario at every grid value of ``spec``.

    Args:
        spec: Validated sweep grid
        base: Unperturbed configuration; the scenario default when omitted
        workers: Thread-pool size; points run serially when None or 1

    Returns:
        One row per grid value, ordered by value regardless of completion order

    Raises:
        SweepError: if a grid point cannot be built or evaluated
    """
    if base is None:
        base = ScenarioFactory.get_scenario(spec.scenario).default_config()
    values = spec.values()

    if workers is None or workers <= 1:
        return [_evaluate_point(spec, base, value) for value in values]

    futures: Dict[Future, int] = {}
    ordered: Dict[int, SweepRow] = {}
    with ThreadPoolExecutor(max_workers=workers) as executor:
        for idx, value in enumerate(values):
            futures[executor.submit(_evaluate_point, spec, base, value)] = idx
        for future in as_completed(futures):
            ordered[futures[future]] = future.result()
    return [ordered[idx] for idx in range(len(values))]


def sweep_csv_rows(spec: SweepSpec, rows: List[SweepRow]) -> List[Tuple[Any, ...]]:
    return [
        (
            spec.parameter.value,
            row.value,
            row.process_fidelity,
            row.mean_success_probability,
        )
        for row in rows
    ]


def render_sweep_csv(spec: SweepSpec, rows: List[SweepRow]) -> str:
    """CSV text with header parameter,value,process_fidelity,mean_success_probability."""
    return render_csv(SWEEP_CSV_HEADER, sweep_csv_rows(spec, rows))


def sweep_document(
    spec: SweepSpec, rows: List[SweepRow], base: MetasurfaceConfig
) -> Dict[str, Any]:
    """JSON mirror of the CSV with scenario metadata."""
    scenario = ScenarioFactory.get_scenario(spec.scenario)
    return {
        "scenario": spec.scenario.value,
        "parameter": spec.parameter.value,
        "range": {
            "min": spec.minimum,
            "max": spec.maximum,
            "steps": spec.steps,
        },
        "qubit_order": "".join(scenario.encoding().labels),
        "base_config": config_to_dict(base),
        "rows": [
            {
                "value": row.value,
                "process_fidelity": row.process_fidelity,
                "mean_success_probability": row.mean_success_probability,
            }
            for row in rows
        ],
    }
