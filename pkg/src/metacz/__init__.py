"""metacz - exact simulation of metasurface-based photonic CZ gates."""

__version__ = "0.1.0"

from .analysis import (
    extract_operator,
    ghz_prepare,
    ideal_cascaded_unitary,
    independent_gates_check,
    process_fidelity,
    truth_table,
)
from .encodings import (
    cascaded_encoding,
    inject,
    path_cz_encoding,
    polarization_cz_encoding,
    post_select,
)
from .evolution import evolve
from .fock import FockState, PhotonicState
from .metasurface import MetasurfaceConfig, build_parallel_bs
from .scenarios import ScenarioFactory, ScenarioType

__all__ = [
    "FockState",
    "MetasurfaceConfig",
    "PhotonicState",
    "ScenarioFactory",
    "ScenarioType",
    "build_parallel_bs",
    "cascaded_encoding",
    "evolve",
    "extract_operator",
    "ghz_prepare",
    "ideal_cascaded_unitary",
    "independent_gates_check",
    "inject",
    "path_cz_encoding",
    "polarization_cz_encoding",
    "post_select",
    "process_fidelity",
    "truth_table",
]
