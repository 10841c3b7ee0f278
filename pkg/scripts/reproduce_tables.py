#!/usr/bin/env python3
"""Print the single-gate and cascaded-gate truth tables and the GHZ result."""

import os
import sys

# Add the src directory to the Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from metacz.analysis import TruthTableBasis, ghz_prepare, truth_table
from metacz.scenarios import ScenarioFactory, ScenarioType


def print_table(scenario_type, basis=TruthTableBasis.STANDARD):
    """Print one truth table with phases and success probabilities."""
    scenario = ScenarioFactory.get_scenario(scenario_type)
    u, enc = scenario.prepare()
    table = truth_table(u, enc, basis)

    print(f"\n{scenario.name} ({basis.value}), qubit order {''.join(enc.labels)}:")
    for row in table.rows:
        sign = "-" if row.phase.real < 0 else "+"
        print(
            f"  |{row.input_label}> -> {sign}|{row.output_label}>"
            f"   p = {row.success_probability:.6f}"
        )


def print_ghz():
    """Print the GHZ fidelity, success probability and marginal purities."""
    u, enc = ScenarioFactory.get_scenario(ScenarioType.GHZ).prepare()
    report = ghz_prepare(u, enc)
    print("\nGHZ preparation from |+++>:")
    print(f"  fidelity            {report.fidelity:.12f}")
    print(f"  success probability {report.success_probability:.12f}")
    for label, purity in zip(enc.labels, report.purities):
        print(f"  purity {label}            {purity:.12f}")


if __name__ == "__main__":
    print_table(ScenarioType.SINGLE_CZ)
    print_table(ScenarioType.PATH_CZ)
    print_table(ScenarioType.CASCADED)
    print_table(ScenarioType.CASCADED, TruthTableBasis.HADAMARD_ST)
    print_ghz()
