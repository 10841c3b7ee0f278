"""Tests for the ScenarioFactory and ScenarioType."""

import pytest

from metacz.encodings import EncodingType
from metacz.scenarios.factory import ScenarioFactory, ScenarioType
from metacz.scenarios.gates import (
    CascadedScenario,
    GHZScenario,
    PathCZScenario,
    SingleCZScenario,
)


class TestScenarioType:
    """Test cases for the ScenarioType enum."""

    def test_scenario_type_values(self):
        """Test that ScenarioType has the expected values."""
        assert ScenarioType.SINGLE_CZ.value == "single_cz"
        assert ScenarioType.CASCADED.value == "cascaded"
        assert ScenarioType.GHZ.value == "ghz"
        assert ScenarioType.PATH_CZ.value == "path_cz"

    def test_scenario_type_from_name(self):
        """Test that command-line names resolve to members."""
        assert ScenarioType("ghz") is ScenarioType.GHZ
        assert str(ScenarioType.PATH_CZ) == "path_cz"


class TestScenarioFactory:
    """Test cases for the ScenarioFactory class."""

    def test_scenarios_dict_structure(self):
        """Test that every scenario type is registered."""
        assert isinstance(ScenarioFactory.scenarios, dict)
        assert set(ScenarioFactory.scenarios) == set(ScenarioType)

    @pytest.mark.parametrize(
        "scenario_type, cls",
        [
            (ScenarioType.SINGLE_CZ, SingleCZScenario),
            (ScenarioType.CASCADED, CascadedScenario),
            (ScenarioType.GHZ, GHZScenario),
            (ScenarioType.PATH_CZ, PathCZScenario),
        ],
    )
    def test_get_scenario(self, scenario_type, cls):
        """Test that each type maps to its scenario class."""
        assert isinstance(ScenarioFactory.get_scenario(scenario_type), cls)

    def test_get_scenario_singleton_behavior(self):
        """Test that get_scenario returns the same instance."""
        first = ScenarioFactory.get_scenario(ScenarioType.SINGLE_CZ)
        second = ScenarioFactory.get_scenario(ScenarioType.SINGLE_CZ)
        assert first is second

    def test_get_scenario_invalid_type(self):
        """Test that get_scenario raises KeyError for an invalid type."""
        with pytest.raises(KeyError):
            ScenarioFactory.get_scenario("invalid_scenario_type")

    def test_for_encoding(self):
        """Test the encoding to scenario mapping."""
        assert isinstance(
            ScenarioFactory.for_encoding(EncodingType.POLARIZATION), SingleCZScenario
        )
        assert isinstance(
            ScenarioFactory.for_encoding(EncodingType.CASCADED), CascadedScenario
        )
        assert isinstance(ScenarioFactory.for_encoding(EncodingType.PATH), PathCZScenario)

    def test_cascade(self):
        """Test that three qubits reuse the registered scenario and four build a new one."""
        assert ScenarioFactory.cascade(3) is ScenarioFactory.get_scenario(
            ScenarioType.CASCADED
        )
        longer = ScenarioFactory.cascade(4)
        assert isinstance(longer, CascadedScenario)
        assert longer.n_qubits == 4
