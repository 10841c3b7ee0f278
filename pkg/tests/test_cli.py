"""Tests for the metacz command line."""

import csv
import io
import json

import pytest

from metacz import __version__
from metacz.cli import (
    EXIT_CONFIG,
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    TRUTH_TABLE_HEADER,
    RunManifest,
    main,
    parse_gates,
)
from metacz.errors import UsageError
from metacz.utils.serialization import checksum


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestParseGates:
    """Test cases for --gates parsing."""

    def test_two_pairs(self):
        """Test that pairs are ordered lower path first."""
        assert parse_gates("0,1;-2,-3") == [(0, 1), (-3, -2)]

    @pytest.mark.parametrize(
        "text", ["0,1;0,-1", "0,2;-2,-3", "0,1", "0,1;2,3;4,5", "a,b;0,1", "0;1"]
    )
    def test_rejected(self, text):
        """Test that malformed or overlapping gates raise UsageError."""
        with pytest.raises(UsageError):
            parse_gates(text)


class TestTruthTableCommand:
    """Test cases for the truth-table command."""

    def test_polarization_json(self, capsys):
        """Test four rows with success 1/9 and a sign flip on 11."""
        status, out, _ = run(capsys, "truth-table", "--encoding", "polarization")
        assert status == EXIT_OK
        document = json.loads(out)
        assert document["qubit_order"] == "CT"
        assert len(document["rows"]) == 4
        for row in document["rows"]:
            assert row["success_probability"] == pytest.approx(1 / 9, abs=1e-12)
            expected = -1.0 if row["input"] == "11" else 1.0
            assert row["phase_re"] == pytest.approx(expected, abs=1e-12)

    def test_cascaded_hadamard_csv(self, capsys):
        """Test eight CSV rows in the Hadamard basis."""
        status, out, _ = run(
            capsys,
            "truth-table",
            "--encoding",
            "cascaded",
            "--basis",
            "hadamard_st",
            "--format",
            "csv",
        )
        assert status == EXIT_OK
        rows = list(csv.reader(io.StringIO(out)))
        assert tuple(rows[0]) == TRUTH_TABLE_HEADER
        assert len(rows) == 9
        assert rows[1][:2] == ["0++", "0-+"]
        for row in rows[1:]:
            assert float(row[4]) == pytest.approx(1 / 27, rel=1e-11)

    def test_unknown_encoding(self, capsys):
        """Test that an unknown encoding exits with status 2."""
        with pytest.raises(SystemExit) as exc:
            main(["truth-table", "--encoding", "bogus"])
        assert exc.value.code == EXIT_USAGE

    def test_hadamard_needs_cascaded(self, capsys):
        """Test that hadamard_st on the single gate is a usage error."""
        status, out, err = run(
            capsys, "truth-table", "--encoding", "polarization", "--basis", "hadamard_st"
        )
        assert status == EXIT_USAGE
        assert out == ""
        assert "hadamard_st" in err

    def test_config_range_too_small(self, capsys, tmp_path):
        """Test that a config that cannot hold the encoding is a config error."""
        path = tmp_path / "small.json"
        path.write_text(json.dumps({"order_min": -1, "order_max": 2}))
        status, out, _ = run(
            capsys, "truth-table", "--encoding", "cascaded", "--config", str(path)
        )
        assert status == EXIT_CONFIG
        assert out == ""

    def test_deterministic_output(self, capsys):
        """Test that identical invocations print identical bytes."""
        _, first, _ = run(capsys, "truth-table", "--encoding", "path")
        _, second, _ = run(capsys, "truth-table", "--encoding", "path")
        assert first == second


class TestGHZCommand:
    """Test cases for the ghz command."""

    def test_default(self, capsys):
        """Test fidelity 1 and success 1/27."""
        status, out, _ = run(capsys, "ghz")
        assert status == EXIT_OK
        document = json.loads(out)
        assert document["fidelity"] == pytest.approx(1.0, abs=1e-12)
        assert document["success_probability"] == pytest.approx(1 / 27, abs=1e-12)
        assert document["qubit_order"] == "CST"
        assert set(document["purities"]) == {"C", "S", "T"}

    def test_ratio_delta_config(self, capsys, tmp_path):
        """Test that a perturbed config lowers the fidelity."""
        path = tmp_path / "delta.json"
        path.write_text(json.dumps({"ratio_delta": 0.05}))
        status, out, _ = run(capsys, "ghz", "--config", str(path))
        assert status == EXIT_OK
        assert json.loads(out)["fidelity"] < 1

    def test_malformed_config(self, capsys, tmp_path):
        """Test that broken JSON exits with status 3 and no output."""
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        status, out, err = run(capsys, "ghz", "--config", str(path))
        assert status == EXIT_CONFIG
        assert out == ""
        assert "Malformed JSON" in err

    def test_csv(self, capsys):
        """Test the quantity/value CSV layout."""
        status, out, _ = run(capsys, "ghz", "--format", "csv")
        assert status == EXIT_OK
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["quantity", "value"]
        assert rows[1][0] == "fidelity"


class TestSweepCommand:
    """Test cases for the sweep command."""

    def test_ratio_delta(self, capsys):
        """Test eleven rows starting at fidelity 1."""
        status, out, _ = run(
            capsys,
            "sweep",
            "--param",
            "ratio_delta",
            "--min",
            "0",
            "--max",
            "0.05",
            "--steps",
            "11",
            "--scenario",
            "single_cz",
            "--format",
            "csv",
        )
        assert status == EXIT_OK
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == [
            "parameter",
            "value",
            "process_fidelity",
            "mean_success_probability",
        ]
        assert len(rows) == 12
        assert float(rows[1][2]) == pytest.approx(1.0, abs=1e-11)

    def test_efficiency(self, capsys):
        """Test that the success column follows eta^2 / 9."""
        status, out, _ = run(
            capsys, "sweep", "--param", "efficiency", "--min", "0.4", "--max", "0.7",
            "--steps", "4",
        )
        assert status == EXIT_OK
        document = json.loads(out)
        assert len(document["rows"]) == 4
        for row in document["rows"]:
            assert row["mean_success_probability"] == pytest.approx(
                row["value"] ** 2 / 9, rel=1e-10
            )

    def test_workers_do_not_change_output(self, capsys):
        """Test that threaded sweeps print the serial bytes."""
        argv = ["sweep", "--param", "ratio_delta", "--min", "0", "--max", "0.1"]
        _, serial, _ = run(capsys, *argv)
        _, threaded, _ = run(capsys, *argv, "--workers", "3")
        assert serial == threaded

    def test_out_of_domain(self, capsys):
        """Test that a range outside the ratio domain exits with status 2."""
        status, out, _ = run(
            capsys, "sweep", "--param", "ratio_delta", "--min", "-2", "--max", "2"
        )
        assert status == EXIT_USAGE
        assert out == ""


class TestIndependentCommand:
    """Test cases for the independent command."""

    def test_factorizes(self, capsys):
        """Test deviation below 1e-12 and joint success 1/81."""
        status, out, _ = run(capsys, "independent", "--gates", "0,1;-2,-3")
        assert status == EXIT_OK
        document = json.loads(out)
        assert document["max_deviation"] < 1e-12
        assert document["factorizes"] is True
        assert document["joint_success_probability"] == pytest.approx(1 / 81, abs=1e-12)
        assert document["orders"] == [-4, 2]

    def test_shared_path(self, capsys):
        """Test that gates sharing path 0 exit with status 2."""
        status, out, _ = run(capsys, "independent", "--gates", "0,1;0,-1")
        assert status == EXIT_USAGE
        assert out == ""

    def test_shared_auxiliary_mode(self, capsys):
        """Test that gates on disjoint but touching paths exit with status 2."""
        status, _, err = run(capsys, "independent", "--gates", "0,1;2,3")
        assert status == EXIT_USAGE
        assert "share" in err

    def test_distant_gates(self, capsys):
        """Test that gates ten paths apart evolve on their own blocks only."""
        status, out, _ = run(capsys, "independent", "--gates", "0,1;-10,-9")
        assert status == EXIT_OK
        document = json.loads(out)
        assert document["orders"] == [-11, 2]
        assert document["pairs"] == [-11, -10, -9, -1, 0, 1]
        assert document["factorizes"] is True
        assert document["joint_success_probability"] == pytest.approx(1 / 81, abs=1e-12)

    def test_config_misses_gate(self, capsys, tmp_path):
        """Test that a config range without a gate's splitters is a config error."""
        path = tmp_path / "narrow.json"
        path.write_text(json.dumps({"order_min": -1, "order_max": 2}))
        status, out, _ = run(
            capsys, "independent", "--gates", "0,1;-3,-2", "--config", str(path)
        )
        assert status == EXIT_CONFIG
        assert out == ""


class TestOperatorCommand:
    """Test cases for the operator command."""

    def test_json_matrix(self, capsys):
        """Test that the single gate dumps CZ / 3."""
        status, out, _ = run(capsys, "operator")
        assert status == EXIT_OK
        document = json.loads(out)
        assert document["matrix"][3][3] == pytest.approx([-1 / 3, 0.0], abs=1e-12)
        assert document["matrix"][0][1] == [0.0, 0.0]
        assert document["process_fidelity"] == pytest.approx(1.0, abs=1e-12)

    def test_csv_entries(self, capsys):
        """Test one CSV row per matrix entry of the cascaded operator."""
        status, out, _ = run(capsys, "operator", "--encoding", "cascaded", "--format", "csv")
        assert status == EXIT_OK
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["input", "output", "re", "im"]
        assert len(rows) == 1 + 64

    def test_four_qubit_cascade(self, capsys):
        """Test that --qubits 4 extends the chain to a 16x16 operator."""
        status, out, _ = run(capsys, "operator", "--encoding", "cascaded", "--qubits", "4")
        assert status == EXIT_OK
        document = json.loads(out)
        assert document["qubit_order"] == "CSTU"
        assert len(document["matrix"]) == 16
        assert document["process_fidelity"] == pytest.approx(1.0, abs=1e-12)
        assert document["mean_success_probability"] == pytest.approx(1 / 81, abs=1e-12)

    def test_qubits_needs_cascade(self, capsys):
        """Test that --qubits with another encoding exits with status 2."""
        status, out, _ = run(
            capsys, "truth-table", "--encoding", "polarization", "--qubits", "4"
        )
        assert status == EXIT_USAGE
        assert out == ""

    def test_qubits_out_of_range(self, capsys):
        """Test that a chain longer than the photon limit is refused by the parser."""
        with pytest.raises(SystemExit) as exc:
            main(["operator", "--encoding", "cascaded", "--qubits", "5"])
        assert exc.value.code == EXIT_USAGE


class TestOutputAndManifest:
    """Test cases for --output and --manifest."""

    def test_output_file(self, capsys, tmp_path):
        """Test that --output receives the text and stdout stays empty."""
        target = tmp_path / "table.json"
        status, out, _ = run(capsys, "truth-table", "--output", str(target))
        assert status == EXIT_OK
        assert out == ""
        assert len(json.loads(target.read_text())["rows"]) == 4

    def test_manifest_checksum(self, capsys, tmp_path):
        """Test that the manifest checksum matches the emitted text."""
        target = tmp_path / "ghz.csv"
        manifest = tmp_path / "manifest.json"
        status, _, _ = run(
            capsys,
            "ghz",
            "--format",
            "csv",
            "--output",
            str(target),
            "--manifest",
            str(manifest),
        )
        assert status == EXIT_OK
        record = json.loads(manifest.read_text())
        assert record["command"] == "ghz"
        assert record["version"] == __version__
        assert record["sha256"] == checksum(target.read_text())
        assert record["config"]["order_min"] == -2

    def test_unwritable_manifest_leaves_no_output(self, capsys, tmp_path):
        """Test that a manifest in a missing directory fails before any output."""
        target = tmp_path / "table.json"
        manifest = tmp_path / "missing" / "manifest.json"
        status, out, _ = run(capsys, "truth-table", "--manifest", str(manifest))
        assert status == EXIT_FAILURE
        assert out == ""
        status, out, _ = run(
            capsys,
            "truth-table",
            "--output",
            str(target),
            "--manifest",
            str(manifest),
        )
        assert status == EXIT_FAILURE
        assert out == ""
        assert not target.exists()

    def test_unwritable_output_removes_manifest(self, capsys, tmp_path):
        """Test that a failed output write takes the manifest back."""
        manifest = tmp_path / "manifest.json"
        status, _, _ = run(
            capsys,
            "ghz",
            "--output",
            str(tmp_path / "missing" / "ghz.json"),
            "--manifest",
            str(manifest),
        )
        assert status == EXIT_FAILURE
        assert not manifest.exists()

    def test_manifest_reproducible(self, capsys, tmp_path):
        """Test that identical runs produce identical manifests."""
        texts = []
        for name in ("a.json", "b.json"):
            path = tmp_path / name
            run(capsys, "operator", "--manifest", str(path))
            texts.append(path.read_text())
        assert texts[0] == texts[1]

    def test_run_manifest_to_dict(self):
        """Test the manifest record layout."""
        record = RunManifest("ghz", {}, "0.1.0", "abc", {"format": "json"}).to_dict()
        assert record == {
            "command": "ghz",
            "config": {},
            "version": "0.1.0",
            "sha256": "abc",
            "format": "json",
        }
