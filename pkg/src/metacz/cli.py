"""Command-line front end for the metasurface CZ simulator."""

import sys
from argparse import ArgumentParser, Namespace
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .analysis import (
    TruthTableBasis,
    extract_operator,
    ghz_prepare,
    independent_gates_check,
    process_fidelity,
    truth_table,
)
from .encodings import EncodingType, basis_label, polarization_cz_encoding
from .errors import ConfigError, MetaczError, UsageError
from .fock import MAX_PHOTONS
from .metasurface import (
    MetasurfaceConfig,
    build_splitter_blocks,
    config_to_dict,
    load_config,
)
from .scenarios import GateScenario, ScenarioFactory, ScenarioType
from .sweep import (
    SWEEP_CSV_HEADER,
    SweepParameter,
    SweepSpec,
    run_sweep,
    sweep_csv_rows,
    sweep_document,
)
from .utils import get_simulation_logger
from .utils.serialization import checksum, render_csv, render_json

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_CONFIG = 3

TRUTH_TABLE_HEADER = ("input", "output", "phase_re", "phase_im", "success_probability")
OPERATOR_HEADER = ("input", "output", "re", "im")
REPORT_HEADER = ("quantity", "value")


@dataclass
class CommandOutput:
    """Everything a command produced, before rendering."""

    document: Dict[str, Any]
    csv_header: Sequence[str]
    csv_rows: List[Sequence[Any]]
    config: MetasurfaceConfig


@dataclass(frozen=True)
class RunManifest:
    """Provenance record of one run; the checksum covers the emitted text."""

    command: str
    config: Dict[str, Any]
    version: str
    checksum: str
    extra: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "config": self.config,
            "version": self.version,
            "sha256": self.checksum,
            **self.extra,
        }


def _complex_pair(value: complex) -> List[float]:
    return [float(np.real(value)), float(np.imag(value))]


def parse_gates(text: str) -> List[Tuple[int, int]]:
    """
    Parse ``"0,1;-2,-3"`` into adjacent path pairs, lower path first.

    Raises:
        UsageError: on bad syntax, non-adjacent pairs, anything but two gates
            or gates sharing a path
    """
    gates = []
    for chunk in text.split(";"):
        parts = chunk.split(",")
        try:
            a, b = (int(p) for p in parts)
        except ValueError:
            raise UsageError(f"Gate '{chunk}' is not a pair of integers a,b") from None
        if abs(a - b) != 1:
            raise UsageError(f"Gate paths {a},{b} are not adjacent")
        gates.append((min(a, b), max(a, b)))
    if len(gates) != 2:
        raise UsageError(f"Expected two gates, got {len(gates)}")
    (a0, a1), (b0, b1) = gates
    shared = {a0, a1} & {b0, b1}
    if shared:
        raise UsageError(f"Gates share path {sorted(shared)[0]}")
    return gates


class MetaczCLI:
    """
    Command dispatcher for the simulator.

    Each ``_handle_*`` method computes one command's result; ``run`` renders
    it completely before anything is written. The manifest goes first and is
    removed again if the output cannot be written, so a failing command
    leaves neither behind.
    """

    def __init__(self, debug: bool = False):
        self.debug = debug
        self.logger = get_simulation_logger()

    def run(self, args: Namespace) -> int:
        """
        Execute a parsed command line.

        Returns:
            Process exit status
        """
        if self.debug:
            self.logger.log_info(f"Received command: {vars(args)}")

        handlers = {
            "truth-table": self._handle_truth_table,
            "ghz": self._handle_ghz,
            "sweep": self._handle_sweep,
            "independent": self._handle_independent,
            "operator": self._handle_operator,
        }
        try:
            output = handlers[args.command](args)
            text = self._render(output, args.format)
            digest = checksum(text)
            manifest = None
            if args.manifest:
                manifest = render_json(
                    RunManifest(
                        args.command,
                        config_to_dict(output.config),
                        __version__,
                        digest,
                        {"format": args.format},
                    ).to_dict()
                )
                Path(args.manifest).write_text(manifest, encoding="utf-8")
            try:
                self._emit(text, args.output)
            except OSError:
                if manifest is not None:
                    Path(args.manifest).unlink()
                raise
        except UsageError as exc:
            return self._fail(args.command, exc, EXIT_USAGE)
        except ConfigError as exc:
            return self._fail(args.command, exc, EXIT_CONFIG)
        except (MetaczError, OSError) as exc:
            return self._fail(args.command, exc, EXIT_FAILURE)

        self.logger.log_run_end(args.command, digest)
        return EXIT_OK

    def _fail(self, command: str, exc: Exception, status: int) -> int:
        self.logger.log_error(f"{command}: {exc}")
        print(f"metacz {command}: error: {exc}", file=sys.stderr)
        return status

    def _render(self, output: CommandOutput, fmt: str) -> str:
        if fmt == "csv":
            return render_csv(output.csv_header, output.csv_rows)
        return render_json(output.document)

    def _emit(self, text: str, path: Optional[str]) -> None:
        if path:
            Path(path).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)

    def _register_scenario(self, args: Namespace) -> GateScenario:
        if args.qubits is None:
            return ScenarioFactory.for_encoding(args.encoding)
        if args.encoding is not EncodingType.CASCADED:
            raise UsageError("--qubits is only valid with --encoding cascaded")
        return ScenarioFactory.cascade(args.qubits)

    def _resolve_config(
        self, command: str, path: Optional[str], defaults: MetasurfaceConfig
    ) -> MetasurfaceConfig:
        config = load_config(path, defaults) if path else defaults
        self.logger.log_run_start(command, config_to_dict(config))
        return config

    def _handle_truth_table(self, args: Namespace) -> CommandOutput:
        if (
            args.basis is TruthTableBasis.HADAMARD_ST
            and args.encoding is not EncodingType.CASCADED
        ):
            raise UsageError("--basis hadamard_st is only valid with --encoding cascaded")
        scenario = self._register_scenario(args)
        config = self._resolve_config(
            args.command, args.config, scenario.default_config()
        )
        u, enc = scenario.prepare(config)
        table = truth_table(u, enc, args.basis)

        rows = []
        csv_rows: List[Sequence[Any]] = []
        for row in table.rows:
            re, im = _complex_pair(row.phase)
            rows.append(
                {
                    "input": row.input_label,
                    "output": row.output_label,
                    "phase_re": re,
                    "phase_im": im,
                    "success_probability": row.success_probability,
                    "amplitudes": [_complex_pair(a) for a in row.output.amplitudes],
                }
            )
            csv_rows.append(
                (row.input_label, row.output_label, re, im, row.success_probability)
            )
        document = {
            "command": args.command,
            "encoding": args.encoding.value,
            "basis": table.basis.value,
            "qubit_order": "".join(table.qubit_labels),
            "rows": rows,
        }
        return CommandOutput(document, TRUTH_TABLE_HEADER, csv_rows, config)

    def _handle_ghz(self, args: Namespace) -> CommandOutput:
        scenario = ScenarioFactory.get_scenario(ScenarioType.GHZ)
        config = self._resolve_config(
            args.command, args.config, scenario.default_config()
        )
        u, enc = scenario.prepare(config)
        report = ghz_prepare(u, enc)

        purities = dict(zip(enc.labels, report.purities))
        document = {
            "command": args.command,
            "qubit_order": "".join(enc.labels),
            "fidelity": report.fidelity,
            "success_probability": report.success_probability,
            "purities": purities,
            "state": [_complex_pair(a) for a in report.state.amplitudes],
        }
        csv_rows: List[Sequence[Any]] = [
            ("fidelity", report.fidelity),
            ("success_probability", report.success_probability),
        ]
        csv_rows.extend((f"purity_{label}", p) for label, p in purities.items())
        return CommandOutput(document, REPORT_HEADER, csv_rows, config)

    def _handle_sweep(self, args: Namespace) -> CommandOutput:
        spec = SweepSpec(args.param, args.min, args.max, args.steps, args.scenario)
        scenario = ScenarioFactory.get_scenario(spec.scenario)
        base = self._resolve_config(
            args.command, args.config, scenario.default_config()
        )
        rows = run_sweep(spec, base, workers=args.workers)
        return CommandOutput(
            sweep_document(spec, rows, base),
            SWEEP_CSV_HEADER,
            sweep_csv_rows(spec, rows),
            base,
        )

    def _handle_independent(self, args: Namespace) -> CommandOutput:
        gates = parse_gates(args.gates)
        lowers = [lower for lower, _ in gates]
        defaults = MetasurfaceConfig.ideal(min(lowers) - 1, max(lowers) + 2)
        config = self._resolve_config(args.command, args.config, defaults)
        # A gate on paths (p, p+1) only touches pairs p-1, p and p+1.
        pairs = {lower + k for lower in lowers for k in (-1, 0, 1)}
        u = build_splitter_blocks(config, pairs)
        enc_a, enc_b = (
            polarization_cz_encoding(lower, u.basis, labels=(f"C{i}", f"T{i}"))
            for i, lower in enumerate(lowers, start=1)
        )
        if set(enc_a.modes) & set(enc_b.modes):
            raise UsageError(f"Gates {args.gates} share auxiliary or qubit modes")

        report = independent_gates_check(u, enc_a, enc_b)
        document = {
            "command": args.command,
            "gates": [list(g) for g in gates],
            "orders": [config.order_min, config.order_max],
            "pairs": sorted(pairs),
            "qubit_order": "".join(report.joint_labels),
            "max_deviation": report.max_deviation,
            "factorizes": report.factorizes,
            "joint_success_probability": report.joint_success_probability,
            "gate_success_probabilities": list(report.gate_success_probabilities),
            "gate_fidelities": list(report.gate_fidelities),
        }
        csv_rows: List[Sequence[Any]] = [
            ("max_deviation", report.max_deviation),
            ("factorizes", str(report.factorizes).lower()),
            ("joint_success_probability", report.joint_success_probability),
        ]
        for i, (p, f) in enumerate(
            zip(report.gate_success_probabilities, report.gate_fidelities), start=1
        ):
            csv_rows.append((f"gate{i}_success_probability", p))
            csv_rows.append((f"gate{i}_fidelity", f))
        return CommandOutput(document, REPORT_HEADER, csv_rows, config)

    def _handle_operator(self, args: Namespace) -> CommandOutput:
        scenario = self._register_scenario(args)
        config = self._resolve_config(
            args.command, args.config, scenario.default_config()
        )
        u, enc = scenario.prepare(config)
        operator = extract_operator(u, enc)
        fidelity = process_fidelity(operator, scenario.ideal())

        csv_rows: List[Sequence[Any]] = []
        for k in range(operator.dim):
            for j in range(operator.dim):
                re, im = _complex_pair(operator.matrix[j, k])
                csv_rows.append(
                    (basis_label(k, enc.n_qubits), basis_label(j, enc.n_qubits), re, im)
                )
        document = {
            "command": args.command,
            "encoding": args.encoding.value,
            "qubit_order": "".join(operator.qubit_labels),
            "matrix": [[_complex_pair(a) for a in row] for row in operator.matrix],
            "process_fidelity": fidelity.process_fidelity,
            "mean_success_probability": fidelity.mean_success_probability,
        }
        return CommandOutput(document, OPERATOR_HEADER, csv_rows, config)


def _add_qubits_argument(parser: ArgumentParser) -> None:
    parser.add_argument(
        "--qubits",
        type=int,
        choices=range(3, MAX_PHOTONS + 1),
        default=None,
        help="length of the cascaded chain (cascaded encoding only)",
    )


def build_parser() -> ArgumentParser:
    """Argument parser with one subcommand per report."""
    common = ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON metasurface configuration")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--manifest", help="write a JSON run manifest here")
    common.add_argument("--debug", action="store_true")

    parser = ArgumentParser(
        prog="metacz", description="Metasurface-based quantum CZ gate simulator"
    )
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", required=True)

    table = commands.add_parser("truth-table", parents=[common])
    table.add_argument(
        "--encoding",
        type=EncodingType,
        choices=list(EncodingType),
        default=EncodingType.POLARIZATION,
    )
    table.add_argument(
        "--basis",
        type=TruthTableBasis,
        choices=list(TruthTableBasis),
        default=TruthTableBasis.STANDARD,
    )
    _add_qubits_argument(table)

    commands.add_parser("ghz", parents=[common])

    sweep = commands.add_parser("sweep", parents=[common])
    sweep.add_argument(
        "--param", type=SweepParameter, choices=list(SweepParameter), required=True
    )
    sweep.add_argument("--min", type=float, required=True)
    sweep.add_argument("--max", type=float, required=True)
    sweep.add_argument("--steps", type=int, default=11)
    sweep.add_argument(
        "--scenario",
        type=ScenarioType,
        choices=list(ScenarioType),
        default=ScenarioType.SINGLE_CZ,
    )
    sweep.add_argument("--workers", type=int, default=None)

    independent = commands.add_parser("independent", parents=[common])
    independent.add_argument(
        "--gates", required=True, help='two adjacent path pairs, e.g. "0,1;-2,-3"'
    )

    operator = commands.add_parser("operator", parents=[common])
    operator.add_argument(
        "--encoding",
        type=EncodingType,
        choices=list(EncodingType),
        default=EncodingType.POLARIZATION,
    )
    _add_qubits_argument(operator)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the metacz command."""
    args = build_parser().parse_args(argv)
    cli = MetaczCLI(debug=args.debug)
    return cli.run(args)


if __name__ == "__main__":
    sys.exit(main())
