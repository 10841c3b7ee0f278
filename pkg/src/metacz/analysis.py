"""Truth tables, post-selected operators, fidelities, GHZ preparation and gate independence."""

import math
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from itertools import product
from typing import List, Tuple, Union

import numpy as np
import numpy.typing as npt

from .encodings import LogicalState, QubitEncoding, inject, post_select
from .errors import BasisMismatchError, DimensionError, EncodingError, ZeroOperatorError
from .evolution import evolve
from .linalg import ComplexMatrix, as_complex_matrix
from .metasurface import ModeUnitary
from .utils import get_simulation_logger

FACTORIZATION_TOLERANCE = 1e-12
ZERO_OPERATOR_WEIGHT = 1e-30

_IDENTITY = np.eye(2, dtype=np.complex128)
_HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)
_PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)

# Cascaded register order |C S T>.
CASCADED_LABELS = ("C", "S", "T")


class TruthTableBasis(Enum):
    STANDARD = "standard"
    HADAMARD_ST = "hadamard_st"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TruthTableRow:
    """
    One input of a truth table.

    ``output`` is expressed in the table's basis; ``phase`` is the unit phase
    of its dominant component ``output_label``.
    """

    input_label: str
    output: LogicalState
    output_label: str
    phase: complex
    success_probability: float


@dataclass(frozen=True)
class TruthTable:
    encoding: str
    basis: TruthTableBasis
    qubit_labels: Tuple[str, ...]
    rows: Tuple[TruthTableRow, ...]

    def row(self, input_label: str) -> TruthTableRow:
        for row in self.rows:
            if row.input_label == input_label:
                return row
        raise KeyError(input_label)


@dataclass(frozen=True, eq=False)
class PostSelectedOperator:
    """
    Logical action of a mode unitary after post-selection.

    Column k holds the unnormalized logical output for computational input k.
    """

    matrix: ComplexMatrix
    qubit_labels: Tuple[str, ...]

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def success_probabilities(self) -> npt.NDArray[np.float64]:
        """Per-input success probability (squared column norms)."""
        return np.sum(np.abs(self.matrix) ** 2, axis=0)


@dataclass(frozen=True)
class FidelityReport:
    process_fidelity: float
    mean_success_probability: float
    per_input_success: Tuple[float, ...]


@dataclass(frozen=True)
class GHZReport:
    state: LogicalState
    success_probability: float
    fidelity: float
    purities: Tuple[float, ...]


@dataclass(frozen=True)
class FactorizationReport:
    """Outcome of checking that two gates on one metasurface act independently."""

    max_deviation: float
    factorizes: bool
    joint_success_probability: float
    gate_success_probabilities: Tuple[float, float]
    gate_fidelities: Tuple[float, float]
    joint_labels: Tuple[str, ...]


def _check_basis(u: ModeUnitary, enc: QubitEncoding) -> None:
    if u.basis != enc.basis:
        raise BasisMismatchError(
            f"Unitary basis {u.basis} differs from encoding basis {enc.basis}"
        )


def _row_basis(
    enc: QubitEncoding, basis: TruthTableBasis
) -> Tuple[ComplexMatrix, List[str]]:
    """Change-of-basis matrix (columns are input states) and row labels."""
    if basis is TruthTableBasis.STANDARD:
        rotated: Tuple[str, ...] = ()
    else:
        if not {"S", "T"} <= set(enc.labels):
            raise EncodingError(
                f"hadamard_st needs qubits S and T, encoding '{enc.name}' has {enc.labels}"
            )
        rotated = ("S", "T")
    factors = [_HADAMARD if label in rotated else _IDENTITY for label in enc.labels]
    alphabets = ["+-" if label in rotated else "01" for label in enc.labels]
    change = reduce(np.kron, factors)
    labels = ["".join(chars) for chars in product(*alphabets)]
    return change, labels


def _dominant(amplitudes: npt.NDArray[np.complex128]) -> int:
    # Rounding makes equal magnitudes tie exactly so the first one wins.
    return int(np.argmax(np.round(np.abs(amplitudes), 12)))


def truth_table(
    u: ModeUnitary,
    enc: QubitEncoding,
    basis: Union[TruthTableBasis, str] = TruthTableBasis.STANDARD,
) -> TruthTable:
    """
    Evolve and post-select every input basis state of ``enc``.

    In ``hadamard_st`` qubits S and T range over |+>, |-> while the other
    qubits stay in the computational basis; outputs are reported in the same
    basis as the inputs.

    Args:
        u: Mode unitary over ``enc.basis``
        enc: Qubit encoding
        basis: Input/output basis of the table

    Returns:
        TruthTable with one row per input basis state
    """
    basis = TruthTableBasis(basis)
    _check_basis(u, enc)
    change, labels = _row_basis(enc, basis)

    rows = []
    for label in labels:
        logical, probability = post_select(evolve(inject(label, enc), u), enc)
        coefficients = change.conj().T @ logical.amplitudes
        dominant = _dominant(coefficients)
        amplitude = coefficients[dominant]
        phase = amplitude / abs(amplitude) if abs(amplitude) > 0 else 1 + 0j
        rows.append(
            TruthTableRow(
                input_label=label,
                output=LogicalState(enc.n_qubits, coefficients, enc.labels),
                output_label=labels[dominant],
                phase=complex(phase),
                success_probability=probability,
            )
        )

    get_simulation_logger().log_info(
        f"truth table {enc.name}/{basis.value}: {len(rows)} rows"
    )
    return TruthTable(enc.name, basis, enc.labels, tuple(rows))


def extract_operator(u: ModeUnitary, enc: QubitEncoding) -> PostSelectedOperator:
    """
    Matrix of the post-selected logical action of ``u`` on ``enc``.

    For the ideal single gate this is CZ / 3.
    """
    _check_basis(u, enc)
    matrix = np.zeros((enc.dim, enc.dim), dtype=np.complex128)
    for k in range(enc.dim):
        label = format(k, f"0{enc.n_qubits}b")
        logical, _ = post_select(evolve(inject(label, enc), u), enc)
        matrix[:, k] = logical.amplitudes
    matrix.setflags(write=False)
    return PostSelectedOperator(matrix, enc.labels)


def process_fidelity(
    a: Union[PostSelectedOperator, npt.ArrayLike], ideal: npt.ArrayLike
) -> FidelityReport:
    """
    Scale-invariant process fidelity |Tr(U^dagger A)|^2 / (d Tr(A^dagger A)).

    Equals 1 exactly when A is proportional to ``ideal``.

    Raises:
        DimensionError: if the shapes differ
        ZeroOperatorError: if A vanishes
    """
    matrix = as_complex_matrix(a.matrix if isinstance(a, PostSelectedOperator) else a)
    target = as_complex_matrix(ideal)
    if matrix.shape != target.shape or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(
            f"Operator shape {matrix.shape} does not match ideal {target.shape}"
        )
    weight = float(np.trace(matrix.conj().T @ matrix).real)
    if weight < ZERO_OPERATOR_WEIGHT:
        raise ZeroOperatorError("Post-selected operator is zero")
    d = matrix.shape[0]
    overlap = abs(np.trace(target.conj().T @ matrix)) ** 2
    fidelity = min(1.0, float(overlap / (d * weight)))
    per_input = np.sum(np.abs(matrix) ** 2, axis=0)
    return FidelityReport(
        process_fidelity=fidelity,
        mean_success_probability=float(np.mean(per_input)),
        per_input_success=tuple(float(p) for p in per_input),
    )


def cz_unitary(n_qubits: int = 2, control: int = 0, target: int = 1) -> ComplexMatrix:
    """Diagonal CZ between two qubits of an ``n_qubits`` register (qubit 0 leftmost)."""
    diagonal = np.ones(2**n_qubits, dtype=np.complex128)
    for index in range(2**n_qubits):
        c = (index >> (n_qubits - 1 - control)) & 1
        t = (index >> (n_qubits - 1 - target)) & 1
        if c and t:
            diagonal[index] = -1
    return np.diag(diagonal)


def pauli_x(n_qubits: int, qubit: int) -> ComplexMatrix:
    """X on one qubit of an ``n_qubits`` register."""
    factors = [_PAULI_X if q == qubit else _IDENTITY for q in range(n_qubits)]
    return reduce(np.kron, factors)


def ideal_cascaded_unitary(n_qubits: int = 3) -> ComplexMatrix:
    """
    CZ_{C,T} . (X_C . CZ_{C,S} . X_C) on |C S T>.

    S picks up a sign when C = 0, T when C = 1:
    diag(+1, +1, -1, -1, +1, -1, +1, -1). Every further chain qubit k adds
    X_{k-1} . CZ_{k-1,k} . X_{k-1}, a sign when qubit k is 1 and its
    predecessor is 0.

    Raises:
        DimensionError: if the register has fewer than three qubits
    """
    if n_qubits < 3:
        raise DimensionError(f"A cascade needs at least 3 qubits, got {n_qubits}")
    x_c = pauli_x(n_qubits, 0)
    u = cz_unitary(n_qubits, 0, 2) @ (x_c @ cz_unitary(n_qubits, 0, 1) @ x_c)
    for k in range(3, n_qubits):
        x_prev = pauli_x(n_qubits, k - 1)
        u = x_prev @ cz_unitary(n_qubits, k - 1, k) @ x_prev @ u
    return u


def ghz_target() -> npt.NDArray[np.complex128]:
    """(|1 + -> + |0 - +>) / sqrt(2) in |C S T> order."""
    plus, minus = _HADAMARD[:, 0], _HADAMARD[:, 1]
    zero, one = _IDENTITY[:, 0], _IDENTITY[:, 1]
    first = np.kron(one, np.kron(plus, minus))
    second = np.kron(zero, np.kron(minus, plus))
    return (first + second) / math.sqrt(2)


def reduced_purity(state: Union[LogicalState, npt.ArrayLike], qubit: int) -> float:
    """
    Purity Tr(rho_q^2) of one qubit of a pure register state.

    The state is normalized first; 1/2 means maximally mixed.
    """
    vector = np.asarray(
        state.amplitudes if isinstance(state, LogicalState) else state,
        dtype=np.complex128,
    ).reshape(-1)
    n_qubits = int(round(math.log2(vector.size)))
    norm = np.linalg.norm(vector)
    if norm == 0:
        raise ZeroOperatorError("Cannot take the purity of a zero state")
    tensor = np.moveaxis((vector / norm).reshape([2] * n_qubits), qubit, 0)
    flat = tensor.reshape(2, -1)
    rho = flat @ flat.conj().T
    return float(np.trace(rho @ rho).real)


def ghz_prepare(u: ModeUnitary, enc: QubitEncoding) -> GHZReport:
    """
    Inject |+>|+>|+> into the cascaded register, evolve and post-select.

    Returns:
        GHZReport with the normalized state, the raw success probability,
        the overlap-squared with ``ghz_target`` and single-qubit purities
    """
    if enc.labels != CASCADED_LABELS:
        raise EncodingError(
            f"GHZ preparation needs the cascaded |C S T> register, got {enc.labels}"
        )
    _check_basis(u, enc)
    logical, probability = post_select(evolve(inject("+++", enc), u), enc)
    state = logical.normalized()
    if probability == 0:
        fidelity = 0.0
        purities: Tuple[float, ...] = ()
    else:
        fidelity = float(abs(np.vdot(ghz_target(), state.amplitudes)) ** 2)
        purities = tuple(reduced_purity(state, q) for q in range(enc.n_qubits))
    get_simulation_logger().log_info(
        f"GHZ fidelity={fidelity:.12g} success={probability:.12g}"
    )
    return GHZReport(state, probability, fidelity, purities)


def independent_gates_check(
    u: ModeUnitary, enc_a: QubitEncoding, enc_b: QubitEncoding
) -> FactorizationReport:
    """
    Check that two gates on disjoint modes act as a tensor product.

    The joint post-selected operator (one photon per qubit of both gates) is
    compared entrywise with the Kronecker product of the two individual
    operators.

    Raises:
        EncodingError: if the encodings share a mode
    """
    _check_basis(u, enc_a)
    _check_basis(u, enc_b)
    joint = QubitEncoding.merge(enc_a, enc_b)

    op_a = extract_operator(u, enc_a)
    op_b = extract_operator(u, enc_b)
    op_joint = extract_operator(u, joint)

    deviation = float(np.max(np.abs(op_joint.matrix - np.kron(op_a.matrix, op_b.matrix))))
    joint_success = float(np.mean(op_joint.success_probabilities()))
    cz = cz_unitary()
    fidelities = (
        process_fidelity(op_a, cz).process_fidelity
        if enc_a.n_qubits == 2
        else float("nan"),
        process_fidelity(op_b, cz).process_fidelity
        if enc_b.n_qubits == 2
        else float("nan"),
    )
    get_simulation_logger().log_info(
        f"independent gates {enc_a.labels}+{enc_b.labels}: deviation={deviation:.3g}"
    )
    return FactorizationReport(
        max_deviation=deviation,
        factorizes=deviation < FACTORIZATION_TOLERANCE,
        joint_success_probability=joint_success,
        gate_success_probabilities=(
            float(np.mean(op_a.success_probabilities())),
            float(np.mean(op_b.success_probabilities())),
        ),
        gate_fidelities=fidelities,
        joint_labels=joint.labels,
    )
