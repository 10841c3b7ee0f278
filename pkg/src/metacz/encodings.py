"""Logical-qubit encodings over polarized modes, state injection and post-selection."""

import math
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt

from .errors import BasisMismatchError, EncodingError, NormError, PhotonNumberError
from .fock import MAX_PHOTONS, NORM_TOLERANCE, FockState, PhotonicState
from .metasurface import L, ModeBasis, PolarizedMode, R, parallel_bs_basis

KetLike = Union[str, Sequence[complex], npt.NDArray[np.complex128]]

_SQRT_HALF = 1 / math.sqrt(2)
KETS: Dict[str, npt.NDArray[np.complex128]] = {
    "0": np.array([1, 0], dtype=np.complex128),
    "1": np.array([0, 1], dtype=np.complex128),
    "+": np.array([_SQRT_HALF, _SQRT_HALF], dtype=np.complex128),
    "-": np.array([_SQRT_HALF, -_SQRT_HALF], dtype=np.complex128),
}

# Labels of cascade qubits beyond T, by path from +2 upward.
_CHAIN_LABELS = "UVW"


class EncodingType(Enum):
    POLARIZATION = "polarization"
    CASCADED = "cascaded"
    PATH = "path"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Qubit:
    """A dual-mode register: one photon in ``zero`` is |0>, in ``one`` is |1>."""

    label: str
    zero: PolarizedMode
    one: PolarizedMode

    @property
    def modes(self) -> Tuple[PolarizedMode, PolarizedMode]:
        return self.zero, self.one


class QubitEncoding:
    """
    Assignment of logical qubits and auxiliary (vacuum) modes to a mode basis.

    Qubit order is the logical register order: the first qubit is the most
    significant bit of a logical basis index.
    """

    def __init__(
        self,
        qubits: Sequence[Qubit],
        auxiliary: Sequence[PolarizedMode],
        basis: ModeBasis,
        name: str = "custom",
    ):
        self._qubits: Tuple[Qubit, ...] = tuple(qubits)
        self._auxiliary: Tuple[PolarizedMode, ...] = tuple(auxiliary)
        self._basis = basis
        self.name = name

        if not self._qubits:
            raise EncodingError("An encoding needs at least one qubit")
        labels = [q.label for q in self._qubits]
        if len(set(labels)) != len(labels):
            raise EncodingError(f"Duplicate qubit labels {labels}")
        used = [m for q in self._qubits for m in q.modes] + list(self._auxiliary)
        if len(set(used)) != len(used):
            raise EncodingError(f"Encoding '{name}' assigns a mode twice")
        missing = [str(m) for m in used if m not in basis]
        if missing:
            raise BasisMismatchError(f"Modes {missing} are not in basis {basis}")

        self._qubit_index = tuple(
            (basis.index_of(q.zero), basis.index_of(q.one)) for q in self._qubits
        )
        self._aux_index = tuple(basis.index_of(m) for m in self._auxiliary)

    @property
    def qubits(self) -> Tuple[Qubit, ...]:
        return self._qubits

    @property
    def auxiliary(self) -> Tuple[PolarizedMode, ...]:
        return self._auxiliary

    @property
    def basis(self) -> ModeBasis:
        return self._basis

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(q.label for q in self._qubits)

    @property
    def n_qubits(self) -> int:
        return len(self._qubits)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    @property
    def modes(self) -> Tuple[PolarizedMode, ...]:
        """Every mode the encoding uses, qubit modes first."""
        return tuple(m for q in self._qubits for m in q.modes) + self._auxiliary

    def qubit(self, label: str) -> Qubit:
        for q in self._qubits:
            if q.label == label:
                return q
        raise EncodingError(f"No qubit labelled '{label}' in encoding '{self.name}'")

    def with_basis(self, basis: ModeBasis) -> "QubitEncoding":
        """Same assignment re-homed onto another basis containing its modes."""
        return QubitEncoding(self._qubits, self._auxiliary, basis, self.name)

    def fock_state(self, index: int) -> FockState:
        """Fock state of logical basis state ``index`` (one photon per register)."""
        if not 0 <= index < self.dim:
            raise EncodingError(f"Logical index {index} outside 0..{self.dim - 1}")
        modes = []
        for position, (zero, one) in enumerate(self._qubit_index):
            bit = (index >> (self.n_qubits - 1 - position)) & 1
            modes.append(one if bit else zero)
        return FockState.from_modes(len(self._basis), modes)

    def logical_index(self, fock: FockState) -> Optional[int]:
        """
        Logical basis index of ``fock``, or None when post-selection rejects it.

        A Fock state is accepted when every register holds exactly one photon
        and no auxiliary mode is occupied.
        """
        occupations = fock.occupations
        if fock.total != self.n_qubits:
            return None
        if any(occupations[a] for a in self._aux_index):
            return None
        index = 0
        for zero, one in self._qubit_index:
            if occupations[zero] + occupations[one] != 1:
                return None
            index = (index << 1) | occupations[one]
        return index

    @staticmethod
    def merge(first: "QubitEncoding", second: "QubitEncoding") -> "QubitEncoding":
        """
        Joint encoding of two registers on the same basis.

        Labels of ``second`` that clash with ``first`` get a trailing prime.

        Raises:
            BasisMismatchError: if the bases differ
            EncodingError: if the encodings share any mode
        """
        if first.basis != second.basis:
            raise BasisMismatchError("Encodings to merge live over different bases")
        shared = set(first.modes) & set(second.modes)
        if shared:
            names = sorted(str(m) for m in shared)
            raise EncodingError(f"Encodings share modes {names}")
        taken = set(first.labels)
        relabeled = []
        for q in second.qubits:
            label = q.label
            while label in taken:
                label += "'"
            taken.add(label)
            relabeled.append(Qubit(label, q.zero, q.one))
        return QubitEncoding(
            first.qubits + tuple(relabeled),
            first.auxiliary + second.auxiliary,
            first.basis,
            name=f"{first.name}+{second.name}",
        )

    def __repr__(self) -> str:
        regs = ", ".join(f"{q.label}:{q.zero}/{q.one}" for q in self._qubits)
        aux = ", ".join(str(m) for m in self._auxiliary)
        return f"QubitEncoding({self.name}; {regs}; aux {aux})"


def basis_label(index: int, n_qubits: int) -> str:
    """Bit string of logical index ``index``, first qubit leftmost."""
    return format(index, f"0{n_qubits}b")


@dataclass(frozen=True, eq=False)
class LogicalState:
    """
    Logical amplitude vector over 2**n_qubits computational basis states.

    Post-selected states are kept unnormalized; ``normalized`` gives the
    conditional state.
    """

    n_qubits: int
    amplitudes: npt.NDArray[np.complex128]
    labels: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        amplitudes = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amplitudes.shape != (2**self.n_qubits,):
            raise EncodingError(
                f"{self.n_qubits} qubits need {2**self.n_qubits} amplitudes, "
                f"got {amplitudes.shape[0]}"
            )
        norm = float(np.vdot(amplitudes, amplitudes).real)
        if norm > 1 + NORM_TOLERANCE:
            raise NormError(f"Logical state norm {norm} exceeds 1")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)
        object.__setattr__(self, "labels", tuple(self.labels))

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def normalized(self) -> "LogicalState":
        """Conditional state given success; the zero state stays zero."""
        norm = math.sqrt(self.norm_squared())
        if norm == 0:
            return self
        return LogicalState(self.n_qubits, self.amplitudes / norm, self.labels)

    def amplitude(self, bits: str) -> complex:
        """Amplitude of the computational basis state spelled by ``bits``."""
        return complex(self.amplitudes[int(bits, 2)])

    def probability(self, bits: str) -> float:
        return abs(self.amplitude(bits)) ** 2


def ket(spec: KetLike) -> npt.NDArray[np.complex128]:
    """
    Single-qubit state from a name ("0", "1", "+", "-") or amplitudes (alpha, beta).

    Raises:
        NormError: if the amplitudes are not normalized
    """
    if isinstance(spec, str):
        try:
            return KETS[spec]
        except KeyError:
            raise EncodingError(f"Unknown single-qubit state '{spec}'") from None
    vector = np.asarray(spec, dtype=np.complex128).reshape(-1)
    if vector.shape != (2,):
        raise EncodingError(f"A qubit state needs two amplitudes, got {vector.shape[0]}")
    norm = float(np.vdot(vector, vector).real)
    if abs(norm - 1) > NORM_TOLERANCE:
        raise NormError(f"Single-qubit state has squared norm {norm}, expected 1")
    return vector


def inject(kets: Union[str, Sequence[KetLike]], enc: QubitEncoding) -> PhotonicState:
    """
    Load a product of single-qubit states into the encoded modes.

    Args:
        kets: One state per qubit, in register order; a string such as
            ``"1+"`` names each qubit by one character
        enc: Target encoding

    Returns:
        Photonic state with exactly one photon per register
    """
    vectors = [ket(k) for k in kets]
    if len(vectors) != enc.n_qubits:
        raise EncodingError(
            f"Encoding '{enc.name}' has {enc.n_qubits} qubits, got {len(vectors)} states"
        )
    terms: Dict[FockState, complex] = {}
    for index, bits in enumerate(product((0, 1), repeat=enc.n_qubits)):
        amplitude = complex(np.prod([v[b] for v, b in zip(vectors, bits)]))
        if amplitude != 0:
            terms[enc.fock_state(index)] = amplitude
    return PhotonicState(terms, n_modes=len(enc.basis), photon_number=enc.n_qubits)


def post_select(state: PhotonicState, enc: QubitEncoding) -> Tuple[LogicalState, float]:
    """
    Keep the component with one photon per register and empty auxiliary modes.

    Returns:
        The unnormalized logical state and its squared norm (success probability)

    Raises:
        PhotonNumberError: if the photon number differs from the qubit count
        BasisMismatchError: if the state lives on a different number of modes
    """
    if state.photon_number != enc.n_qubits:
        raise PhotonNumberError(
            f"State carries {state.photon_number} photons for {enc.n_qubits} qubits"
        )
    if state.n_modes != len(enc.basis):
        raise BasisMismatchError(
            f"State has {state.n_modes} modes, encoding basis has {len(enc.basis)}"
        )
    amplitudes = np.zeros(enc.dim, dtype=np.complex128)
    for fock, amplitude in state.items():
        index = enc.logical_index(fock)
        if index is not None:
            amplitudes[index] += amplitude
    logical = LogicalState(enc.n_qubits, amplitudes, enc.labels)
    return logical, logical.norm_squared()


@dataclass(frozen=True)
class BunchingReport:
    """Probability split of an evolved state by post-selection outcome."""

    success_probability: float
    bunched_probability: float
    auxiliary_probability: float
    other_probability: float


def bunching_report(state: PhotonicState, enc: QubitEncoding) -> BunchingReport:
    """
    Classify every term of ``state`` as accepted, bunched, or auxiliary-occupied.

    A term counts as bunched when some register holds two or more photons,
    as auxiliary when no register is bunched but an auxiliary mode is lit.
    """
    accepted = bunched = auxiliary = other = 0.0
    registers = [
        (enc.basis.index_of(q.zero), enc.basis.index_of(q.one)) for q in enc.qubits
    ]
    aux_index = [enc.basis.index_of(m) for m in enc.auxiliary]
    for fock, amplitude in state.items():
        p = abs(amplitude) ** 2
        occupations = fock.occupations
        if enc.logical_index(fock) is not None:
            accepted += p
        elif any(occupations[z] + occupations[o] >= 2 for z, o in registers):
            bunched += p
        elif any(occupations[a] for a in aux_index):
            auxiliary += p
        else:
            other += p
    return BunchingReport(accepted, bunched, auxiliary, other)


def polarization_cz_encoding(
    control_order: int = 0,
    basis: Optional[ModeBasis] = None,
    labels: Tuple[str, str] = ("C", "T"),
) -> QubitEncoding:
    """
    Polarization-encoded CZ on paths (p, p+1) with p = ``control_order``.

    C: |0> -> R(p), |1> -> L(p); T: |0> -> L(p+1), |1> -> R(p+1);
    auxiliary R(p+2) and L(p-1). The default basis spans orders p-1 .. p+2.
    """
    p = control_order
    if basis is None:
        basis = parallel_bs_basis(p - 1, p + 2)
    control, target = labels
    return QubitEncoding(
        [Qubit(control, R(p), L(p)), Qubit(target, L(p + 1), R(p + 1))],
        [R(p + 2), L(p - 1)],
        basis,
        name="polarization",
    )


def cascaded_encoding(
    basis: Optional[ModeBasis] = None, n_qubits: int = 3
) -> QubitEncoding:
    """
    Register |C S T ...> for a chain of CZ gates on neighbouring paths.

    C and T as in the single gate; S: |0> -> R(-1), |1> -> L(-1). Each further
    qubit U, V, ... continues the chain on paths +2, +3, ... with
    |0> -> L(p), |1> -> R(p), like T. Auxiliary R(n_qubits - 1) and L(-2).

    Raises:
        EncodingError: if ``n_qubits`` is below 3 or above ``MAX_PHOTONS``
    """
    if not 3 <= n_qubits <= MAX_PHOTONS:
        raise EncodingError(f"Cascade of {n_qubits} qubits outside 3..{MAX_PHOTONS}")
    last = n_qubits - 2
    if basis is None:
        basis = parallel_bs_basis(-2, last + 1)
    qubits = [
        Qubit("C", R(0), L(0)),
        Qubit("S", R(-1), L(-1)),
        Qubit("T", L(1), R(1)),
    ]
    qubits.extend(Qubit(_CHAIN_LABELS[p - 2], L(p), R(p)) for p in range(2, last + 1))
    return QubitEncoding(qubits, [R(last + 1), L(-2)], basis, name="cascaded")


def path_cz_encoding(basis: Optional[ModeBasis] = None) -> QubitEncoding:
    """
    Dual-rail CZ where each qubit's two modes sit on different paths.

    C: |0> -> R(-1), |1> -> L(0); T: |0> -> L(+2), |1> -> R(+1);
    auxiliary R(+3) and L(-2).
    """
    if basis is None:
        basis = parallel_bs_basis(-2, 3)
    return QubitEncoding(
        [Qubit("C", R(-1), L(0)), Qubit("T", L(2), R(1))],
        [R(3), L(-2)],
        basis,
        name="path",
    )


def get_encoding(
    encoding_type: EncodingType, basis: Optional[ModeBasis] = None
) -> QubitEncoding:
    """Encoding registered under ``encoding_type``, optionally on a given basis."""
    builders = {
        EncodingType.POLARIZATION: polarization_cz_encoding,
        EncodingType.CASCADED: cascaded_encoding,
        EncodingType.PATH: path_cz_encoding,
    }
    builder = builders[encoding_type]
    return builder(basis=basis)


def logical_basis(enc: QubitEncoding) -> List[str]:
    """Computational basis labels of ``enc`` in index order."""
    return [basis_label(i, enc.n_qubits) for i in range(enc.dim)]
