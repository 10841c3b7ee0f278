"""Multi-photon evolution of Fock superpositions through linear-optical unitaries."""

import math
from collections import defaultdict
from typing import Any, DefaultDict, Dict, Tuple

import numpy as np
import numpy.typing as npt

from .errors import DimensionError, PhotonNumberError
from .fock import MAX_MODES, MAX_PHOTONS, FockState, PhotonicState, enumerate_fock_basis
from .linalg import ComplexMatrix, as_complex_matrix, permanent

# Brute-force expansion is exponential in photon number; keep it to test sizes.
BRUTEFORCE_MAX_PHOTONS = 3
BRUTEFORCE_MAX_MODES = 10


def _transfer_matrix(u: Any) -> ComplexMatrix:
    """Accept a ModeUnitary (anything with ``.matrix``) or a plain array."""
    return as_complex_matrix(getattr(u, "matrix", u))


def _check_inputs(
    state: PhotonicState, matrix: ComplexMatrix, max_photons: int, max_modes: int
) -> None:
    rows, cols = matrix.shape
    if rows != cols:
        raise DimensionError(f"Mode transfer matrix must be square, got {matrix.shape}")
    if state.n_modes != cols:
        raise DimensionError(
            f"State has {state.n_modes} modes but the unitary acts on {cols}"
        )
    if cols > max_modes:
        raise DimensionError(f"{cols} modes exceed the supported maximum {max_modes}")
    if state.photon_number > max_photons:
        raise PhotonNumberError(
            f"{state.photon_number} photons exceed the supported maximum {max_photons}"
        )


def _reachable_modes(matrix: ComplexMatrix, fock: FockState) -> Tuple[int, ...]:
    """Output modes with a non-zero coupling from any occupied input mode."""
    occupied = [mode for mode, n in enumerate(fock.occupations) if n]
    if not occupied:
        return ()
    support = np.any(matrix[:, occupied] != 0, axis=1)
    return tuple(int(i) for i in np.flatnonzero(support))


def evolve(state: PhotonicState, u: Any) -> PhotonicState:
    """
    Propagate a Fock superposition through a mode transfer matrix.

    The amplitude from input pattern n to output pattern m is
    Per(U[m, n]) / sqrt(prod m_i! prod n_j!), where U[m, n] repeats rows and
    columns by occupation. Only output patterns supported on modes reachable
    from the occupied inputs are enumerated; all others are exactly zero.

    Args:
        state: Input state, at most ``MAX_PHOTONS`` photons
        u: ModeUnitary or square complex array acting on the state's modes

    Returns:
        The evolved state (subnormalized when ``u`` is lossy)
    """
    matrix = _transfer_matrix(u)
    _check_inputs(state, matrix, MAX_PHOTONS, MAX_MODES)

    n_modes = state.n_modes
    out: DefaultDict[FockState, complex] = defaultdict(complex)
    for fock_in, amplitude in state.items():
        columns = fock_in.mode_indices()
        reachable = _reachable_modes(matrix, fock_in)
        if not reachable:
            if fock_in.total == 0:
                out[fock_in] += amplitude
            continue
        norm_in = fock_in.normalization()
        for local in enumerate_fock_basis(len(reachable), fock_in.total):
            rows = [reachable[i] for i in local.mode_indices()]
            fock_out = FockState.from_modes(n_modes, rows)
            sub = matrix[np.ix_(rows, columns)]
            out[fock_out] += (
                amplitude * permanent(sub) / (norm_in * fock_out.normalization())
            )

    return PhotonicState(out, n_modes=n_modes, photon_number=state.photon_number)


def _multiply_linear_form(
    poly: Dict[Tuple[int, ...], complex], column: npt.NDArray[np.complex128]
) -> Dict[Tuple[int, ...], complex]:
    """Multiply a polynomial in b_j^dagger by sum_j column[j] b_j^dagger."""
    product: DefaultDict[Tuple[int, ...], complex] = defaultdict(complex)
    nonzero = [(j, complex(c)) for j, c in enumerate(column) if c != 0]
    for monomial, coefficient in poly.items():
        for j, c in nonzero:
            raised = monomial[:j] + (monomial[j] + 1,) + monomial[j + 1 :]
            product[raised] += coefficient * c
    return dict(product)


def evolve_bruteforce(state: PhotonicState, u: Any) -> PhotonicState:
    """
    Reference evolution that expands creation operators as polynomials.

    Each input term prod_i (a_i^dagger)^{n_i} / sqrt(n_i!) is rewritten with
    a_i^dagger -> sum_j U_ji b_j^dagger and multiplied out monomial by
    monomial. A monomial prod_j (b_j^dagger)^{m_j} acting on vacuum yields
    sqrt(prod m_j!) |m>. No permanent is evaluated on this path.

    Limited to ``BRUTEFORCE_MAX_PHOTONS`` photons and ``BRUTEFORCE_MAX_MODES`` modes.
    """
    matrix = _transfer_matrix(u)
    _check_inputs(state, matrix, BRUTEFORCE_MAX_PHOTONS, BRUTEFORCE_MAX_MODES)

    n_modes = state.n_modes
    out: DefaultDict[FockState, complex] = defaultdict(complex)
    for fock_in, amplitude in state.items():
        poly: Dict[Tuple[int, ...], complex] = {(0,) * n_modes: 1 + 0j}
        for mode in fock_in.mode_indices():
            poly = _multiply_linear_form(poly, matrix[:, mode])
        norm_in = fock_in.normalization()
        for monomial, coefficient in poly.items():
            weight = math.sqrt(math.prod(math.factorial(m) for m in monomial))
            out[FockState(monomial)] += amplitude * coefficient * weight / norm_in

    return PhotonicState(out, n_modes=n_modes, photon_number=state.photon_number)
