"""Fock-basis occupation states and multi-photon superpositions."""

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from types import MappingProxyType
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionError, NormError, PhotonNumberError

MAX_PHOTONS = 4
MAX_MODES = 16
PRUNE_THRESHOLD = 1e-15
NORM_TOLERANCE = 1e-12


@dataclass(frozen=True, order=True)
class FockState:
    """
    Photon-number occupation pattern over an ordered mode basis.

    ``total`` is derived from ``occupations`` at construction and never
    compared or hashed separately.
    """

    occupations: Tuple[int, ...]
    total: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        occupations = tuple(int(n) for n in self.occupations)
        if any(n < 0 for n in occupations):
            raise PhotonNumberError(f"Negative occupation in {occupations}")
        object.__setattr__(self, "occupations", occupations)
        object.__setattr__(self, "total", sum(occupations))

    @classmethod
    def from_modes(cls, n_modes: int, modes: Sequence[int]) -> "FockState":
        """
        Build a Fock state from the list of occupied mode indices.

        Args:
            n_modes: Size of the mode basis
            modes: One index per photon; repeated indices mean bunching
        """
        occupations = [0] * n_modes
        for mode in modes:
            if not 0 <= mode < n_modes:
                raise DimensionError(f"Mode index {mode} outside 0..{n_modes - 1}")
            occupations[mode] += 1
        return cls(tuple(occupations))

    @property
    def n_modes(self) -> int:
        return len(self.occupations)

    def mode_indices(self) -> Tuple[int, ...]:
        """Mode index of every photon, repeated by occupation."""
        return tuple(
            mode for mode, count in enumerate(self.occupations) for _ in range(count)
        )

    def normalization(self) -> float:
        """sqrt(prod n_i!) for this occupation pattern."""
        return math.sqrt(math.prod(math.factorial(n) for n in self.occupations))

    def __str__(self) -> str:
        return "|" + ",".join(str(n) for n in self.occupations) + ">"


@lru_cache(maxsize=None)
def _fock_basis(n_modes: int, n_photons: int) -> Tuple[FockState, ...]:
    return tuple(
        FockState.from_modes(n_modes, modes)
        for modes in combinations_with_replacement(range(n_modes), n_photons)
    )


def enumerate_fock_basis(n_modes: int, n_photons: int) -> List[FockState]:
    """
    List every occupation pattern of ``n_photons`` photons over ``n_modes`` modes.

    The order is descending lexicographic in the occupation vector, e.g.
    ``(1, 0)`` before ``(0, 1)``, and is stable across runs.

    Args:
        n_modes: Number of modes, at least 1
        n_photons: Number of photons, at least 0

    Returns:
        C(n_photons + n_modes - 1, n_modes - 1) Fock states
    """
    if n_modes < 1:
        raise DimensionError(f"Need at least one mode, got {n_modes}")
    if n_photons < 0:
        raise PhotonNumberError(f"Photon number must be non-negative, got {n_photons}")
    return list(_fock_basis(n_modes, n_photons))


class PhotonicState:
    """
    Superposition of Fock states sharing one photon number and mode count.

    Instances are immutable. Amplitudes below ``PRUNE_THRESHOLD`` are dropped
    on construction, and terms are kept in the same descending lexicographic
    order as ``enumerate_fock_basis``.
    """

    def __init__(
        self,
        terms: Mapping[FockState, complex],
        n_modes: Optional[int] = None,
        photon_number: Optional[int] = None,
    ):
        """
        Initialize the state.

        Args:
            terms: Mapping from Fock state to complex amplitude
            n_modes: Mode-basis size; inferred from the terms when omitted
            photon_number: Total photon number; inferred when omitted

        Raises:
            DimensionError: if terms disagree on the mode count
            PhotonNumberError: if terms disagree on the photon number
            NormError: if the squared norm exceeds 1 beyond tolerance
        """
        kept: Dict[FockState, complex] = {}
        for fock, amplitude in terms.items():
            amplitude = complex(amplitude)
            if abs(amplitude) >= PRUNE_THRESHOLD:
                kept[fock] = amplitude

        for fock in terms:
            if n_modes is None:
                n_modes = fock.n_modes
            if photon_number is None:
                photon_number = fock.total
            if fock.n_modes != n_modes:
                raise DimensionError(
                    f"Term {fock} has {fock.n_modes} modes, expected {n_modes}"
                )
            if fock.total != photon_number:
                raise PhotonNumberError(
                    f"Term {fock} has {fock.total} photons, expected {photon_number}"
                )

        if n_modes is None:
            raise DimensionError("An empty state needs an explicit mode count")

        self._n_modes = n_modes
        self._photon_number = photon_number if photon_number is not None else 0
        self._terms = MappingProxyType(
            dict(sorted(kept.items(), key=lambda item: item[0], reverse=True))
        )

        norm = self.norm_squared()
        if norm > 1 + NORM_TOLERANCE:
            raise NormError(f"Squared norm {norm} exceeds 1")

    @classmethod
    def from_occupations(
        cls, occupations: Sequence[int], amplitude: complex = 1.0
    ) -> "PhotonicState":
        """Single-term state with the given occupation pattern."""
        fock = FockState(tuple(occupations))
        return cls({fock: amplitude}, n_modes=fock.n_modes, photon_number=fock.total)

    @property
    def n_modes(self) -> int:
        return self._n_modes

    @property
    def photon_number(self) -> int:
        return self._photon_number

    @property
    def terms(self) -> Mapping[FockState, complex]:
        return self._terms

    def items(self) -> Iterator[Tuple[FockState, complex]]:
        return iter(self._terms.items())

    def amplitude(self, fock: FockState) -> complex:
        """Amplitude of ``fock``; zero for absent terms."""
        return self._terms.get(fock, 0j)

    def probability(self, fock: FockState) -> float:
        return abs(self.amplitude(fock)) ** 2

    def norm_squared(self) -> float:
        return float(sum(abs(a) ** 2 for a in self._terms.values()))

    def to_vector(self) -> np.ndarray:
        """Dense amplitude vector over ``enumerate_fock_basis`` order."""
        basis = enumerate_fock_basis(self._n_modes, self._photon_number)
        return np.array([self.amplitude(fock) for fock in basis], dtype=np.complex128)

    def allclose(self, other: "PhotonicState", atol: float = NORM_TOLERANCE) -> bool:
        """Entrywise amplitude comparison over the union of both supports."""
        if (self.n_modes, self.photon_number) != (other.n_modes, other.photon_number):
            return False
        keys = set(self._terms) | set(other.terms)
        return all(abs(self.amplitude(k) - other.amplitude(k)) <= atol for k in keys)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[FockState]:
        return iter(self._terms)

    def __repr__(self) -> str:
        body = " + ".join(f"({a:.6g}){fock}" for fock, a in self._terms.items())
        return f"PhotonicState({body or '0'})"
