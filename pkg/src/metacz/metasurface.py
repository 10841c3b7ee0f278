"""Gradient-metasurface model: polarized modes and the parallel beam-splitter unitary."""

import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import (
    Any,
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import numpy as np
from scipy.linalg import block_diag

from .errors import BasisMismatchError, ConfigError, DimensionError, NormError
from .linalg import (
    UNITARITY_TOLERANCE,
    ComplexMatrix,
    as_complex_matrix,
    max_singular_value,
    unitarity_deviation,
)

IDEAL_RATIO = 1.0 / 3.0
RATIO_TOLERANCE = 1e-12


class Polarization(Enum):
    L = "L"
    R = "R"


@dataclass(frozen=True, order=True)
class PolarizedMode:
    """One optical mode: a diffraction order paired with a circular polarization."""

    order: int
    pol: Polarization

    def __str__(self) -> str:
        return f"{self.pol.value}({self.order:+d})"


def L(order: int) -> PolarizedMode:
    """Left-circular mode at ``order``."""
    return PolarizedMode(order, Polarization.L)


def R(order: int) -> PolarizedMode:
    """Right-circular mode at ``order``."""
    return PolarizedMode(order, Polarization.R)


class ModeBasis:
    """
    Ordered list of distinct polarized modes with reverse lookup.

    Two bases are equal when they list the same modes in the same order.
    """

    def __init__(self, modes: Sequence[PolarizedMode]):
        self._modes: Tuple[PolarizedMode, ...] = tuple(modes)
        self._index: Dict[PolarizedMode, int] = {m: i for i, m in enumerate(self._modes)}
        if len(self._index) != len(self._modes):
            raise BasisMismatchError(f"Duplicate modes in basis {self}")

    @property
    def modes(self) -> Tuple[PolarizedMode, ...]:
        return self._modes

    @property
    def orders(self) -> Tuple[int, int]:
        """Smallest and largest diffraction order present."""
        orders = [m.order for m in self._modes]
        return min(orders), max(orders)

    def index_of(self, mode: PolarizedMode) -> int:
        """
        Position of ``mode`` in the basis.

        Raises:
            BasisMismatchError: if the mode is not part of the basis
        """
        try:
            return self._index[mode]
        except KeyError:
            raise BasisMismatchError(f"Mode {mode} is not in basis {self}") from None

    def __contains__(self, mode: object) -> bool:
        return mode in self._index

    def __len__(self) -> int:
        return len(self._modes)

    def __iter__(self) -> Iterator[PolarizedMode]:
        return iter(self._modes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModeBasis):
            return NotImplemented
        return self._modes == other._modes

    def __hash__(self) -> int:
        return hash(self._modes)

    def __str__(self) -> str:
        return "[" + ", ".join(str(m) for m in self._modes) + "]"

    def __repr__(self) -> str:
        return f"ModeBasis({self})"


def parallel_bs_basis(
    order_min: int, order_max: int, edge_modes: bool = False
) -> ModeBasis:
    """
    Mode basis of the parallel beam splitters between ``order_min`` and ``order_max``.

    Pairs [R(j+1), L(j)] are listed for j from ``order_max - 1`` down to
    ``order_min``. With ``edge_modes`` the unpartnered L(order_max) leads
    and R(order_min) trails the list.
    """
    if order_min >= order_max:
        raise ConfigError(f"order_min {order_min} must be below order_max {order_max}")
    modes: List[PolarizedMode] = [L(order_max)] if edge_modes else []
    for j in range(order_max - 1, order_min - 1, -1):
        modes.extend((R(j + 1), L(j)))
    if edge_modes:
        modes.append(R(order_min))
    return ModeBasis(modes)


@dataclass(frozen=True)
class SplitterSpec:
    """
    One 2x2 beam splitter coupling L(pair_order) with R(pair_order + 1).

    ``t`` is the transmission amplitude, ``r`` the polarization-conversion
    amplitude, ``efficiency`` the power diffraction efficiency of this splitter.
    """

    pair_order: int
    t: float
    r: float
    efficiency: float = 1.0

    def __post_init__(self) -> None:
        if not self.t > 0 or self.r < 0:
            raise ConfigError(f"Splitter {self.pair_order}: need t > 0 and r >= 0")
        if abs(self.t**2 + self.r**2 - 1) > RATIO_TOLERANCE:
            raise ConfigError(
                f"Splitter {self.pair_order}: t^2 + r^2 = {self.t**2 + self.r**2}, expected 1"
            )
        if not 0 < self.efficiency <= 1:
            raise ConfigError(
                f"Splitter {self.pair_order}: efficiency {self.efficiency} outside (0, 1]"
            )

    @classmethod
    def from_ratio(
        cls, pair_order: int, ratio: float, efficiency: float = 1.0
    ) -> "SplitterSpec":
        """Build from the transmitted power fraction ``ratio`` in (0, 1]."""
        if not 0 < ratio <= 1:
            raise ConfigError(f"Splitter {pair_order}: ratio {ratio} outside (0, 1]")
        return cls(pair_order, math.sqrt(ratio), math.sqrt(1 - ratio), efficiency)

    @property
    def ratio(self) -> float:
        return self.t**2


@dataclass(frozen=True)
class MetasurfaceConfig:
    """
    Declarative description of a metasurface acting as identical parallel splitters.

    Every pair {L(j), R(j+1)} with ``order_min <= j < order_max`` is one
    splitter. Splitters without an override share ``default_ratio`` (the
    transmitted power fraction) and unit per-splitter efficiency.
    """

    order_min: int = -1
    order_max: int = 2
    default_ratio: float = IDEAL_RATIO
    per_splitter_overrides: Tuple[SplitterSpec, ...] = field(default_factory=tuple)
    global_efficiency: float = 1.0
    conversion_efficiency: float = 1.0
    edge_modes: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "per_splitter_overrides", tuple(self.per_splitter_overrides)
        )
        if self.order_min >= self.order_max:
            raise ConfigError(
                f"order_min {self.order_min} must be below order_max {self.order_max}"
            )
        if not 0 < self.default_ratio < 1:
            raise ConfigError(f"ratio {self.default_ratio} outside (0, 1)")
        if not 0 < self.global_efficiency <= 1:
            raise ConfigError(f"efficiency {self.global_efficiency} outside (0, 1]")
        if not 0 <= self.conversion_efficiency <= 1:
            raise ConfigError(
                f"conversion_efficiency {self.conversion_efficiency} outside [0, 1]"
            )
        seen = set()
        for spec in self.per_splitter_overrides:
            if not self.order_min <= spec.pair_order < self.order_max:
                raise ConfigError(
                    f"Override pair {spec.pair_order} outside pairs "
                    f"{self.order_min}..{self.order_max - 1}"
                )
            if spec.pair_order in seen:
                raise ConfigError(f"Duplicate override for pair {spec.pair_order}")
            seen.add(spec.pair_order)

    @classmethod
    def ideal(cls, order_min: int, order_max: int) -> "MetasurfaceConfig":
        """Lossless 1:2 splitters over the given order range."""
        return cls(order_min=order_min, order_max=order_max)

    @property
    def pair_orders(self) -> range:
        return range(self.order_min, self.order_max)

    def default_splitter(self, pair_order: int) -> SplitterSpec:
        return SplitterSpec.from_ratio(pair_order, self.default_ratio)

    def splitter(self, pair_order: int) -> SplitterSpec:
        """Effective splitter for a pair, honoring overrides."""
        for spec in self.per_splitter_overrides:
            if spec.pair_order == pair_order:
                return spec
        return self.default_splitter(pair_order)

    @property
    def lossless(self) -> bool:
        if self.global_efficiency != 1 or self.conversion_efficiency != 1:
            return False
        if any(spec.efficiency != 1 for spec in self.per_splitter_overrides):
            return False
        # Edge modes pass through with amplitude t only.
        return not self.edge_modes


@dataclass(frozen=True, eq=False)
class ModeUnitary:
    """
    Transfer matrix over a mode basis, output modes along rows.

    A ``lossless`` matrix is unitary within ``UNITARITY_TOLERANCE``; otherwise
    every singular value is at most 1 (loss channels are not tracked).
    """

    basis: ModeBasis
    matrix: ComplexMatrix
    lossless: bool = True

    def __post_init__(self) -> None:
        matrix = as_complex_matrix(self.matrix).copy()
        n = len(self.basis)
        if matrix.shape != (n, n):
            raise DimensionError(f"Matrix shape {matrix.shape} does not fit {n} modes")
        if self.lossless:
            deviation = unitarity_deviation(matrix)
            if deviation >= UNITARITY_TOLERANCE:
                raise NormError(f"Lossless matrix deviates from unitary by {deviation}")
        elif max_singular_value(matrix) > 1 + UNITARITY_TOLERANCE:
            raise NormError("Lossy matrix amplifies: singular value above 1")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def identity(cls, basis: ModeBasis) -> "ModeUnitary":
        return cls(basis, np.eye(len(basis), dtype=np.complex128), True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, out_mode: PolarizedMode, in_mode: PolarizedMode) -> complex:
        """Amplitude for a photon entering ``in_mode`` to leave in ``out_mode``."""
        return complex(
            self.matrix[self.basis.index_of(out_mode), self.basis.index_of(in_mode)]
        )

    def submatrix(self, modes: Sequence[PolarizedMode]) -> ComplexMatrix:
        """Restriction of the matrix to ``modes`` (rows and columns in that order)."""
        idx = [self.basis.index_of(m) for m in modes]
        return self.matrix[np.ix_(idx, idx)]


def _splitter_block(
    spec: SplitterSpec, global_efficiency: float, conversion_efficiency: float
) -> ComplexMatrix:
    amplitude = math.sqrt(global_efficiency * spec.efficiency)
    cross = 1j * spec.r * math.sqrt(conversion_efficiency)
    return amplitude * np.array([[spec.t, cross], [cross, spec.t]], dtype=np.complex128)


def _edge_block(spec: SplitterSpec, global_efficiency: float) -> ComplexMatrix:
    amplitude = spec.t * math.sqrt(global_efficiency * spec.efficiency)
    return np.array([[amplitude]], dtype=np.complex128)


def build_parallel_bs(config: MetasurfaceConfig) -> ModeUnitary:
    """
    Build the mode unitary of the metasurface described by ``config``.

    Each pair [R(j+1), L(j)] forms the block sqrt(eta) * [[t, i r], [i r, t]]
    with the conversion amplitude additionally scaled by
    sqrt(conversion_efficiency). Edge modes, when enabled, keep only the
    transmitted amplitude of the adjacent splitter: L(order_max) follows pair
    ``order_max - 1`` and R(order_min) follows pair ``order_min``, overrides
    included.

    Args:
        config: Validated metasurface configuration

    Returns:
        ModeUnitary over ``parallel_bs_basis(order_min, order_max, edge_modes)``
    """
    basis = parallel_bs_basis(config.order_min, config.order_max, config.edge_modes)

    blocks: List[ComplexMatrix] = []
    if config.edge_modes:
        blocks.append(
            _edge_block(config.splitter(config.order_max - 1), config.global_efficiency)
        )
    for j in range(config.order_max - 1, config.order_min - 1, -1):
        blocks.append(
            _splitter_block(
                config.splitter(j), config.global_efficiency, config.conversion_efficiency
            )
        )
    if config.edge_modes:
        blocks.append(
            _edge_block(config.splitter(config.order_min), config.global_efficiency)
        )

    return ModeUnitary(basis, block_diag(*blocks), config.lossless)


def build_splitter_blocks(
    config: MetasurfaceConfig, pair_orders: Iterable[int]
) -> ModeUnitary:
    """
    Mode unitary of a subset of the splitters of ``config``.

    The full matrix is block diagonal, so photons entering the listed pairs
    evolve exactly as on the whole metasurface. Pairs are laid out in the
    descending order of ``parallel_bs_basis``; edge modes are left out.

    Raises:
        ConfigError: if no pair is given or a pair lies outside the configured range
    """
    orders = sorted(set(pair_orders), reverse=True)
    if not orders:
        raise ConfigError("No splitter pairs selected")
    outside = [j for j in orders if j not in config.pair_orders]
    if outside:
        raise ConfigError(
            f"Pairs {outside} lie outside pairs {config.order_min}..{config.order_max - 1}"
        )

    modes: List[PolarizedMode] = []
    blocks: List[ComplexMatrix] = []
    for j in orders:
        modes.extend((R(j + 1), L(j)))
        blocks.append(
            _splitter_block(
                config.splitter(j), config.global_efficiency, config.conversion_efficiency
            )
        )
    lossless = (
        config.global_efficiency == 1
        and config.conversion_efficiency == 1
        and all(config.splitter(j).efficiency == 1 for j in orders)
    )
    return ModeUnitary(ModeBasis(modes), block_diag(*blocks), lossless)


def perturb_ratio(config: MetasurfaceConfig, delta: float) -> MetasurfaceConfig:
    """
    Scale every splitter's transmitted power fraction by ``1 + delta``.

    Conversion amplitudes are recomputed so that t^2 + r^2 = 1 still holds;
    a ratio error never costs unitarity.

    Raises:
        ConfigError: if any resulting power fraction leaves its valid range
    """
    if delta == 0:
        return config
    try:
        overrides = tuple(
            SplitterSpec.from_ratio(s.pair_order, s.ratio * (1 + delta), s.efficiency)
            for s in config.per_splitter_overrides
        )
        return replace(
            config,
            default_ratio=config.default_ratio * (1 + delta),
            per_splitter_overrides=overrides,
        )
    except ConfigError as exc:
        raise ConfigError(f"ratio delta {delta} is out of range: {exc}") from exc


def apply_conversion_deficit(
    config: MetasurfaceConfig, eta_conv: float
) -> MetasurfaceConfig:
    """
    Scale every conversion amplitude by sqrt(eta_conv).

    The unconverted power is dropped as loss, so any ``eta_conv < 1`` yields a
    lossy configuration. Successive deficits multiply.
    """
    if not 0 <= eta_conv <= 1:
        raise ConfigError(f"conversion efficiency {eta_conv} outside [0, 1]")
    return replace(config, conversion_efficiency=config.conversion_efficiency * eta_conv)


_CONFIG_KEYS = {
    "order_min",
    "order_max",
    "ratio",
    "efficiency",
    "conversion_efficiency",
    "overrides",
    "edge_modes",
    "ratio_delta",
}
_OVERRIDE_KEYS = {"pair_order", "ratio", "efficiency"}


def _as_int(data: Mapping[str, Any], key: str, default: int) -> int:
    value = data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"'{key}' must be an integer, got {value!r}")
    return value


def _as_float(data: Mapping[str, Any], key: str, default: float) -> float:
    value = data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"'{key}' must be a number, got {value!r}")
    return float(value)


def config_from_dict(
    data: Any, defaults: Optional[MetasurfaceConfig] = None
) -> MetasurfaceConfig:
    """
    Build a config from a JSON-like mapping, falling back to ``defaults``.

    Raises:
        ConfigError: on unknown keys, wrong types or invalid values
    """
    base = defaults or MetasurfaceConfig()
    if not isinstance(data, dict):
        raise ConfigError("Config document must be a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"Unknown config keys: {sorted(unknown)}")

    raw_overrides = data.get("overrides", None)
    if raw_overrides is None:
        overrides: Tuple[SplitterSpec, ...] = base.per_splitter_overrides
    elif not isinstance(raw_overrides, list):
        raise ConfigError("'overrides' must be a list")
    else:
        parsed = []
        for item in raw_overrides:
            if not isinstance(item, dict) or set(item) - _OVERRIDE_KEYS:
                raise ConfigError(f"Invalid override entry {item!r}")
            if "pair_order" not in item:
                raise ConfigError(f"Override {item!r} lacks 'pair_order'")
            parsed.append(
                SplitterSpec.from_ratio(
                    _as_int(item, "pair_order", 0),
                    _as_float(item, "ratio", base.default_ratio),
                    _as_float(item, "efficiency", 1.0),
                )
            )
        overrides = tuple(parsed)

    edge_modes = data.get("edge_modes", base.edge_modes)
    if not isinstance(edge_modes, bool):
        raise ConfigError(f"'edge_modes' must be a boolean, got {edge_modes!r}")

    config = MetasurfaceConfig(
        order_min=_as_int(data, "order_min", base.order_min),
        order_max=_as_int(data, "order_max", base.order_max),
        default_ratio=_as_float(data, "ratio", base.default_ratio),
        per_splitter_overrides=overrides,
        global_efficiency=_as_float(data, "efficiency", base.global_efficiency),
        conversion_efficiency=_as_float(
            data, "conversion_efficiency", base.conversion_efficiency
        ),
        edge_modes=edge_modes,
    )
    return perturb_ratio(config, _as_float(data, "ratio_delta", 0.0))


def config_to_dict(config: MetasurfaceConfig) -> Dict[str, Any]:
    """JSON-ready mapping of ``config`` in the documented schema."""
    return {
        "order_min": config.order_min,
        "order_max": config.order_max,
        "ratio": config.default_ratio,
        "efficiency": config.global_efficiency,
        "conversion_efficiency": config.conversion_efficiency,
        "edge_modes": config.edge_modes,
        "overrides": [
            {"pair_order": s.pair_order, "ratio": s.ratio, "efficiency": s.efficiency}
            for s in config.per_splitter_overrides
        ],
    }


def load_config(
    path: Union[str, Path], defaults: Optional[MetasurfaceConfig] = None
) -> MetasurfaceConfig:
    """
    Read a JSON config document.

    Raises:
        ConfigError: if the file is unreadable, not JSON, or invalid
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"Cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"Malformed JSON in {path}: {exc}") from exc
    return config_from_dict(data, defaults)


def dump_config(config: MetasurfaceConfig, path: Union[str, Path]) -> None:
    Path(path).write_text(
        json.dumps(config_to_dict(config), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
