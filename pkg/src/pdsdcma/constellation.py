"""Gray-coded QPSK / 16QAM constellations with hard nearest-point demapping.

Every scheme is scaled to unit average symbol energy.  Bits are grouped
most-significant first; the first half of each group selects the in-phase
level, the second half the quadrature level.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigurationError, InputShapeError

# per-axis Gray sequence over ascending amplitude levels
_GRAY_LEVELS = {
    1: {0b0: -1, 0b1: 1},
    2: {0b00: -3, 0b01: -1, 0b11: 1, 0b10: 3},
}

_DEMAP_BLOCK = 1 << 16


class SchemeName(str, Enum):
    QPSK = "qpsk"
    QAM16 = "16qam"


_ALIASES = {
    "qpsk": SchemeName.QPSK,
    "4qam": SchemeName.QPSK,
    "16qam": SchemeName.QAM16,
    "qam16": SchemeName.QAM16,
}


@dataclass(frozen=True, eq=False)
class ConstellationScheme:
    """Labelled 2D constellation.

    ``points[k]`` is the point carrying bit label ``k``; labels are read
    MSB first, so ``points`` is sorted by label value.
    """

    name: SchemeName
    bits_per_symbol: int
    points: np.ndarray

    @property
    def order(self) -> int:
        return 1 << self.bits_per_symbol

    @property
    def pairs(self) -> list[tuple[tuple[int, ...], complex]]:
        """(bit label, point) pairs in label order."""
        return [(label_bits(k, self.bits_per_symbol), complex(p)) for k, p in enumerate(self.points)]

    @property
    def min_distance(self) -> float:
        d = np.abs(self.points[:, None] - self.points[None, :])
        return float(d[~np.eye(self.order, dtype=bool)].min())

    def __repr__(self) -> str:
        return f"ConstellationScheme({self.name.value!r}, bits_per_symbol={self.bits_per_symbol})"


def label_bits(label: int, width: int) -> tuple[int, ...]:
    return tuple((label >> (width - 1 - i)) & 1 for i in range(width))


def _square_gray(bits_per_axis: int) -> np.ndarray:
    levels = _GRAY_LEVELS[bits_per_axis]
    m = 1 << (2 * bits_per_axis)
    raw = np.empty(m, dtype=complex)
    for label in range(m):
        i_bits = label >> bits_per_axis
        q_bits = label & ((1 << bits_per_axis) - 1)
        raw[label] = levels[i_bits] + 1j * levels[q_bits]
    return raw / np.sqrt(np.mean(np.abs(raw) ** 2))


def build_scheme(name: str | SchemeName) -> ConstellationScheme:
    """Build a named constellation ("qpsk" or "16qam", case-insensitive)."""
    key = name.value if isinstance(name, SchemeName) else str(name).strip().lower()
    if key not in _ALIASES:
        raise ConfigurationError(f"unknown constellation {name!r}; expected 'qpsk' or '16qam'")
    scheme = _ALIASES[key]
    bits_per_axis = 1 if scheme is SchemeName.QPSK else 2
    points = _square_gray(bits_per_axis)
    points.setflags(write=False)
    return ConstellationScheme(scheme, 2 * bits_per_axis, points)


def map_bits(bits, scheme: ConstellationScheme) -> np.ndarray:
    """Map a flat bit sequence onto symbols, ``bits_per_symbol`` bits at a time."""
    bits = np.asarray(bits, dtype=np.uint8).ravel()
    k = scheme.bits_per_symbol
    if bits.size % k:
        raise InputShapeError(f"{bits.size} bits is not a multiple of {k} bits per symbol")
    weights = 1 << np.arange(k - 1, -1, -1)
    labels = bits.reshape(-1, k) @ weights
    return scheme.points[labels]


def demap_labels(symbols, scheme: ConstellationScheme) -> np.ndarray:
    """Index of the Euclidean-nearest point for each symbol.

    ``argmin`` returns the first minimum, so exact ties resolve to the
    smallest label.
    """
    z = np.asarray(symbols, dtype=complex).ravel()
    out = np.empty(z.size, dtype=np.intp)
    pts = scheme.points
    for start in range(0, z.size, _DEMAP_BLOCK):
        block = z[start:start + _DEMAP_BLOCK, None]
        d2 = (block.real - pts.real) ** 2 + (block.imag - pts.imag) ** 2
        out[start:start + _DEMAP_BLOCK] = np.argmin(d2, axis=1)
    return out


def labels_to_bits(labels: np.ndarray, bits_per_symbol: int) -> np.ndarray:
    shifts = np.arange(bits_per_symbol - 1, -1, -1)
    return ((labels[:, None] >> shifts) & 1).astype(np.uint8).ravel()


def demap_hard(symbols, scheme: ConstellationScheme) -> np.ndarray:
    """Hard-decision demapping to a flat bit sequence."""
    return labels_to_bits(demap_labels(symbols, scheme), scheme.bits_per_symbol)
