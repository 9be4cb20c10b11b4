"""Dimension-selection matrices and the constellation <-> signal-space maps.

A dimension grid is a real array whose last axis holds the ``D`` signal-space
coordinates of one chunk; leading axes are free (typically OFDM symbol and
chunk index).  Dimension indices are 1-based throughout, as in the matrix
notation ``[1 2; 2 3; 3 1]``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .constellation import ConstellationScheme
from .errors import ConfigurationError, InputShapeError


@dataclass(frozen=True)
class S2DMatrix:
    """Row ``i`` lists the (1-based) dimensions carrying user ``i``'s symbol."""

    rows: tuple[tuple[int, ...], ...]
    dim_count: int

    def __post_init__(self):
        rows = tuple(tuple(int(d) for d in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise ConfigurationError("S2D matrix needs at least one row")
        q = len(rows[0])
        if q < 1 or any(len(r) != q for r in rows):
            raise ConfigurationError("S2D rows must all have the same non-zero length")
        if self.dim_count < q:
            raise ConfigurationError(f"dimension count {self.dim_count} is smaller than q={q}")
        for r in rows:
            if len(set(r)) != q:
                raise ConfigurationError(f"row {list(r)} repeats a dimension")
            if min(r) < 1 or max(r) > self.dim_count:
                raise ConfigurationError(f"row {list(r)} leaves the range 1..{self.dim_count}")

    @property
    def g(self) -> int:
        return len(self.rows)

    @property
    def q(self) -> int:
        return len(self.rows[0])

    @property
    def carriers_per_chunk(self) -> int:
        return math.ceil(self.dim_count / 2)

    @classmethod
    def from_rows(cls, rows, dim_count: int | None = None) -> "S2DMatrix":
        """Build from nested integer lists; ``D`` defaults to the largest entry."""
        rows = [list(r) for r in rows]
        if dim_count is None:
            if not rows or not rows[0]:
                raise ConfigurationError("S2D matrix needs at least one row")
            dim_count = max(max(r) for r in rows)
        return cls(tuple(tuple(r) for r in rows), int(dim_count))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def shared_dimensions(self, i: int, j: int) -> set[int]:
        return set(self.rows[i]) & set(self.rows[j])


def circulant_s2d(g: int, q: int = 2, dim_count: int | None = None) -> S2DMatrix:
    """Circulant strategy: user ``i`` (1-based) takes dimensions ``i`` and ``i+1``, wrapping at ``D``."""
    if q != 2:
        raise ConfigurationError("only two-column (2D constellation) strategies are supported")
    if dim_count is None:
        dim_count = default_dim_count(g)
    if g < 1:
        raise ConfigurationError(f"user count must be >= 1, got {g}")
    if dim_count < 2:
        raise ConfigurationError(f"dimension count must be >= 2, got {dim_count}")
    rows = tuple(((i - 1) % dim_count + 1, i % dim_count + 1) for i in range(1, g + 1))
    return S2DMatrix(rows, dim_count)


def default_dim_count(g: int) -> int:
    # one user: a plain 2D carrier; two users: [1 2; 2 3]; otherwise D = g
    if g < 1:
        raise ConfigurationError(f"user count must be >= 1, got {g}")
    return {1: 2, 2: 3}.get(g, g)


def full_overlap(g: int) -> S2DMatrix:
    """Every user on the same two dimensions: the conventional PD-NOMA layout."""
    return S2DMatrix(((1, 2),) * g, 2)


def dim_to_carrier_component(d: int) -> tuple[int, str]:
    """1-based dimension -> (1-based carrier, "I" or "Q")."""
    if d < 1:
        raise IndexError(f"dimension index must be >= 1, got {d}")
    return (d + 1) // 2, "I" if d % 2 else "Q"


def carrier_component_to_dim(carrier: int, component: str) -> int:
    if carrier < 1:
        raise IndexError(f"carrier index must be >= 1, got {carrier}")
    if component not in ("I", "Q"):
        raise ValueError(f"component must be 'I' or 'Q', got {component!r}")
    return 2 * carrier - (component == "I")


def reconstruct(user_symbols, s2d: S2DMatrix) -> np.ndarray:
    """Place each user's complex symbols onto its two dimensions.

    ``user_symbols`` has shape ``(g, ...)``; the result has shape
    ``(g, ..., D)`` with zeros on every dimension a user does not occupy.
    """
    if s2d.q != 2:
        raise ConfigurationError("reconstruction needs a two-column strategy")
    try:
        syms = np.asarray(user_symbols, dtype=complex)
    except ValueError as exc:  # ragged input
        raise InputShapeError("all users must carry the same number of symbols") from exc
    if syms.ndim < 1 or syms.shape[0] != s2d.g:
        raise InputShapeError(f"expected symbols for {s2d.g} users, got shape {syms.shape}")
    out = np.zeros(syms.shape + (s2d.dim_count,))
    for i, (d_re, d_im) in enumerate(s2d.rows):
        out[i, ..., d_re - 1] = syms[i].real
        out[i, ..., d_im - 1] = syms[i].imag
    return out


def project(chunk, row) -> np.ndarray | complex:
    """Read a user's symbol back from its dimension pair; other coordinates are ignored."""
    chunk = np.asarray(chunk, dtype=float)
    d_re, d_im = row
    dim_count = chunk.shape[-1]
    for d in (d_re, d_im):
        if not 1 <= d <= dim_count:
            raise IndexError(f"dimension {d} outside 1..{dim_count}")
    z = chunk[..., d_re - 1] + 1j * chunk[..., d_im - 1]
    return complex(z) if np.ndim(z) == 0 else z


def carrier_orthogonality_check(f_i: float, f_j: float, phi_i: float, phi_j: float,
                                symbol_period: float) -> float:
    """Integral of the product of two carriers over one symbol period.

    Zero for carriers spaced by a non-zero multiple of ``1 / symbol_period``.
    """
    def integrand(t):
        return math.cos(2 * math.pi * f_i * t + phi_i) * math.cos(2 * math.pi * f_j * t + phi_j)

    cycles = max(abs(f_i), abs(f_j)) * symbol_period
    value, _ = integrate.quad(integrand, 0.0, symbol_period, limit=max(50, int(8 * cycles) + 50),
                              epsabs=1e-13 * symbol_period, epsrel=1e-12)
    return value


def superposed_points(scheme: ConstellationScheme, powers, s2d: S2DMatrix) -> np.ndarray:
    """Every noiseless composite point, shape ``(M**g, D)``.

    Row ``k`` corresponds to the user label tuple ``itertools.product(range(M), repeat=g)[k]``.
    """
    powers = np.asarray(getattr(powers, "weights", powers), dtype=float)
    if powers.size != s2d.g:
        raise InputShapeError(f"{powers.size} powers for {s2d.g} users")
    combos = np.array(list(itertools.product(range(scheme.order), repeat=s2d.g)), dtype=np.intp)
    syms = scheme.points[combos.T] * np.sqrt(powers)[:, None]
    return reconstruct(syms, s2d).sum(axis=0)


def distinct_points(points, decimals: int = 9) -> np.ndarray:
    """Unique rows after rounding away floating-point noise."""
    pts = np.round(np.asarray(points, dtype=float), decimals) + 0.0
    return np.unique(pts, axis=0)


def minimum_distance(points) -> float:
    """Smallest pairwise Euclidean distance between distinct points."""
    raw = np.asarray(points, dtype=float)
    if raw.ndim == 1:
        raw = raw[:, None]
    _, keep = np.unique(np.round(raw, 9) + 0.0, axis=0, return_index=True)
    pts = raw[np.sort(keep)]
    if len(pts) < 2:
        raise InputShapeError("need at least two distinct points")
    best = math.inf
    for k in range(len(pts) - 1):
        d2 = np.sum((pts[k + 1:] - pts[k]) ** 2, axis=1)
        best = min(best, float(d2.min()))
    return math.sqrt(best)
