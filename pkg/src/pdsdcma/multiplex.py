"""Power allocation and power-domain superposition."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, InputShapeError
from .waveform import TimeFrame


@dataclass(frozen=True)
class PowerAllocation:
    """Per-user powers summing to one, strongest user first."""

    weights: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise ConfigurationError("power allocation needs at least one user")
        if any(not np.isfinite(x) or x <= 0 for x in w):
            raise ConfigurationError(f"powers must be positive and finite, got {list(w)}")
        if abs(sum(w) - 1.0) > 1e-12:
            raise ConfigurationError(f"powers sum to {sum(w)!r}, not 1")
        if any(a <= b for a, b in zip(w, w[1:])):
            raise ConfigurationError(f"powers must be strictly descending, got {list(w)}")

    @property
    def g(self) -> int:
        return len(self.weights)

    @property
    def amplitudes(self) -> np.ndarray:
        return np.sqrt(np.array(self.weights))


def normalize_powers(ratios) -> PowerAllocation:
    """Scale power ratios such as ``[16, 4, 1]`` to sum to one, sorted descending.

    Equal ratios are rejected: the cancellation order is the power order.
    """
    r = [float(x) for x in ratios]
    if not r:
        raise ConfigurationError("empty power ratio list")
    if any(not np.isfinite(x) or x <= 0 for x in r):
        raise ConfigurationError(f"power ratios must be positive, got {r}")
    r.sort(reverse=True)
    if any(a == b for a, b in zip(r, r[1:])):
        raise ConfigurationError(f"power ratios must be distinct to fix the cancellation order, got {r}")
    total = sum(r)
    w = [x / total for x in r]
    # push the rounding residue onto the largest weight so the sum is 1 to within an ulp
    w[0] = 1.0 - sum(w[1:])
    return PowerAllocation(tuple(w))


def superpose(user_frames, alloc: PowerAllocation) -> TimeFrame:
    """Sample-wise sum of ``sqrt(P_i) * Y_i``."""
    frames = list(user_frames)
    if len(frames) != alloc.g:
        raise InputShapeError(f"{len(frames)} frames for {alloc.g} power weights")
    params = frames[0].params
    n = frames[0].samples.size
    for f in frames[1:]:
        if f.params != params or f.samples.size != n:
            raise InputShapeError("user frames differ in length or OFDM parameters")
    z = np.zeros(n, dtype=complex)
    for amp, f in zip(alloc.amplitudes, frames):
        z += amp * f.samples
    return TimeFrame(z, params)
