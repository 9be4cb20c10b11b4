"""OFDM modulation of dimension grids.

Chunk-local carrier ``c`` (0-based) of chunk ``t`` sits on DFT bin
``1 + t * carriers_per_chunk + c``; DC and the bins above ``n_carriers``
stay empty.  Dimension ``2c+1`` is the in-phase part of that carrier and
``2c+2`` the quadrature part.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigurationError, InputShapeError

FRAME_MAGIC = b"SDCMA1"
_HEADER = struct.Struct("<6s2xII")


@dataclass(frozen=True)
class OfdmParams:
    n_fft: int = 512
    n_carriers: int = 256
    cp_fraction: float = 0.125

    def __post_init__(self):
        if self.n_fft < 1 or self.n_carriers < 1:
            raise ConfigurationError("n_fft and n_carriers must be positive")
        if self.n_carriers > self.n_fft - 1:
            raise ConfigurationError(
                f"{self.n_carriers} carriers do not fit bins 1..{self.n_fft - 1} of a {self.n_fft}-point DFT")
        cp = self.cp_fraction * self.n_fft
        if self.cp_fraction < 0 or abs(cp - round(cp)) > 1e-9:
            raise ConfigurationError(f"cp_fraction * n_fft = {cp} is not a non-negative integer")

    @property
    def cp_len(self) -> int:
        return int(round(self.cp_fraction * self.n_fft))

    @property
    def symbol_len(self) -> int:
        return self.n_fft + self.cp_len

    def chunks_per_symbol(self, dim_count: int) -> int:
        """Chunks of ``ceil(D/2)`` carriers that fit in the occupied band."""
        return self.n_carriers // math.ceil(dim_count / 2)


@dataclass(frozen=True, eq=False)
class TimeFrame:
    samples: np.ndarray
    params: OfdmParams

    def __post_init__(self):
        if self.samples.ndim != 1 or self.samples.size % self.params.symbol_len:
            raise InputShapeError(
                f"{self.samples.size} samples is not a whole number of {self.params.symbol_len}-sample symbols")

    @property
    def n_symbols(self) -> int:
        return self.samples.size // self.params.symbol_len

    def __len__(self):
        return self.samples.size


def assemble_grid(dim_grid, params: OfdmParams) -> np.ndarray:
    """Pack a ``(n_symbols, chunks, D)`` dimension grid into ``(n_symbols, n_fft)`` DFT bins."""
    x = np.asarray(dim_grid, dtype=float)
    if x.ndim != 3:
        raise InputShapeError(f"expected (n_symbols, chunks, D), got shape {x.shape}")
    n_sym, chunks, dim_count = x.shape
    cpc = math.ceil(dim_count / 2)
    used = chunks * cpc
    if used > params.n_carriers:
        raise ConfigurationError(f"{chunks} chunks x {cpc} carriers exceed {params.n_carriers} carriers")
    if dim_count % 2:
        x = np.concatenate([x, np.zeros((n_sym, chunks, 1))], axis=-1)
    carriers = (x[..., 0::2] + 1j * x[..., 1::2]).reshape(n_sym, used)
    grid = np.zeros((n_sym, params.n_fft), dtype=complex)
    grid[:, 1:1 + used] = carriers
    return grid


def extract_dim_grid(grid, dim_count: int, params: OfdmParams) -> np.ndarray:
    """Inverse of :func:`assemble_grid`; odd-``D`` padding is dropped."""
    grid = np.asarray(grid, dtype=complex)
    if grid.ndim != 2 or grid.shape[1] != params.n_fft:
        raise InputShapeError(f"expected (n_symbols, {params.n_fft}) grid, got shape {grid.shape}")
    cpc = math.ceil(dim_count / 2)
    chunks = params.chunks_per_symbol(dim_count)
    carriers = grid[:, 1:1 + chunks * cpc].reshape(grid.shape[0], chunks, cpc)
    out = np.empty(carriers.shape[:2] + (2 * cpc,))
    out[..., 0::2] = carriers.real
    out[..., 1::2] = carriers.imag
    return out[..., :dim_count]


def ofdm_modulate(grid, params: OfdmParams) -> TimeFrame:
    """Inverse DFT with 1/N scaling per OFDM symbol, then cyclic-prefix insertion."""
    grid = np.asarray(grid, dtype=complex)
    if grid.ndim == 1:
        grid = grid[None, :]
    if grid.ndim != 2 or grid.shape[1] != params.n_fft:
        raise InputShapeError(f"each OFDM symbol needs {params.n_fft} bins, got shape {grid.shape}")
    y = np.fft.ifft(grid, axis=1)
    cp = params.cp_len
    if cp:
        y = np.concatenate([y[:, -cp:], y], axis=1)
    return TimeFrame(y.ravel(), params)


def ofdm_demodulate(frame: TimeFrame | np.ndarray, params: OfdmParams) -> np.ndarray:
    """Strip the cyclic prefix and apply the unscaled forward DFT."""
    samples = frame.samples if isinstance(frame, TimeFrame) else np.asarray(frame, dtype=complex)
    if samples.ndim != 1 or samples.size % params.symbol_len:
        raise InputShapeError(f"{samples.size} samples is not a multiple of {params.symbol_len}")
    y = samples.reshape(-1, params.symbol_len)[:, params.cp_len:]
    return np.fft.fft(y, axis=1)


def write_frame(path, frame: TimeFrame) -> None:
    """Dump a frame as a 16-byte header followed by little-endian float64 re/im pairs."""
    header = _HEADER.pack(FRAME_MAGIC, frame.params.n_fft, frame.params.cp_len)
    body = np.empty(2 * frame.samples.size, dtype="<f8")
    body[0::2] = frame.samples.real
    body[1::2] = frame.samples.imag
    Path(path).write_bytes(header + body.tobytes())


def read_frame(path, n_carriers: int | None = None) -> TimeFrame:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise InputShapeError("file too short for a frame header")
    magic, n_fft, cp_len = _HEADER.unpack_from(raw)
    if magic != FRAME_MAGIC:
        raise InputShapeError(f"bad magic {magic!r}")
    body = np.frombuffer(raw, dtype="<f8", offset=_HEADER.size)
    if body.size % 2:
        raise InputShapeError("odd number of float64 values in frame body")
    params = OfdmParams(n_fft, n_carriers if n_carriers is not None else min(256, n_fft - 1),
                        cp_len / n_fft)
    return TimeFrame(body[0::2] + 1j * body[1::2], params)
