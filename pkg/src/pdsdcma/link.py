"""Link configuration and the transmit chain shared by both access schemes."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .constellation import ConstellationScheme, map_bits
from .errors import ConfigurationError, InputShapeError
from .multiplex import PowerAllocation, superpose
from .signal_space import S2DMatrix, full_overlap, reconstruct
from .waveform import OfdmParams, TimeFrame, assemble_grid, ofdm_modulate


class Scheme(str, Enum):
    PD_SDCMA = "PD-SDCMA"
    PD_NOMA = "PD-NOMA"

    @classmethod
    def parse(cls, text: str) -> "Scheme":
        key = str(text).strip().upper().replace("_", "-")
        for s in cls:
            if s.value == key:
                return s
        raise ConfigurationError(f"unknown scheme {text!r}; expected pd-sdcma or pd-noma")

    @property
    def stream_id(self) -> int:
        return 1 if self is Scheme.PD_SDCMA else 2


@dataclass(frozen=True)
class LinkConfig:
    scheme: Scheme
    constellation: ConstellationScheme
    alloc: PowerAllocation
    ofdm: OfdmParams = OfdmParams()
    n_symbols: int = 1000
    s2d: S2DMatrix | None = None

    def __post_init__(self):
        if self.n_symbols < 1:
            raise ConfigurationError("n_symbols must be >= 1")
        if (self.s2d is not None) != (self.scheme is Scheme.PD_SDCMA):
            raise ConfigurationError("an S2D matrix is required for PD-SDCMA and not allowed for PD-NOMA")
        if self.s2d is not None:
            if self.s2d.q != 2:
                raise ConfigurationError("PD-SDCMA needs a two-column S2D matrix")
            if self.s2d.g != self.alloc.g:
                raise ConfigurationError(f"S2D matrix has {self.s2d.g} users, power allocation {self.alloc.g}")
            if self.chunks_per_symbol < 1:
                raise ConfigurationError("signal space does not fit in the carrier budget")

    @property
    def n_users(self) -> int:
        return self.alloc.g

    @property
    def layout(self) -> S2DMatrix:
        """Dimension layout actually transmitted; PD-NOMA puts everyone on one carrier's I/Q."""
        return self.s2d if self.s2d is not None else full_overlap(self.alloc.g)

    @property
    def chunks_per_symbol(self) -> int:
        return self.ofdm.chunks_per_symbol(self.layout.dim_count)

    @property
    def symbols_per_user(self) -> int:
        return self.n_symbols * self.chunks_per_symbol

    @property
    def bits_per_user(self) -> int:
        return self.symbols_per_user * self.constellation.bits_per_symbol


def user_frames(user_bits, cfg: LinkConfig) -> list[TimeFrame]:
    """Per-user OFDM frames before power weighting."""
    bits = np.asarray(user_bits, dtype=np.uint8)
    if bits.shape != (cfg.n_users, cfg.bits_per_user):
        raise InputShapeError(f"expected bits of shape {(cfg.n_users, cfg.bits_per_user)}, got {bits.shape}")
    layout = cfg.layout
    syms = np.stack([map_bits(b, cfg.constellation) for b in bits])
    syms = syms.reshape(cfg.n_users, cfg.n_symbols, cfg.chunks_per_symbol)
    dims = reconstruct(syms, layout)
    return [ofdm_modulate(assemble_grid(d, cfg.ofdm), cfg.ofdm) for d in dims]


def transmit(user_bits, cfg: LinkConfig) -> TimeFrame:
    """Bits -> symbols -> signal-space placement -> OFDM -> power-domain sum."""
    return superpose(user_frames(user_bits, cfg), cfg.alloc)
