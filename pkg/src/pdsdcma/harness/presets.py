"""Named scenarios: constellation, dimension strategy and power ratios per user count."""

from __future__ import annotations

from dataclasses import dataclass

from ..constellation import build_scheme
from ..errors import ConfigurationError
from ..link import LinkConfig, Scheme
from ..multiplex import normalize_powers
from ..signal_space import S2DMatrix
from ..waveform import OfdmParams


@dataclass(frozen=True)
class Scenario:
    name: str
    constellation: str
    s2d_rows: tuple[tuple[int, int], ...]
    power_ratios: tuple[float, ...]

    @property
    def n_users(self) -> int:
        return len(self.power_ratios)

    def link(self, scheme: Scheme, ofdm: OfdmParams = OfdmParams(), n_symbols: int = 1000) -> LinkConfig:
        s2d = S2DMatrix.from_rows(self.s2d_rows) if scheme is Scheme.PD_SDCMA else None
        return LinkConfig(scheme, build_scheme(self.constellation), normalize_powers(self.power_ratios),
                          ofdm, n_symbols, s2d)


PRESETS = {
    s.name: s
    for s in (
        Scenario("2u-16qam", "16qam", ((1, 2), (2, 3)), (16, 1)),
        Scenario("3u-qpsk", "qpsk", ((1, 2), (2, 3), (3, 1)), (16, 4, 1)),
        Scenario("5u-qpsk", "qpsk", ((1, 2), (2, 3), (3, 4), (4, 5), (5, 1)), (256, 64, 16, 4, 1)),
    )
}


def get_preset(name: str) -> Scenario:
    try:
        return PRESETS[name.strip().lower()]
    except KeyError:
        raise ConfigurationError(f"unknown scenario {name!r}; choose from {', '.join(PRESETS)}") from None
