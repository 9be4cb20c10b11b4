"""``key = value`` scenario files.

Values are Python literals (numbers, strings, bracketed lists such as
``s2d = [[1,2],[2,3],[3,1]]``); anything that does not parse as a literal
is kept as a bare string.  ``#`` starts a comment.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from pathlib import Path

from ..constellation import build_scheme
from ..errors import ConfigurationError
from ..link import LinkConfig, Scheme
from ..multiplex import normalize_powers
from ..signal_space import S2DMatrix, circulant_s2d
from ..waveform import OfdmParams
from .presets import get_preset

KNOWN_KEYS = {
    "scenario", "scheme", "constellation", "users", "s2d", "powers",
    "n_fft", "n_carriers", "cp_fraction", "n_symbols", "symbols", "trials", "seed",
    "snr_start", "snr_stop", "snr_step", "early_stop_errors", "csv", "svg",
}


def parse_config_text(text: str) -> dict:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected key = value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lower().replace("-", "_")
        if key not in KNOWN_KEYS:
            raise ConfigurationError(f"line {lineno}: unknown key {key!r}")
        try:
            values[key] = ast.literal_eval(value)
        except (ValueError, SyntaxError):
            values[key] = value.strip("\"'")
    if "symbols" in values:
        values.setdefault("n_symbols", values.pop("symbols"))
    return values


def load_config(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text)


@dataclass(frozen=True)
class LinkSpec:
    """Everything needed to build a :class:`LinkConfig` for either scheme."""

    constellation: str
    powers: tuple[float, ...]
    s2d: S2DMatrix
    ofdm: OfdmParams = OfdmParams()
    n_symbols: int = 1000

    def link(self, scheme: Scheme) -> LinkConfig:
        s2d = self.s2d if scheme is Scheme.PD_SDCMA else None
        return LinkConfig(scheme, build_scheme(self.constellation), normalize_powers(self.powers),
                          self.ofdm, self.n_symbols, s2d)


def link_spec_from_values(values: dict) -> LinkSpec:
    """Resolve preset defaults and explicit keys into a :class:`LinkSpec`."""
    if "scenario" in values:
        base = get_preset(str(values["scenario"]))
        constellation, powers, rows = base.constellation, base.power_ratios, base.s2d_rows
    else:
        constellation, powers, rows = "qpsk", None, None
    constellation = str(values.get("constellation", constellation))
    powers = values.get("powers", powers)
    if powers is None:
        raise ConfigurationError("no power ratios given (set 'powers' or 'scenario')")
    if not isinstance(powers, (list, tuple)):
        raise ConfigurationError(f"powers must be a list, got {powers!r}")
    users = values.get("users", len(powers))
    if users != len(powers):
        raise ConfigurationError(f"users = {users} but {len(powers)} power ratios given")
    normalize_powers(powers)
    if "s2d" in values:
        s2d = S2DMatrix.from_rows(values["s2d"])
    elif rows is not None and "powers" not in values:
        s2d = S2DMatrix.from_rows(rows)
    else:
        s2d = circulant_s2d(len(powers))
    try:
        ofdm = OfdmParams(int(values.get("n_fft", 512)), int(values.get("n_carriers", 256)),
                          float(values.get("cp_fraction", 0.125)))
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(str(exc)) from exc
    return LinkSpec(constellation, tuple(float(p) for p in powers), s2d, ofdm, int(values.get("n_symbols", 1000)))
