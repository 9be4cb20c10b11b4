"""Monte Carlo BER estimation over an SNR grid."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..channel import ChannelSpec, awgn, make_rng
from ..errors import ConfigurationError
from ..link import LinkConfig, transmit
from ..receiver import count_errors, receive

# keeps the stream key non-negative for negative SNRs
_SNR_KEY_OFFSET = 1 << 31


@dataclass(frozen=True)
class SimConfig:
    link: LinkConfig
    snr_start: float = 0.0
    snr_stop: float = 40.0
    snr_step: float = 1.0
    trials: int = 10
    seed: int = 0
    early_stop_errors: int | None = 200
    csv_path: str | None = None
    svg_path: str | None = None

    def __post_init__(self):
        if not self.snr_step > 0:
            raise ConfigurationError(f"snr_step must be > 0, got {self.snr_step}")
        if self.trials < 1:
            raise ConfigurationError(f"trials must be >= 1, got {self.trials}")
        if self.snr_stop < self.snr_start:
            raise ConfigurationError(f"empty SNR grid: stop {self.snr_stop} < start {self.snr_start}")
        if self.early_stop_errors is not None and self.early_stop_errors < 1:
            raise ConfigurationError("early_stop_errors must be positive or None")

    @property
    def snr_grid(self) -> list[float]:
        n = int(math.floor((self.snr_stop - self.snr_start) / self.snr_step + 1e-9)) + 1
        return [round(self.snr_start + k * self.snr_step, 9) for k in range(n)]


@dataclass(frozen=True)
class BerRecord:
    scheme: str
    user: int
    snr_db: float
    errors: int
    bits: int
    trials: int
    seed: int
    ber: float = field(init=False)

    def __post_init__(self):
        if self.bits <= 0 or not 0 <= self.errors <= self.bits:
            raise ValueError(f"inconsistent counts: {self.errors} errors in {self.bits} bits")
        object.__setattr__(self, "ber", self.errors / self.bits)

    @property
    def std_error(self) -> float:
        return math.sqrt(self.ber * (1 - self.ber) / self.bits)


def snr_key(snr_db: float) -> int:
    """Stream key for an SNR point, in milli-dB, independent of the surrounding grid."""
    return int(round(snr_db * 1000)) + _SNR_KEY_OFFSET


def run_trial(link: LinkConfig, snr_db: float, rng: np.random.Generator) -> list[tuple[int, int]]:
    bits = rng.integers(0, 2, size=(link.n_users, link.bits_per_user), dtype=np.uint8)
    tx = transmit(bits, link)
    rx = awgn(tx.samples, ChannelSpec(snr_db), rng)
    return [count_errors(d, t) for d, t in zip(receive(rx, link), bits)]


def run_point(cfg: SimConfig, snr_db: float) -> list[BerRecord]:
    """BER of every user at one SNR, over up to ``cfg.trials`` independent trials.

    Stops early once every user has at least ``cfg.early_stop_errors`` errors.
    """
    link = cfg.link
    errors = np.zeros(link.n_users, dtype=np.int64)
    bits = np.zeros(link.n_users, dtype=np.int64)
    done = 0
    for trial in range(cfg.trials):
        rng = make_rng(cfg.seed, link.scheme.stream_id, snr_key(snr_db), trial)
        for u, (e, n) in enumerate(run_trial(link, snr_db, rng)):
            errors[u] += e
            bits[u] += n
        done += 1
        if cfg.early_stop_errors is not None and errors.min() >= cfg.early_stop_errors:
            break
    return [BerRecord(link.scheme.value, u + 1, float(snr_db), int(errors[u]), int(bits[u]), done, cfg.seed)
            for u in range(link.n_users)]


def sweep(cfg: SimConfig, progress=None) -> list[BerRecord]:
    """``run_point`` over the whole SNR grid, sorted by (user, snr)."""
    grid = cfg.snr_grid
    if not grid:
        raise ConfigurationError("empty SNR grid")
    records = []
    for snr in grid:
        point = run_point(cfg, snr)
        records.extend(point)
        if progress is not None:
            progress(point)
    return sorted(records, key=lambda r: (r.user, r.snr_db))


class BerTargetNotReached(Exception):
    """The target BER is not bracketed by the measured points."""

    def __init__(self, user: int, target: float, boundary_ber: float, boundary_snr: float):
        self.user = user
        self.target = target
        self.boundary_ber = boundary_ber
        self.boundary_snr = boundary_snr
        super().__init__(f"user {user}: BER {target:g} not bracketed "
                         f"(boundary BER {boundary_ber:g} at {boundary_snr:g} dB)")


def snr_at_ber(records, user: int, target_ber: float = 1e-3, scheme: str | None = None) -> float:
    """SNR at which a user's BER crosses ``target_ber``.

    Interpolates log10(BER) linearly in dB between the last point above the
    target and the first point at or below it.  A zero-error point stands in
    as half an error over its bit count so the logarithm stays finite.
    """
    pts = sorted((r.snr_db, r.ber if r.errors else 0.5 / r.bits)
                 for r in records if r.user == user and (scheme is None or r.scheme == scheme))
    if not pts:
        raise ConfigurationError(f"no records for user {user}")
    if pts[0][1] <= target_ber:
        raise BerTargetNotReached(user, target_ber, pts[0][1], pts[0][0])
    for (s0, b0), (s1, b1) in zip(pts, pts[1:]):
        if b1 <= target_ber < b0:
            frac = (math.log10(b0) - math.log10(target_ber)) / (math.log10(b0) - math.log10(b1))
            return s0 + frac * (s1 - s0)
    raise BerTargetNotReached(user, target_ber, pts[-1][1], pts[-1][0])
