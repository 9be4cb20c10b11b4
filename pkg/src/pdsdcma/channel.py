"""AWGN channel and the random streams that feed it.

SNR is composite transmitted power (cyclic prefix included) over complex
noise power, both per time-domain sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, InputShapeError


@dataclass(frozen=True)
class ChannelSpec:
    snr_db: float
    seed: int = 0

    def __post_init__(self):
        if not math.isfinite(self.snr_db):
            raise ConfigurationError(f"snr_db must be finite, got {self.snr_db}")


def make_rng(master_seed: int, *key: int) -> np.random.Generator:
    """Counter-based (Philox) generator for the stream named by ``(master_seed, *key)``.

    Distinct keys give statistically independent streams, so trials can run
    in any order or in parallel.
    """
    ss = np.random.SeedSequence(int(master_seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def measure_power(samples) -> float:
    x = np.asarray(samples)
    if x.size == 0:
        raise InputShapeError("cannot measure the power of an empty signal")
    return float(np.mean(x.real ** 2 + x.imag ** 2))


def noise_variance(signal_power: float, snr_db: float) -> float:
    return signal_power / 10.0 ** (snr_db / 10.0)


def awgn(samples, spec: ChannelSpec, rng: np.random.Generator | None = None) -> np.ndarray:
    """Add circularly-symmetric complex Gaussian noise at ``spec.snr_db``.

    Without an explicit ``rng`` the noise is drawn from ``make_rng(spec.seed)``.
    """
    x = np.asarray(samples, dtype=complex)
    sigma2 = noise_variance(measure_power(x), spec.snr_db)
    if rng is None:
        rng = make_rng(spec.seed)
    noise = rng.standard_normal((2,) + x.shape)
    return x + math.sqrt(sigma2 / 2) * (noise[0] + 1j * noise[1])
