"""Fast self-checks run by ``pdsdcma validate``."""

from __future__ import annotations

import math
import time

import numpy as np

from ..channel import make_rng
from ..constellation import build_scheme, demap_hard, map_bits
from ..link import LinkConfig, Scheme
from ..multiplex import normalize_powers, superpose
from ..signal_space import S2DMatrix, distinct_points, full_overlap, minimum_distance, superposed_points
from ..waveform import OfdmParams, ofdm_demodulate, ofdm_modulate
from .presets import PRESETS
from .sim import SimConfig, run_point


def qpsk_ber_theory(snr_db: float, params: OfdmParams = OfdmParams(), occupied: int | None = None) -> float:
    """Gray QPSK BER for a single user under the composite per-sample SNR convention.

    With ``K`` of ``N`` bins occupied the per-carrier Es/N0 is ``snr * N / K``.
    """
    k = params.n_carriers if occupied is None else occupied
    es_n0 = 10 ** (snr_db / 10) * params.n_fft / k
    return 0.5 * math.erfc(math.sqrt(es_n0 / 2))


def check_constellations() -> str:
    rng = make_rng(1)
    for name in ("qpsk", "16qam"):
        s = build_scheme(name)
        assert abs(np.mean(np.abs(s.points) ** 2) - 1) < 1e-12, f"{name} energy"
        bits = rng.integers(0, 2, 4000 * s.bits_per_symbol, dtype=np.uint8)
        assert np.array_equal(demap_hard(map_bits(bits, s), s), bits), f"{name} round trip"
        d = np.abs(s.points[:, None] - s.points[None, :])
        for a, b in zip(*np.nonzero(np.isclose(d, s.min_distance))):
            assert bin(int(a) ^ int(b)).count("1") == 1, f"{name} Gray labels {a}, {b}"
    return "unit energy, round trip, Gray adjacency"


def check_ofdm() -> str:
    p = OfdmParams()
    rng = make_rng(2)
    x = rng.standard_normal((20, p.n_fft)) + 1j * rng.standard_normal((20, p.n_fft))
    frame = ofdm_modulate(x, p)
    err = np.max(np.abs(ofdm_demodulate(frame, p) - x)) / np.max(np.abs(x))
    assert err < 1e-10, f"round trip error {err:.2e}"
    sym = frame.samples.reshape(-1, p.symbol_len)
    assert np.array_equal(sym[:, :p.cp_len], sym[:, -p.cp_len:]), "cyclic prefix"
    y = rng.standard_normal((20, p.n_fft)) + 1j * rng.standard_normal((20, p.n_fft))
    lhs = ofdm_modulate(0.7 * x - 1.3 * y, p).samples
    rhs = 0.7 * frame.samples - 1.3 * ofdm_modulate(y, p).samples
    assert np.max(np.abs(lhs - rhs)) < 1e-12, "linearity"
    alloc = normalize_powers([4, 1])
    z = superpose([frame, frame], alloc).samples
    assert np.allclose(z, (math.sqrt(0.8) + math.sqrt(0.2)) * frame.samples, atol=1e-12), "superposition"
    return f"round trip {err:.1e}, CP exact, linear"


def check_geometry() -> str:
    qpsk = build_scheme("qpsk")
    s2d = S2DMatrix.from_rows([[1, 2], [2, 3]])
    joint = superposed_points(qpsk, normalize_powers([16, 1]), s2d)
    n3d = len(distinct_points(joint))
    n_plane = len(distinct_points(np.column_stack([joint[:, 0], joint[:, 1]])))
    assert (n3d, n_plane) == (16, 8), f"joint constellation {n3d} / {n_plane} points"
    med3 = minimum_distance(superposed_points(qpsk, normalize_powers([16, 4, 1]), full_overlap(3)))
    med5 = minimum_distance(superposed_points(qpsk, normalize_powers([256, 64, 16, 4, 1]), full_overlap(5)))
    assert med5 < med3, "MED does not shrink with more users"
    return f"16 -> 8 points; NOMA MED 3u {med3:.4f} > 5u {med5:.4f}"


def check_noiseless() -> str:
    for name, preset in PRESETS.items():
        for scheme in Scheme:
            cfg = SimConfig(preset.link(scheme, n_symbols=100), 300, 300, 1, trials=1)
            bad = [r for r in run_point(cfg, 300.0) if r.errors]
            assert not bad, f"{name} {scheme.value}: errors at 300 dB"
    return "all presets, both schemes, BER 0 at 300 dB"


def check_calibration(snrs=(0.0, 3.0, 6.0), n_symbols: int = 1000) -> str:
    single = LinkConfig(Scheme.PD_NOMA, build_scheme("qpsk"), normalize_powers([1]), OfdmParams(), n_symbols)
    cfg = SimConfig(single, 0, 0, 1, trials=1, seed=7, early_stop_errors=None)
    parts = []
    for snr in snrs:
        (rec,) = run_point(cfg, snr)
        ref = qpsk_ber_theory(snr, single.ofdm)
        z = (rec.ber - ref) / math.sqrt(ref * (1 - ref) / rec.bits)
        assert abs(z) < 3, f"{snr} dB: BER {rec.ber:.3e} vs {ref:.3e} ({z:+.1f} SE)"
        parts.append(f"{snr:g} dB {z:+.1f} SE")
    return ", ".join(parts)


CHECKS = (
    ("constellations", check_constellations),
    ("ofdm", check_ofdm),
    ("geometry", check_geometry),
    ("noiseless", check_noiseless),
    ("calibration", check_calibration),
)


def run_validation(echo=print) -> bool:
    ok = True
    for name, fn in CHECKS:
        t = time.perf_counter()
        try:
            detail = fn()
            status = "PASS"
        except AssertionError as exc:
            detail, status, ok = str(exc), "FAIL", False
        echo(f"{status} {name:<15} {time.perf_counter() - t:6.2f}s  {detail}")
    return ok
