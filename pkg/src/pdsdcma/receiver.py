"""Hard-decision successive interference cancellation for both schemes."""

from __future__ import annotations

import numpy as np

from .constellation import demap_labels, labels_to_bits
from .errors import ConfigurationError, InputShapeError
from .link import LinkConfig, Scheme
from .signal_space import project
from .waveform import TimeFrame, extract_dim_grid, ofdm_demodulate


def _check_frame(received: TimeFrame | np.ndarray, cfg: LinkConfig) -> np.ndarray:
    samples = received.samples if isinstance(received, TimeFrame) else np.asarray(received, dtype=complex)
    expected = cfg.n_symbols * cfg.ofdm.symbol_len
    if samples.shape != (expected,):
        raise InputShapeError(f"expected {expected} samples, got shape {samples.shape}")
    return samples


def received_dimensions(received, cfg: LinkConfig, amplitude: float = 1.0) -> np.ndarray:
    """Demodulated ``(n_symbols, chunks, D)`` grid, divided by the known receive amplitude."""
    samples = _check_frame(received, cfg)
    grid = ofdm_demodulate(samples, cfg.ofdm)
    return extract_dim_grid(grid, cfg.layout.dim_count, cfg.ofdm) / amplitude


def sic_pdsdcma(received, cfg: LinkConfig, amplitude: float = 1.0) -> list[np.ndarray]:
    """Project onto each user's plane, strongest first, cancelling decided symbols.

    Cancellation touches only the cancelled user's two dimensions; the
    residual after the last user is discarded.
    """
    if cfg.scheme is not Scheme.PD_SDCMA:
        raise ConfigurationError("sic_pdsdcma needs a PD-SDCMA link")
    residual = received_dimensions(received, cfg, amplitude)
    pts = cfg.constellation.points
    out = []
    for i, (row, amp) in enumerate(zip(cfg.s2d.rows, cfg.alloc.amplitudes)):
        labels = demap_labels(project(residual, row) / amp, cfg.constellation)
        out.append(labels_to_bits(labels, cfg.constellation.bits_per_symbol))
        if i < cfg.n_users - 1:
            decided = amp * pts[labels].reshape(residual.shape[:-1])
            residual[..., row[0] - 1] -= decided.real
            residual[..., row[1] - 1] -= decided.imag
    return out


def sic_pdnoma(received, cfg: LinkConfig, amplitude: float = 1.0) -> list[np.ndarray]:
    """Per-carrier SIC over the full superposed constellation."""
    if cfg.scheme is not Scheme.PD_NOMA:
        raise ConfigurationError("sic_pdnoma needs a PD-NOMA link")
    samples = _check_frame(received, cfg)
    grid = ofdm_demodulate(samples, cfg.ofdm)
    residual = grid[:, 1:1 + cfg.chunks_per_symbol].ravel() / amplitude
    pts = cfg.constellation.points
    out = []
    for i, amp in enumerate(cfg.alloc.amplitudes):
        labels = demap_labels(residual / amp, cfg.constellation)
        out.append(labels_to_bits(labels, cfg.constellation.bits_per_symbol))
        if i < cfg.n_users - 1:
            residual = residual - amp * pts[labels]
    return out


def receive(received, cfg: LinkConfig, amplitude: float = 1.0) -> list[np.ndarray]:
    if cfg.scheme is Scheme.PD_SDCMA:
        return sic_pdsdcma(received, cfg, amplitude)
    return sic_pdnoma(received, cfg, amplitude)


def count_errors(decided, truth) -> tuple[int, int]:
    """(Hamming distance, length)."""
    a = np.asarray(decided).ravel()
    b = np.asarray(truth).ravel()
    if a.shape != b.shape:
        raise InputShapeError(f"decided has {a.size} bits, truth has {b.size}")
    return int(np.count_nonzero(a != b)), int(a.size)
