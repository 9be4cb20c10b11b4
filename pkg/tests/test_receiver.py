import itertools
import math

import numpy as np
import pytest

from pdsdcma.channel import ChannelSpec, awgn, make_rng
from pdsdcma.constellation import build_scheme, demap_hard
from pdsdcma.errors import ConfigurationError, InputShapeError
from pdsdcma.harness.presets import PRESETS
from pdsdcma.link import LinkConfig, Scheme, transmit
from pdsdcma.multiplex import PowerAllocation, normalize_powers
from pdsdcma.receiver import count_errors, receive, received_dimensions, sic_pdnoma, sic_pdsdcma
from pdsdcma.signal_space import S2DMatrix, circulant_s2d, project
from pdsdcma.waveform import OfdmParams, ofdm_demodulate


def random_bits(link, seed):
    return make_rng(seed).integers(0, 2, (link.n_users, link.bits_per_user), dtype=np.uint8)


@pytest.mark.parametrize("preset", sorted(PRESETS))
@pytest.mark.parametrize("scheme", list(Scheme))
def test_noiseless_recovery(preset, scheme):
    link = PRESETS[preset].link(scheme, n_symbols=20)
    bits = random_bits(link, 1)
    decided = receive(transmit(bits, link), link)
    assert all(np.array_equal(d, b) for d, b in zip(decided, bits))


def _qpsk_axis_margin(weights):
    # worst-case distance from user k's per-axis level to its decision threshold after perfect cancellation
    amps = np.sqrt(np.asarray(weights) / 2)
    return [amps[k] - amps[k + 1:].sum() for k in range(len(amps))]


def test_sdcma_stage_interference_inside_decision_regions():
    # enumerate every joint symbol of 5-user QPSK on the circulant strategy:
    # at each stage, the interference on the detected user's plane must stay
    # strictly inside the quadrant of its own point
    qpsk = build_scheme("qpsk")
    alloc = normalize_powers([256, 64, 16, 4, 1])
    s2d = circulant_s2d(5)
    for labels in itertools.product(range(4), repeat=5):
        syms = qpsk.points[list(labels)] * alloc.amplitudes
        vec = np.zeros(5)
        for (d_re, d_im), s in zip(s2d.rows, syms):
            vec[d_re - 1] += s.real
            vec[d_im - 1] += s.imag
        for k, row in enumerate(s2d.rows):
            z = project(vec, row)
            own = syms[k]
            assert np.sign(z.real) == np.sign(own.real) and np.sign(z.imag) == np.sign(own.imag)
            vec[row[0] - 1] -= own.real
            vec[row[1] - 1] -= own.imag


def test_user_one_plane_shows_eight_points():
    qpsk = build_scheme("qpsk")
    link = LinkConfig(Scheme.PD_SDCMA, qpsk, normalize_powers([16, 1]), OfdmParams(), 10, circulant_s2d(2))
    dims = received_dimensions(transmit(random_bits(link, 2), link), link)
    plane = project(dims, (1, 2)).ravel()
    assert len(set(np.round(plane, 9))) == 8


def test_single_user_is_plain_demap():
    qpsk = build_scheme("qpsk")
    for scheme, s2d in ((Scheme.PD_SDCMA, S2DMatrix.from_rows([[1, 2]])), (Scheme.PD_NOMA, None)):
        link = LinkConfig(scheme, qpsk, normalize_powers([1]), OfdmParams(), 4, s2d)
        bits = random_bits(link, 3)
        rx = awgn(transmit(bits, link).samples, ChannelSpec(5.0, 1))
        plain = demap_hard(ofdm_demodulate(rx, link.ofdm)[:, 1:257].ravel(), qpsk)
        assert np.array_equal(receive(rx, link)[0], plain)


def test_noma_two_user_composite_separable():
    qpsk = build_scheme("qpsk")
    alloc = PowerAllocation((0.8, 0.2))
    comp = [math.sqrt(0.8) * a + math.sqrt(0.2) * b for a in qpsk.points for b in qpsk.points]
    assert min(abs(a - b) for a, b in itertools.combinations(comp, 2)) > 0
    link = LinkConfig(Scheme.PD_NOMA, qpsk, alloc, OfdmParams(), 10)
    bits = random_bits(link, 4)
    decided = sic_pdnoma(transmit(bits, link), link)
    assert [count_errors(d, b)[0] for d, b in zip(decided, bits)] == [0, 0]


def test_noma_five_user_med_by_enumeration():
    qpsk = build_scheme("qpsk")
    amps = np.sqrt(np.array([256, 64, 16, 4, 1]) / 341)
    comp = np.array([sum(a * qpsk.points[k] for a, k in zip(amps, ks))
                     for ks in itertools.product(range(4), repeat=5)])
    assert len(comp) == 1024
    d = np.abs(comp[:, None] - comp[None, :])
    med = d[~np.eye(1024, dtype=bool)].min()
    assert med == pytest.approx(2 / math.sqrt(682), rel=1e-9)
    assert min(_qpsk_axis_margin(amps ** 2)) == pytest.approx(1 / math.sqrt(682), rel=1e-9)


def test_count_errors():
    b = np.array([0, 1, 1, 0, 1], dtype=np.uint8)
    assert count_errors(b, b) == (0, 5)
    assert count_errors(1 - b, b) == (5, 5)
    flipped = b.copy()
    flipped[2] ^= 1
    assert count_errors(flipped, b) == (1, 5)
    with pytest.raises(InputShapeError):
        count_errors(b[:4], b)


def test_scheme_mismatch_and_bad_length():
    sd = PRESETS["3u-qpsk"].link(Scheme.PD_SDCMA, n_symbols=2)
    no = PRESETS["3u-qpsk"].link(Scheme.PD_NOMA, n_symbols=2)
    frame = transmit(random_bits(sd, 5), sd)
    with pytest.raises(ConfigurationError):
        sic_pdnoma(frame, sd)
    with pytest.raises(ConfigurationError):
        sic_pdsdcma(frame, no)
    with pytest.raises(InputShapeError):
        sic_pdsdcma(frame.samples[:-1], sd)
    with pytest.raises(InputShapeError):
        sic_pdnoma(np.zeros(576, dtype=complex), no)


@pytest.mark.parametrize("scheme", list(Scheme))
@pytest.mark.parametrize("scale", [1e-3, 0.37, 42.0])
def test_decisions_invariant_to_scaling(scheme, scale):
    link = PRESETS["3u-qpsk"].link(scheme, n_symbols=10)
    rx = awgn(transmit(random_bits(link, 6), link).samples, ChannelSpec(12.0, 3))
    base = receive(rx, link)
    scaled = receive(scale * rx, link, amplitude=scale)
    assert all(np.array_equal(a, b) for a, b in zip(base, scaled))


def test_sdcma_beats_noma_at_20db_two_user_16qam():
    ber = {}
    for scheme in Scheme:
        link = PRESETS["2u-16qam"].link(scheme, n_symbols=200)
        bits = random_bits(link, 7)
        rx = awgn(transmit(bits, link).samples, ChannelSpec(20.0, 8))
        ber[scheme] = [count_errors(d, b)[0] / b.size for d, b in zip(receive(rx, link), bits)]
    assert all(s < n for s, n in zip(ber[Scheme.PD_SDCMA], ber[Scheme.PD_NOMA])), ber


def test_link_config_consistency():
    qpsk = build_scheme("qpsk")
    with pytest.raises(ConfigurationError):
        LinkConfig(Scheme.PD_SDCMA, qpsk, normalize_powers([4, 1]))
    with pytest.raises(ConfigurationError):
        LinkConfig(Scheme.PD_NOMA, qpsk, normalize_powers([4, 1]), s2d=circulant_s2d(2))
    with pytest.raises(ConfigurationError):
        LinkConfig(Scheme.PD_SDCMA, qpsk, normalize_powers([4, 1]), s2d=circulant_s2d(3))
