import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pdsdcma.constellation import build_scheme, demap_hard, demap_labels, map_bits
from pdsdcma.errors import ConfigurationError, InputShapeError

SCHEMES = ["qpsk", "16qam"]


def test_qpsk_unnormalized_alphabet_is_pm1():
    s = build_scheme("qpsk")
    raw = s.points * math.sqrt(2)
    assert set(np.round(raw.real, 12)) == {-1.0, 1.0}
    assert set(np.round(raw.imag, 12)) == {-1.0, 1.0}
    assert len(s.points) == 4


def test_qpsk_label_00_has_unit_energy():
    s = build_scheme("qpsk")
    p = s.points[0]
    assert abs(abs(p.real) - 1 / math.sqrt(2)) < 1e-15
    assert abs(abs(p.imag) - 1 / math.sqrt(2)) < 1e-15
    assert abs(abs(p) ** 2 - 1) < 1e-15


def test_16qam_energy_by_enumeration():
    raw = [complex(a, b) for a, b in itertools.product((-3, -1, 1, 3), repeat=2)]
    assert np.mean([abs(z) ** 2 for z in raw]) == 10.0
    s = build_scheme("16qam")
    assert abs(np.mean(np.abs(s.points) ** 2) - 1.0) < 1e-12
    levels = sorted(set(np.round(s.points.real * math.sqrt(10), 12)))
    assert levels == [-3.0, -1.0, 1.0, 3.0]


@pytest.mark.parametrize("name", SCHEMES)
def test_scheme_invariants(name):
    s = build_scheme(name)
    assert len(s.points) == 2 ** s.bits_per_symbol
    assert len({tuple(lbl) for lbl, _ in s.pairs}) == len(s.points)
    assert len(set(np.round(s.points, 12))) == len(s.points)
    assert abs(np.mean(np.abs(s.points) ** 2) - 1.0) < 1e-12


@pytest.mark.parametrize("name", SCHEMES)
def test_gray_adjacency(name):
    s = build_scheme(name)
    dmin = min(abs(a - b) for a, b in itertools.combinations(s.points, 2))
    n_pairs = 0
    for (la, pa), (lb, pb) in itertools.combinations(s.pairs, 2):
        if abs(abs(pa - pb) - dmin) < 1e-9:
            n_pairs += 1
            assert sum(x != y for x, y in zip(la, lb)) == 1
    # square grid of side m has 2 m (m - 1) nearest-neighbour pairs
    m = int(math.isqrt(len(s.points)))
    assert n_pairs == 2 * m * (m - 1)


def test_unknown_scheme():
    with pytest.raises(ConfigurationError):
        build_scheme("8psk")


def test_names_are_case_insensitive():
    assert build_scheme("QPSK").bits_per_symbol == 2
    assert build_scheme("QAM16").bits_per_symbol == 4


def test_map_bits_qpsk_first_symbol_is_label_00():
    s = build_scheme("qpsk")
    out = map_bits([0, 0, 1, 1], s)
    assert out.shape == (2,)
    assert out[0] == s.points[0]
    assert out[1] == s.points[3]


def test_map_bits_16qam_energy_in_allowed_set():
    s = build_scheme("16qam")
    allowed = {a * a + b * b for a, b in itertools.product((1, 3), repeat=2)}
    assert sorted(allowed) == [2, 10, 18]
    rng = np.random.default_rng(3)
    for _ in range(20):
        (sym,) = map_bits(rng.integers(0, 2, 4), s)
        assert min(abs(abs(sym) ** 2 - e / 10) for e in allowed) < 1e-12


def test_map_bits_empty():
    assert map_bits([], build_scheme("16qam")).size == 0
    assert demap_hard(np.array([], dtype=complex), build_scheme("16qam")).size == 0


def test_map_bits_bad_length():
    with pytest.raises(InputShapeError):
        map_bits([0, 1, 1], build_scheme("qpsk"))


@pytest.mark.parametrize("name", SCHEMES)
def test_exact_points_demap_to_own_label(name):
    s = build_scheme(name)
    assert np.array_equal(demap_labels(s.points, s), np.arange(len(s.points)))


def test_demap_tie_goes_to_smallest_label():
    s = build_scheme("qpsk")
    # origin is equidistant from all four points
    assert demap_labels([0j], s)[0] == 0
    # midpoint between labels 0 and 1
    assert demap_labels([(s.points[0] + s.points[1]) / 2], s)[0] == 0


@pytest.mark.parametrize("name", SCHEMES)
@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_round_trip(name, data):
    s = build_scheme(name)
    n = data.draw(st.integers(0, 64))
    bits = data.draw(st.lists(st.integers(0, 1), min_size=n * s.bits_per_symbol, max_size=n * s.bits_per_symbol))
    assert demap_hard(map_bits(bits, s), s).tolist() == bits


@settings(max_examples=200, deadline=None)
@given(label=st.integers(0, 3),
       dx=st.floats(-0.7, 0.7), dy=st.floats(-0.7, 0.7))
def test_qpsk_decision_regions_are_quadrants(label, dx, dy):
    s = build_scheme("qpsk")
    eps = 1e-6
    half = 1 / math.sqrt(2) - eps
    dx, dy = max(-half, min(half, dx)), max(-half, min(half, dy))
    assert demap_labels([s.points[label] + complex(dx, dy)], s)[0] == label


@pytest.mark.parametrize("name", SCHEMES)
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_demap_invariant_inside_decision_region(name, data):
    s = build_scheme(name)
    label = data.draw(st.integers(0, len(s.points) - 1))
    # any perturbation shorter than half the minimum distance stays in the Voronoi cell
    r = data.draw(st.floats(0, 0.499)) * s.min_distance
    theta = data.draw(st.floats(0, 2 * math.pi))
    z = s.points[label] + r * complex(math.cos(theta), math.sin(theta))
    assert demap_labels([z], s)[0] == label
