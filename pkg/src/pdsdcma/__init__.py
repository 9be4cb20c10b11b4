"""Link-level simulation of power-domain sparse-dimensional constellation multiple access."""

from .channel import ChannelSpec, awgn, make_rng, measure_power
from .constellation import ConstellationScheme, build_scheme, demap_hard, map_bits
from .errors import ConfigurationError, InputShapeError
from .link import LinkConfig, Scheme, transmit
from .multiplex import PowerAllocation, normalize_powers, superpose
from .receiver import count_errors, receive, sic_pdnoma, sic_pdsdcma
from .signal_space import (S2DMatrix, carrier_orthogonality_check, circulant_s2d, dim_to_carrier_component,
                           project, reconstruct)
from .waveform import (OfdmParams, TimeFrame, assemble_grid, extract_dim_grid, ofdm_demodulate,
                       ofdm_modulate)

__version__ = "0.1.0"
