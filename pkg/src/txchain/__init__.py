"""
Transmitter chain for the pilot-framed DP-QAM superchannel.

This package contains:
- QAM: Gray square-QAM mapping and hard-decision demapping
- Framing: QPSK preamble and periodic pilots around QAM payload data
- Modulator: RRC shaping and laser phase noise
- Superchannel: WDM grid multiplexing and per-slot transmitter noise
- Noise: calibrated AWGN loading
"""

from src.txchain.framing import QPSK_POINTS, ModulationSpec, TxFrame, build_frame
from src.txchain.modulator import (
    SHAPING_SAMPLES_PER_SYMBOL,
    LaserSpec,
    apply_laser,
    laser_phase,
    modulate_channel,
    rrc_spec_for,
)
from src.txchain.noise import apply_awgn, check_snr_db, noise_psd_per_pol
from src.txchain.qam import (
    SUPPORTED_ORDERS,
    bits_per_symbol,
    constellation,
    demap_qam,
    map_qam,
)
from src.txchain.superchannel import (
    SuperchannelSpec,
    apply_tx_noise,
    composite_sample_rate,
    generate_superchannel,
    mux_superchannel,
)

__all__ = [
    # Types
    'ModulationSpec',
    'TxFrame',
    'LaserSpec',
    'SuperchannelSpec',
    # Operations
    'map_qam',
    'demap_qam',
    'build_frame',
    'modulate_channel',
    'apply_laser',
    'mux_superchannel',
    'apply_awgn',
    'apply_tx_noise',
    'generate_superchannel',
    'composite_sample_rate',
    # Helpers
    'constellation',
    'bits_per_symbol',
    'laser_phase',
    'rrc_spec_for',
    'SHAPING_SAMPLES_PER_SYMBOL',
    'noise_psd_per_pol',
    'check_snr_db',
    'QPSK_POINTS',
    'SUPPORTED_ORDERS',
]
