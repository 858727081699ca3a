"""
Coherent receiver and pilot-aided DSP.

This package contains:
- Front end: LO phase noise and receiver AWGN (with the edge-channel penalty)
- Demux: channel down-conversion and matched filtering
- Sync: preamble correlation with polarization-swap resolution
- CPE: pilot phase tracking and residual frequency offset removal
- SNR: least-squares data-aided SNR and hard-decision BER
- Receiver: the composed per-channel chain
"""

from src.rxchain.cpe import DEFAULT_HALF_WINDOW, CpeResult, pilot_cpe
from src.rxchain.demux import demux_channel
from src.rxchain.frontend import TrxNoiseSpec, coherent_front_end, edge_noise_snr_db
from src.rxchain.receiver import RxResult, receive_channel
from src.rxchain.snr import (
    MIN_ACCURATE_SYMBOLS,
    SNR_CAP_DB,
    SnrEstimate,
    bit_error_ratio,
    estimate_snr,
)
from src.rxchain.sync import DEFAULT_SYNC_THRESHOLD, SyncResult, synchronize

__all__ = [
    # Types
    'TrxNoiseSpec',
    'RxResult',
    'SyncResult',
    'CpeResult',
    'SnrEstimate',
    # Operations
    'coherent_front_end',
    'demux_channel',
    'synchronize',
    'pilot_cpe',
    'estimate_snr',
    'receive_channel',
    # Helpers
    'bit_error_ratio',
    'edge_noise_snr_db',
    'SNR_CAP_DB',
    'MIN_ACCURATE_SYMBOLS',
    'DEFAULT_HALF_WINDOW',
    'DEFAULT_SYNC_THRESHOLD',
]
