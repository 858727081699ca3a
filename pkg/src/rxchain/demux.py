"""
Channel selection: down-conversion, band limiting and matched filtering.
"""

import logging

from src.errors import AliasingError
from src.sigkit import (
    DualPolSignal,
    bandlimit,
    frequency_shift,
    matched_filter,
    resample,
)
from src.txchain import SHAPING_SAMPLES_PER_SYMBOL, ModulationSpec, rrc_spec_for

logger = logging.getLogger('splitnlc.rxchain')


def demux_channel(
    signal: DualPolSignal, channel_offset: float, mod: ModulationSpec
) -> DualPolSignal:
    """
    Extract one channel at 2 samples per symbol.

    The channel is shifted to baseband by the same whole number of FFT bins
    the multiplexer used, cut to +/- symbol_rate, resampled to
    2 * symbol_rate and passed through the matched RRC filter. Symbol k lands
    on sample 2k.

    Args:
        signal: Received composite waveform
        channel_offset: Channel frequency relative to the optical carrier in Hz
        mod: Modulation of the channel

    Returns:
        Matched-filter output at 2 samples per symbol

    Raises:
        AliasingError: If the channel is not fully inside the signal band
    """
    digital = channel_offset - signal.center_offset
    half_band = mod.occupied_bandwidth / 2.0
    if abs(digital) + half_band > signal.sample_rate / 2.0:
        raise AliasingError(
            "channel lies outside the Nyquist band",
            {"channel_offset": channel_offset, "sample_rate": signal.sample_rate},
        )
    baseband = frequency_shift(signal, -digital, allow_wrap=True, snap_to_bin=True)
    baseband = bandlimit(baseband, -mod.symbol_rate, mod.symbol_rate)
    baseband = resample(baseband, SHAPING_SAMPLES_PER_SYMBOL * mod.symbol_rate)
    return matched_filter(baseband, rrc_spec_for(mod))


__all__ = ["demux_channel"]
