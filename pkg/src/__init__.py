"""
Split-NLC Lab - waveform-level simulation of coherent WDM transmission with
digital backpropagation split between transmitter and receiver.

This package contains:
- sigkit: dual-polarization waveforms, spectral tools, RRC filters, seeding
- txchain: QAM framing with pilots, modulation, lasers, WDM multiplexing
- fiberchannel: Manakov SSFM, EDFA ASE, multi-span links
- nlc: split plans, Tx/Rx digital backpropagation and EDC
- rxchain: coherent front end, demux, sync, pilot CPE, SNR estimation
- analytic: calibrated first-order SNR budget and crossover distance
- labharness: experiment config, sweeps, calibration, figure series
- infrastructure: logging and result persistence
"""

__version__ = "0.1.0"
