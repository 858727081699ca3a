"""
Test suite for the split-NLC lab.

This package contains:
- Unit tests for every simulator stage (sigkit through labharness)
- Physics oracles: dispersion, self-phase modulation, ASE bookkeeping and
  backpropagation reversibility
- CLI, persistence and logging tests
- Slow desk-scale trend reproductions (marked `slow`)
"""
