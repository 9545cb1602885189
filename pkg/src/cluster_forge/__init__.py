"""Exact-arithmetic toolkit for seed mutation with coefficients, mutation
invariants, g-vector fan enumeration, and toric-degeneration verification."""

__version__ = "0.1.0"
