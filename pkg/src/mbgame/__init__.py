"""Biased Maker-Breaker games on K_n: engine, strategies, detectors and harness."""

__version__ = "0.1.0"
