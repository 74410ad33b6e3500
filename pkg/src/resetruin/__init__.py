"""Gambler's ruin under multi-site geometric resetting."""

__version__ = "0.1.0"
