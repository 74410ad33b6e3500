"""Verification reports, figure data sweeps and the command-line interface."""
