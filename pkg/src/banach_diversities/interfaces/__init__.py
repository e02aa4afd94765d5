"""Provides the Command-Line Interface (CLI) exposed by installing this library."""

from .cli import RoundTripEntry, RoundTripReport, cli, main, load_point_set, roundtrip_verify

__all__ = ["RoundTripEntry", "RoundTripReport", "cli", "load_point_set", "main", "roundtrip_verify"]
