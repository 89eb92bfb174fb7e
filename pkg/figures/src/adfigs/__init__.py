"""Figure rendering for adpulse experiment CSVs."""

__version__ = "0.1.0"
