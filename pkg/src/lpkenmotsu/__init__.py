"""Exact frame-based verification of LP-Kenmotsu structures and Ricci-Yamabe solitons."""

__version__ = "0.1.0"
