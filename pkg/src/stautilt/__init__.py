"""Enumerate support tau-tilting modules and two-term silting complexes exactly."""

__version__ = "0.1.0"
