"""QRAC Toolkit - analytical (n, n-1) quantum random access codes."""

__version__ = "0.1.0"
