"""Exact computation with quantum Borcherds-Bozec superalgebras at bounded depth."""

__version__ = "0.1.0"
