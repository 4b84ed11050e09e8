"""Generation and verification engine for 6-fold two-diamond tilings."""

__version__ = "0.1.0"
