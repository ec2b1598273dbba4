"""hopf-forge: exact construction and verification of algebraic quantum groups."""

__version__ = "0.1.0"
