"""dp2: exact-arithmetic toolkit for degree-2 del Pezzo surfaces."""

__version__ = "0.1.0"
