"""Gradient pairings of Weyl group invariants and their exterior-algebra counterparts."""

from .invariants import generators_for
from .pairing import c_table, d_table, mod_squares_project
from .rootsys import build_root_system

__all__ = ["build_root_system", "generators_for", "d_table", "c_table", "mod_squares_project"]
__version__ = "0.1.0"
