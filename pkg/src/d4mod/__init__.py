"""
pyD4Mod: Exact integer arithmetic behind D4 modular forms.

The library computes with Coxeter's integral octonions, shells of the E8
lattice, Bhargava cubes and their class groups, the exceptional Jordan
algebra over the integers, the Fourier coefficients of two exceptional theta
lifts, and Weyl group invariants of E8. Everything is exact: integers in the
counting loops and rationals where polynomials are evaluated.
"""

from __future__ import annotations

__version__ = "0.1.0"
__author__ = "Tanny Lund Deutsch-Lauritsen"
__email__ = "pyd4mod@de-la.dk"
