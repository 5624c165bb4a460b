"""Exact matrix-valued spherical functions for (SU(n+m), S(U(n)xU(m)))."""

__version__ = "1.0.0"
