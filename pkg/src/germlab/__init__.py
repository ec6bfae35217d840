"""Exact computation of bi-Lipschitz invariants of isolated hypersurface singularities."""

__version__ = "0.1.0"
