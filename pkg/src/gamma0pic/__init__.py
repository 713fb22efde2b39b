"""Exact finite-field verification of the Picard group computations for the
moduli stacks of elliptic curves with a cyclic subgroup of order 2 or 3."""

__version__ = "0.1.0"
