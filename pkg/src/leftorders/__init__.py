"""Finite semigroups, left orders and *-pairs."""

__version__ = "0.1.0"
