"""Exact-arithmetic toolkit for generalized Kac-Moody Lie algebras
presented by Borcherds-Cartan matrices, and for degenerate Ringel-Hall
algebras of quivers over small finite fields."""

__version__ = "0.1.0"
