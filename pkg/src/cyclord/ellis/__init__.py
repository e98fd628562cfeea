"""Enveloping semigroups: finite, the translation cascade and the Sturmian double circle."""

from cyclord.ellis import cascade, finite, quadirr, sturmian

__all__ = ["cascade", "finite", "quadirr", "sturmian"]
