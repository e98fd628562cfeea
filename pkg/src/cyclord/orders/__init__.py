"""Finite orders, oracles, COP maps and lexicographic constructions."""

from cyclord.orders import cop, core, lex, oracle

__all__ = ["cop", "core", "lex", "oracle"]
