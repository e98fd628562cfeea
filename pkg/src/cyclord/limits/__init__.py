"""Cycle covers, their quotients and finite towers approximating inverse limits."""

from cyclord.limits import cover, tower

__all__ = ["cover", "tower"]
