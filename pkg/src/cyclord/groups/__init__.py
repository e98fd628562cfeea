"""Finite and finitely generated groups, their actions and invariant orders."""

from cyclord.groups import action, group, orderability

__all__ = ["action", "group", "orderability"]
