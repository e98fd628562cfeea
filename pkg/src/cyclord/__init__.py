"""Init file for the main package."""

from importlib_metadata import version

from cyclord import config, ellis, groups, limits, orders, scripts, utils

__all__ = ["config", "ellis", "groups", "limits", "orders", "scripts", "utils"]

__version__ = version(__package__)
