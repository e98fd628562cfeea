"""Utility functions and classes used across the package."""

from cyclord.utils import errors, io, labels, log, report

__all__ = ["errors", "io", "labels", "log", "report"]
