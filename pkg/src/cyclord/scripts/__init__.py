"""Command line front end and the self-test battery."""

from cyclord.scripts import cli, selftest

__all__ = ["cli", "selftest"]
