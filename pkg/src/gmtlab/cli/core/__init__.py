"""Run context for the handlers."""

from gmtlab.cli.core.context import Context

__all__ = ["Context"]
