"""Dispatchers for routing batch commands."""

from gmtlab.cli.dispatchers.commands import HANDLERS, CommandDispatcher

__all__ = ["HANDLERS", "CommandDispatcher"]
