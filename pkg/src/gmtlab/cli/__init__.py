"""Batch command-line driver."""

__all__ = []
