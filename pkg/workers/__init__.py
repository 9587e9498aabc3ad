"""Workers package."""

__all__ = []

