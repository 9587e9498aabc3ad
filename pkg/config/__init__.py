"""Configuration package."""

from .settings import Tolerances, settings

__all__ = ["settings", "Tolerances"]
