"""Configuration package initialization"""
from .logging import configure_logging
from .settings import Settings, settings

__all__ = ["settings", "Settings", "configure_logging"]
