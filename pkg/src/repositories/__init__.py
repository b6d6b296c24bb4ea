"""Repositories module initialization"""
from .example_repository import ExampleEntry, ExampleRepository, entry, registry

__all__ = [
    "ExampleEntry",
    "ExampleRepository",
    "entry",
    "registry",
]
