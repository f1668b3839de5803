"""Package version, kept importable without triggering the full package."""

__version__ = "0.1.0"
