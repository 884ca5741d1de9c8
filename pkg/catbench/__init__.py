# catbench/__init__.py

"""Exact computation over finite categories."""

__version__ = "1.0.0"
