"""Spatio-temporal knowledge graph construction from OpenStreetMap snapshots."""

__version__ = "0.1.0"
