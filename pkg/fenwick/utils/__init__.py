"""Shared utilities: configuration, logging and the seeded generator."""
