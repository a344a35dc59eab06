"""Spectral distance application package."""
