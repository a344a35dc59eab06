"""Shared numerical layer and cross-feature code."""
