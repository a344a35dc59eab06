"""Tests for core infrastructure modules."""
