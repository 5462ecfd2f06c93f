"""Utility functions and shared infrastructure module."""
