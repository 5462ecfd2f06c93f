"""Test suite for oortlift."""
