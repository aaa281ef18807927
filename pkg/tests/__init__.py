"""Test suite for theoria."""
