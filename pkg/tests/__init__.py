"""Test suite for the relation entropy toolkit."""
