"""Atomic tests for utility functions."""

from datetime import timezone

import pytest

from src.utils.helpers import get_timestamp, hash_content, parse_param_overrides


class TestHashContent:
    """Test content hashing functionality."""

    def test_hash_content_returns_consistent_hash(self):
        """Hash should be consistent for same input."""
        assert hash_content("segments") == hash_content("segments")

    def test_hash_content_different_for_different_input(self):
        """Different content should produce different hashes."""
        assert hash_content("1/3") != hash_content("1/4")

    def test_hash_content_is_64_chars(self):
        """SHA-256 hash should be 64 hexadecimal characters."""
        result = hash_content("test")
        assert len(result) == 64
        assert all(c in "0123456789abcdef" for c in result)

    def test_unicode_content(self):
        assert len(hash_content("a ∈ (1,√2)")) == 64


class TestGetTimestamp:
    """Test timestamp helper."""

    def test_timestamp_is_utc(self):
        assert get_timestamp().tzinfo == timezone.utc


class TestParseParamOverrides:
    """Test name=value parsing for gallery overrides."""

    def test_parses_pairs(self):
        overrides = parse_param_overrides(["a=1+1*sqrt(2)", "b = 1/3"])
        assert overrides == {"a": "1+1*sqrt(2)", "b": "1/3"}

    def test_value_may_contain_equals(self):
        assert parse_param_overrides(["x=a=b"]) == {"x": "a=b"}

    def test_last_value_wins(self):
        assert parse_param_overrides(["b=1/3", "b=1/4"]) == {"b": "1/4"}

    def test_empty_input(self):
        assert parse_param_overrides([]) == {}

    @pytest.mark.parametrize("item", ["b", "=1/3", "b=", " = "])
    def test_malformed(self, item):
        with pytest.raises(ValueError, match="name=value"):
            parse_param_overrides([item])
