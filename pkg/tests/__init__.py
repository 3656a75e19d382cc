"""Tests for Bell-FdB Lab."""
