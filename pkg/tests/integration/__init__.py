"""Integration tests for d4mod."""
