"""Tests for hkasym."""
