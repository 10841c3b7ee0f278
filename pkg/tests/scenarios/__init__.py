"""Tests for the gate scenario components."""
