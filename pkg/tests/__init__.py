"""Test package for the metasurface CZ simulator."""
