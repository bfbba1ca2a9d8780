"""Test package for latentem."""
