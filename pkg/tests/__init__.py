"""Unit test package for univshift."""
