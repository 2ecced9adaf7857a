"""Certification of simulations."""
