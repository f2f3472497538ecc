"""Numerical experiments built on the Frobenius data."""
