"""Exact and BigFloat mathematics of the square, quotient and plane maps."""
