"""Utility modules for benchmarking and reporting."""
