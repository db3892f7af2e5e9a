"""Exact analysis of the Maker-Breaker resolving game on graphs and lexicographic products."""
