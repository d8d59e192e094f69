"""Marked graphs, maps between them and transition matrices."""
