"""Turns, Whitehead graphs, Nielsen paths, index and classification."""
