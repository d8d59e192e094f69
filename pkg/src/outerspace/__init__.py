"""Outer space points, Lipschitz distance, projections and fold paths."""
