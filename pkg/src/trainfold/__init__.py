"""Elementary moves, fold decompositions and train track search."""
