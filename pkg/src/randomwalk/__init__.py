"""Step distributions, random walks, experiments and the principal seed."""
