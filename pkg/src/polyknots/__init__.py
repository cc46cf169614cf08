"""Polynomial knots: embeddings, diagrams, invariants and height constructions."""

__version__ = "0.1.0"
