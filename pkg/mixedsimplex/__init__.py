"""Mixed random variables on the probability simplex and mixed finite-state automata."""

__version__ = "1.0.0"
